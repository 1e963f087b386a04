#pragma once

#include <string>
#include <vector>

#include "slowfast/models.hpp"

namespace slowfast {

struct SequenceConfig {
    double h0 = 0.001;
    int max_iterations = 100;
    double root_tol = 1e-12;  ///< relative tolerance on each gap y_k - y_{k+1}
    double min_height = 1e-14;

    /// Throws InvalidArgument / NonAdmissibleHeight when the config cannot be
    /// used with `model`.
    void validate(const SlowFastModel& model) const;
};

/// One solved pair of the entry-exit relation.
struct Step {
    double height;    ///< y_{k+1} rounded to double
    double gap;       ///< y_k - y_{k+1}, resolved independently of y_k
    double residual;  ///< |I| at the solved pair
};

/// Decreasing section heights y_0 > y_1 > ... produced by the entry-exit
/// relation. gaps[k] = y_k - y_{k+1} is the solved quantity and is always
/// strictly positive; heights[k+1] is heights[k] - gaps[k] rounded, so for
/// very thin contact points consecutive stored heights may coincide even
/// though the underlying sequence decreases strictly.
struct FractalSequence {
    std::vector<double> heights;
    std::vector<double> gaps;
    std::vector<double> residuals;
    Orientation orientation = Orientation::EntrySolved;
    double scale = 0.0;  ///< |I(y0, y0)|
    bool truncated_early = false;
    std::string stop_reason;

    std::size_t size() const noexcept { return heights.size(); }
};

/// Solves for the gap to the next height below `h_prev`. `symmetric` is
/// I(h_prev, h_prev). The relation is solved in the gap variable, bracketed
/// around the first-order guess I / rho(h_prev) and refined by Brent.
Step solve_step(const SlowFastModel& model, double h_prev, Orientation orientation,
                double root_tol, double symmetric);
Step solve_step(const SlowFastModel& model, double h_prev, Orientation orientation,
                double root_tol);

double next_height(const SlowFastModel& model, double h_prev, Orientation orientation,
                   double root_tol = 1e-12);

/// Iterates solve_step from cfg.h0. Failures during the first 10 steps are
/// rethrown; later ones truncate the sequence and are reported in
/// stop_reason.
FractalSequence generate_sequence(const SlowFastModel& model, const SequenceConfig& cfg);

}  // namespace slowfast
