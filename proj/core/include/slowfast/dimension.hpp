#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "slowfast/entryexit.hpp"
#include "slowfast/models.hpp"

namespace slowfast {

enum class Method { Cahen, Borel, TailNucleus, BoxCount };

std::string_view to_string(Method m) noexcept;

struct KValue {
    int k;
    double value;
};

/// For the three sequence formulas per_k holds the formula evaluated at index
/// k (heights indexed from y_0 = h0). For BoxCount, k is the dyadic exponent i
/// of the scale 2^-i and value is the number of occupied boxes.
struct DimensionEstimate {
    Method method = Method::Cahen;
    std::vector<KValue> per_k;
    double final_value = 0.0;  ///< clamped to [0, ambient dimension]
    int k_first = 0;           ///< window used for final_value
    int k_last = 0;
};

/// Builds a sequence with gaps taken as consecutive differences; useful for
/// analytic test sequences. No monotonicity check: the estimators report
/// DegenerateGap on a non-positive gap.
FractalSequence sequence_from_heights(std::vector<double> heights);

/// ln k / (-ln d_k) where d_k = y_{k-1} - y_k is the k-th gap, k >= 2.
DimensionEstimate cahen_estimate(const FractalSequence& seq);
/// 1 / (1 - ln y_k / ln k), k >= 2.
DimensionEstimate borel_estimate(const FractalSequence& seq);
/// 1 - ln(k (y_k - y_{k+1}) + y_k) / ln((y_k - y_{k+1}) / 2), k >= 1.
DimensionEstimate tail_nucleus_estimate(const FractalSequence& seq);

struct FormulaEstimates {
    DimensionEstimate cahen, borel, tail_nucleus;

    /// TailNucleus once its value exceeds 1/2, Cahen otherwise.
    const DimensionEstimate& auto_selected() const;
    /// The estimate whose final value is closest to `target`.
    const DimensionEstimate& closest_to(double target) const;
    /// Largest pairwise difference between the three final values.
    double spread() const;
};

FormulaEstimates all_estimates(const FractalSequence& seq);

// --- box counting -------------------------------------------------------------

struct Segment {
    double x0, x1;  ///< x0 <= x1
    double y;
};

struct BoxCountOptions {
    double fit_fraction = 0.6;  ///< middle share of the scales used in the slope fit
    std::size_t min_items = 100;
    double min_decades = 3.0;
};

/// Dyadic exponents i with 2^-i between `coarse` and `fine` (inclusive).
std::vector<int> dyadic_exponents(double coarse, double fine);

DimensionEstimate box_count_dimension(const std::vector<double>& points,
                                      const std::vector<int>& exponents,
                                      const BoxCountOptions& opts = {});
/// Scales from the extent of the set down to the smallest spacing of
/// distinct points.
DimensionEstimate box_count_dimension(const std::vector<double>& points,
                                      const BoxCountOptions& opts = {});

DimensionEstimate box_count_dimension(const std::vector<Segment>& segments,
                                      const std::vector<int>& exponents,
                                      const BoxCountOptions& opts = {});
/// Scales from the extent of the set down to the smallest spacing of
/// distinct heights.
DimensionEstimate box_count_dimension(const std::vector<Segment>& segments,
                                      const BoxCountOptions& opts = {});

/// Occupied boxes of side 2^-i on the grid anchored at 0.
std::size_t count_boxes(const std::vector<double>& points, int exponent);
std::size_t count_boxes(const std::vector<Segment>& segments, int exponent);

/// One segment per height, from alpha_limit to omega_limit.
std::vector<Segment> chirp_segments(const SlowFastModel& model, const FractalSequence& seq);

// --- theory and codimension --------------------------------------------------------

/// (2j+1)/(n+2j+1); j = nullopt stands for infinite codimension and gives 1.
double theoretical_dimension(int n, std::optional<int> j);
/// (n+4j+1)/(n+2j+1).
double chirp_theoretical_dimension(int n, int j);

/// 0.04 for n = 2, halved with every doubling of n.
double default_snap_threshold(int n);

struct CodimensionReport {
    int contact_order_n = 2;
    double estimated_dimension = 0.0;
    bool resolved = false;
    bool infinite = false;
    int recovered_j = -1;    ///< valid when resolved and finite
    int codimension = -1;    ///< recovered_j + 1
    double snapped_dimension = 0.0;
    double snap_distance = 0.0;
    double lower_candidate = 0.0;  ///< nearest admissible values around the estimate
    double upper_candidate = 0.0;
};

CodimensionReport codimension_from_dimension(int n, double D, double snap_threshold);
CodimensionReport codimension_from_dimension(int n, double D);

}  // namespace slowfast
