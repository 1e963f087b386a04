#include "slowfast/entryexit.hpp"

#include <cmath>
#include <sstream>

#include "slowfast/error.hpp"
#include "slowfast/numeric.hpp"

namespace slowfast {

namespace {

constexpr int kHardFailureSteps = 10;
constexpr int kBracketTries = 80;

}  // namespace

void SequenceConfig::validate(const SlowFastModel& model) const {
    std::ostringstream os;
    if (max_iterations < 1) os << "max_iterations must be >= 1, got " << max_iterations;
    else if (!(root_tol > 0.0) || !(root_tol < 1.0)) os << "root_tol must lie in (0, 1)";
    else if (!(min_height > 0.0) || !(min_height < h0))
        os << "min_height must lie in (0, h0), got " << min_height;
    if (!os.str().empty()) throw Error(ErrorKind::InvalidArgument, os.str());
    if (!model.admissible(h0)) {
        std::ostringstream msg;
        msg << "starting height " << h0 << " is not admissible for " << model.describe()
            << " (max " << model.max_height() << ")";
        throw Error(ErrorKind::NonAdmissibleHeight, msg.str());
    }
}

Step solve_step(const SlowFastModel& model, double h_prev, Orientation orientation,
                double root_tol, double symmetric) {
    if (!std::isfinite(symmetric) || symmetric == 0.0) {
        std::ostringstream os;
        os << "I(" << h_prev << ", " << h_prev << ") = " << symmetric;
        throw Error(ErrorKind::DegenerateModel, os.str());
    }
    const bool positive = symmetric > 0.0;

    double best_d = 0.0, best_r = symmetric;
    const auto R = [&](double d) {
        const double r = pair_residual(model, orientation, h_prev, d, symmetric);
        if (std::abs(r) < std::abs(best_r) || best_d == 0.0) {
            best_d = d;
            best_r = r;
        }
        return r;
    };
    const auto below_root = [&](double r) { return (r > 0.0) == positive && r != 0.0; };

    // first-order guess from the branch density at h_prev
    const double probe = 1e-6 * h_prev;
    const Branch b =
        orientation == Orientation::EntrySolved ? Branch::Repelling : Branch::Attracting;
    const double rho = model.branch_sdi(b, h_prev, probe) / probe;
    double guess = symmetric / rho;
    if (!(guess > 0.0) || !(guess < h_prev)) guess = 0.5 * h_prev;

    double lo = guess, hi = guess;
    double rlo = R(lo);
    double rhi = rlo;
    if (below_root(rlo)) {
        for (int i = 0; below_root(rhi); ++i) {
            if (hi == h_prev || i >= kBracketTries) {
                std::ostringstream os;
                os << "no sign change of the entry-exit residual below height " << h_prev
                   << " for " << model.describe();
                throw Error(ErrorKind::BracketFailure, os.str());
            }
            lo = hi;
            rlo = rhi;
            hi = std::min(4.0 * hi, h_prev);
            rhi = R(hi);
        }
    } else {
        for (int i = 0; !below_root(rlo) && rlo != 0.0; ++i) {
            if (i >= kBracketTries) {
                std::ostringstream os;
                os << "residual keeps its sign down to gap " << lo << " below height " << h_prev
                   << " for " << model.describe();
                throw Error(ErrorKind::BracketFailure, os.str());
            }
            hi = lo;
            rhi = rlo;
            lo *= 0.25;
            rlo = R(lo);
        }
    }

    numeric::RootOptions opts;
    opts.rel_tol = root_tol;
    const double d = (rlo == 0.0) ? lo : numeric::brent(R, lo, hi, rlo, rhi, opts);
    const double r = (d == best_d) ? best_r : R(d);
    if (!(d > 0.0)) {
        std::ostringstream os;
        os << "gap below height " << h_prev << " collapsed to " << d;
        throw Error(ErrorKind::DegenerateGap, os.str());
    }
    return {h_prev - d, d, std::abs(r)};
}

Step solve_step(const SlowFastModel& model, double h_prev, Orientation orientation,
                double root_tol) {
    return solve_step(model, h_prev, orientation, root_tol, model.symmetric_sdi(h_prev));
}

double next_height(const SlowFastModel& model, double h_prev, Orientation orientation,
                   double root_tol) {
    return solve_step(model, h_prev, orientation, root_tol).height;
}

FractalSequence generate_sequence(const SlowFastModel& model, const SequenceConfig& cfg) {
    cfg.validate(model);
    FractalSequence seq;
    seq.orientation = orientation(model, cfg.h0);
    seq.scale = std::abs(model.symmetric_sdi(cfg.h0));
    seq.heights.reserve(static_cast<std::size_t>(cfg.max_iterations) + 1);
    seq.heights.push_back(cfg.h0);

    for (int k = 0; k < cfg.max_iterations; ++k) {
        const double h = seq.heights.back();
        if (h < cfg.min_height) {
            seq.truncated_early = true;
            std::ostringstream os;
            os << "height " << h << " fell below min_height after " << k << " steps";
            seq.stop_reason = os.str();
            break;
        }
        try {
            const Step s = solve_step(model, h, seq.orientation, cfg.root_tol);
            if (!(s.height > 0.0)) {
                throw Error(ErrorKind::DegenerateGap, "next height is not positive");
            }
            seq.heights.push_back(s.height);
            seq.gaps.push_back(s.gap);
            seq.residuals.push_back(s.residual);
        } catch (const Error& e) {
            if (k < kHardFailureSteps) throw;
            seq.truncated_early = true;
            std::ostringstream os;
            os << "step " << k << " failed: " << e.what();
            seq.stop_reason = os.str();
            break;
        }
    }
    return seq;
}

}  // namespace slowfast
