#include "slowfast/models.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

#include "slowfast/error.hpp"
#include "slowfast/numeric.hpp"

namespace slowfast {

namespace {

// Integrands below are sign-definite and may be as small as 1e-30 (thin
// contact points), so only a relative tolerance makes sense.
constexpr numeric::QuadratureOptions kQuad{0.0, 1e-13, 60};

// Below this relative drop a branch integral is taken directly in the height
// variable; above it, in the x variable where the integrand is smooth down to
// the contact point.
constexpr double kSmallDrop = 1e-3;

// The normal form's height density is a plain power law, cheap to evaluate,
// and x = u^(1/n) squeezes [upper - drop, upper] into a sliver that loses
// ~1e-13 relative accuracy for large n; so stay in u until the drop gets
// close to the contact point.
constexpr double kNormalFormDrop = 0.5;

double ipow(double x, int k) {
    double r = 1.0;
    double b = x;
    unsigned e = static_cast<unsigned>(k);
    while (e != 0) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

void check_drop(double upper, double drop) {
    if (!(drop >= 0.0) || !(drop <= upper)) {
        std::ostringstream os;
        os << "drop " << drop << " outside [0, " << upper << "]";
        throw Error(ErrorKind::NonAdmissibleHeight, os.str());
    }
}

// integral of rho(u) over [upper - drop, upper], parametrised by the drop so a
// drop below the resolution of `upper` still integrates to drop * rho(upper)
template <class Density>
double integrate_drop(const Density& rho, double upper, double drop) {
    return numeric::adaptive_gauss_kronrod([&](double s) { return rho(upper - s); }, 0.0, drop, kQuad);
}

}  // namespace

std::string_view to_string(Orientation o) noexcept {
    return o == Orientation::EntrySolved ? "EntrySolved" : "ExitSolved";
}

std::string_view to_string(SlowFlow f) noexcept {
    return f == SlowFlow::RepellingToAttracting ? "RepellingToAttracting"
                                                : "AttractingToRepelling";
}

bool SlowFastModel::admissible(double h) const {
    if (!(h > 0.0) || !std::isfinite(h)) return false;
    return max_height_is_open() ? h < max_height() : h <= max_height();
}

void SlowFastModel::require_admissible(double h) const {
    if (admissible(h)) return;
    std::ostringstream os;
    os << "height " << h << " outside (0, " << max_height() << (max_height_is_open() ? ")" : "]")
       << " for " << describe();
    throw Error(ErrorKind::NonAdmissibleHeight, os.str());
}

double sdi(const SlowFastModel& model, double h_entry, double h_exit) {
    if (h_entry == h_exit) return model.symmetric_sdi(h_exit);
    if (h_entry < h_exit) {
        model.require_admissible(h_entry);
        return model.symmetric_sdi(h_exit) -
               model.branch_sdi(Branch::Repelling, h_exit, h_exit - h_entry);
    }
    model.require_admissible(h_exit);
    return model.symmetric_sdi(h_entry) -
           model.branch_sdi(Branch::Attracting, h_entry, h_entry - h_exit);
}

double pair_residual(const SlowFastModel& model, Orientation orientation, double upper,
                     double gap, double symmetric) {
    const Branch b =
        orientation == Orientation::EntrySolved ? Branch::Repelling : Branch::Attracting;
    return symmetric - model.branch_sdi(b, upper, gap);
}

double pair_residual(const SlowFastModel& model, Orientation orientation, double upper,
                     double gap) {
    return pair_residual(model, orientation, upper, gap, model.symmetric_sdi(upper));
}

Orientation orientation(const SlowFastModel& model, double h_probe) {
    const double I = model.symmetric_sdi(h_probe);
    if (!std::isfinite(I) || std::abs(I) <= DBL_MIN) {
        std::ostringstream os;
        os << "slow divergence integral vanishes at h = " << h_probe << " (I = " << I
           << ") for " << model.describe();
        throw Error(ErrorKind::DegenerateModel, os.str());
    }
    const bool toward_attracting = model.slow_flow() == SlowFlow::RepellingToAttracting;
    return (I > 0.0) == toward_attracting ? Orientation::EntrySolved : Orientation::ExitSolved;
}

// --- normal form ------------------------------------------------------------

NormalFormModel::NormalFormModel(int n, int m, int j, double alpha, double beta)
    : n_(n), m_(m), j_(j), alpha_(alpha), beta_(beta) {
    std::ostringstream os;
    if (n < 2 || n % 2 != 0) os << "contact order n = " << n << " must be even and >= 2";
    else if (m < 1 || m % 2 != 1) os << "singularity order m = " << m << " must be odd and >= 1";
    else if (m > 2 * (n - 1)) os << "m = " << m << " exceeds 2(n-1) = " << 2 * (n - 1);
    else if (j < 0) os << "j = " << j << " must be >= 0";
    else if (alpha == 0.0 || !std::isfinite(alpha)) os << "alpha must be finite and nonzero";
    else if (beta != 1.0 && beta != -1.0) os << "beta = " << beta << " must be +1 or -1";
    if (!os.str().empty()) throw Error(ErrorKind::InvalidArgument, os.str());

    // keep |alpha| x^(2j+1) <= 1/2 on the section so g has no zero besides 0
    const double q = 2.0 * j + 1.0;
    max_height_ = std::min(0.5, std::pow(0.5 / std::abs(alpha), n / q));
}

std::string NormalFormModel::describe() const {
    std::ostringstream os;
    os << "normalform(n=" << n_ << ", m=" << m_ << ", j=" << j_ << ", alpha=" << alpha_
       << ", beta=" << beta_ << ")";
    return os.str();
}

double NormalFormModel::omega_limit(double h) const {
    require_admissible(h);
    return std::pow(h, 1.0 / n_);
}

double NormalFormModel::alpha_limit(double h) const {
    require_admissible(h);
    return -std::pow(h, 1.0 / n_);
}

SlowFlow NormalFormModel::slow_flow() const {
    return beta_ > 0.0 ? SlowFlow::RepellingToAttracting : SlowFlow::AttractingToRepelling;
}

double NormalFormModel::critical_height(double x) const { return ipow(x, n_); }

double NormalFormModel::divergence_density(double x) const {
    const double g = beta_ * ipow(x, m_) + alpha_ * ipow(x, m_ + 2 * j_ + 1);
    return n_ * n_ * ipow(x, 2 * n_ - 2) / g;
}

double NormalFormModel::symmetric_sdi(double h) const {
    require_admissible(h);
    const int p = 2 * n_ - 2 - m_;
    const int q = 2 * j_ + 1;
    const double c = 2.0 * alpha_ * n_ * n_;
    // odd parts of the integrand over [-a, a] combined into one term
    const auto f = [&](double x) {
        const double xq = ipow(x, q);
        return c * ipow(x, p) * xq / (1.0 - alpha_ * alpha_ * xq * xq);
    };
    return numeric::adaptive_gauss_kronrod(f, 0.0, std::pow(h, 1.0 / n_), kQuad);
}

double NormalFormModel::branch_sdi(Branch branch, double upper, double drop) const {
    require_admissible(upper);
    check_drop(upper, drop);
    if (drop == 0.0) return 0.0;
    const int p = 2 * n_ - 2 - m_;
    const int q = 2 * j_ + 1;
    // attracting side: -n^2 x^p / (beta + alpha x^q) on x > 0;
    // repelling side mirrored to x > 0: n^2 x^p / (beta - alpha x^q)
    const double s = branch == Branch::Attracting ? -1.0 : 1.0;
    const double sa = branch == Branch::Attracting ? alpha_ : -alpha_;

    if (drop <= kNormalFormDrop * upper) {
        const double e = static_cast<double>(n_ - 1 - m_) / n_;
        const double qn = static_cast<double>(q) / n_;
        const auto rho = [&](double u) {
            return s * n_ * std::pow(u, e) / (beta_ + sa * std::pow(u, qn));
        };
        return integrate_drop(rho, upper, drop);
    }
    const auto f = [&](double x) { return s * n_ * n_ * ipow(x, p) / (beta_ + sa * ipow(x, q)); };
    const double lo = std::pow(upper - drop, 1.0 / n_);
    const double hi = std::pow(upper, 1.0 / n_);
    return numeric::adaptive_gauss_kronrod(f, lo, hi, kQuad);
}

// --- classical Lienard --------------------------------------------------------

ClassicalLienardModel::ClassicalLienardModel(int j, double a_coeff)
    : ClassicalLienardModel(j, a_coeff, Unchecked{}) {
    if (a_coeff == 0.0) {
        throw Error(ErrorKind::DegenerateModel,
                    "a_coeff = 0 makes F even, so the slow divergence integral vanishes");
    }
}

ClassicalLienardModel::ClassicalLienardModel(int j, double a_coeff, Unchecked)
    : j_(j), a_(a_coeff) {
    if (j < 0) throw Error(ErrorKind::InvalidArgument, "j must be >= 0");
    if (!std::isfinite(a_coeff)) throw Error(ErrorKind::InvalidArgument, "a_coeff not finite");
    if (a_coeff == 0.0) {
        fold_x_ = std::numeric_limits<double>::infinity();
        max_height_ = 0.25;
        return;
    }
    const int k = 2 * j + 1;
    const double mag = std::pow(2.0 / ((2 * j + 3) * std::abs(a_coeff)), 1.0 / k);
    fold_x_ = a_coeff > 0.0 ? -mag : mag;
    max_height_ = F(fold_x_);
}

ClassicalLienardModel ClassicalLienardModel::unchecked_for_testing(int j, double a_coeff) {
    return ClassicalLienardModel(j, a_coeff, Unchecked{});
}

double ClassicalLienardModel::F(double x) const { return x * x + a_ * ipow(x, 2 * j_ + 3); }

double ClassicalLienardModel::dF(double x) const {
    return 2.0 * x + (2 * j_ + 3) * a_ * ipow(x, 2 * j_ + 2);
}

std::string ClassicalLienardModel::describe() const {
    std::ostringstream os;
    os << "lienard(j=" << j_ << ", a=" << a_ << ")";
    return os.str();
}

double ClassicalLienardModel::antiderivative(double x) const {
    // primitive of F'(x)^2 / x
    const double c = (2 * j_ + 3) * a_;
    return 2.0 * x * x + 4.0 * a_ * ipow(x, 2 * j_ + 3) +
           c * c / (4.0 * j_ + 4.0) * ipow(x, 4 * j_ + 4);
}

double ClassicalLienardModel::solve_branch(double h, bool positive_side) const {
    if (h == 0.0) return 0.0;
    const double sign = positive_side ? 1.0 : -1.0;
    const bool fold_side = (fold_x_ > 0.0) == positive_side;
    const double cap = fold_side ? std::abs(fold_x_) : std::numeric_limits<double>::infinity();
    const auto G = [&](double r) { return F(sign * r) - h; };

    double lo = 0.0;
    double hi = std::min(0.5 * std::sqrt(h), cap);
    double ghi = G(hi);
    for (int i = 0; ghi < 0.0; ++i) {
        if (hi >= cap || i > 200) {
            std::ostringstream os;
            os << "no root of F(x) = " << h << " before the fold for " << describe();
            throw Error(ErrorKind::NoConvergence, os.str());
        }
        lo = hi;
        hi = std::min(2.0 * hi, cap);
        ghi = G(hi);
    }
    return sign * numeric::brent(G, lo, hi, G(lo), ghi);
}

double ClassicalLienardModel::omega_limit(double h) const {
    require_admissible(h);
    return solve_branch(h, true);
}

double ClassicalLienardModel::alpha_limit(double h) const {
    require_admissible(h);
    return solve_branch(h, false);
}

double ClassicalLienardModel::symmetric_sdi(double h) const {
    require_admissible(h);
    if (a_ == 0.0) return 0.0;
    // I(h) = int_0^h c (omega(u)^(2j+1) + |alpha(u)|^(2j+1)) du with c = (2j+3) a;
    // substituting u = F(x) along the attracting branch leaves one root
    // solve per node and a smooth integrand.
    const int k = 2 * j_ + 1;
    const double c = (2 * j_ + 3) * a_;
    const auto f = [&](double x) {
        if (x == 0.0) return 0.0;
        const double u = F(x);
        const double r = -solve_branch(u, false);
        return c * (ipow(x, k) + ipow(r, k)) * dF(x);
    };
    return numeric::adaptive_gauss_kronrod(f, 0.0, solve_branch(h, true), kQuad);
}

double ClassicalLienardModel::branch_sdi(Branch branch, double upper, double drop) const {
    require_admissible(upper);
    check_drop(upper, drop);
    if (drop == 0.0) return 0.0;
    const bool attracting = branch == Branch::Attracting;
    const int k = 2 * j_ + 1;
    const double c = (2 * j_ + 3) * a_;
    if (drop <= kSmallDrop * upper) {
        const auto rho = [&](double u) {
            const double x = solve_branch(u, attracting);
            return attracting ? 2.0 + c * ipow(x, k) : -2.0 - c * ipow(x, k);
        };
        return integrate_drop(rho, upper, drop);
    }
    const double xu = solve_branch(upper, attracting);
    const double xl = solve_branch(upper - drop, attracting);
    const double diff = antiderivative(xu) - antiderivative(xl);
    return attracting ? diff : -diff;
}

// --- two-stroke oscillator ------------------------------------------------------

TwoStrokeModel::TwoStrokeModel(double alpha, double delta, double gamma)
    : alpha_(alpha), delta_(delta), gamma_(gamma) {
    if (!(alpha > 0.0) || !(delta > 0.0) || !(gamma > 0.0) || !std::isfinite(alpha) ||
        !std::isfinite(delta) || !std::isfinite(gamma)) {
        throw Error(ErrorKind::InvalidArgument, "alpha, delta and gamma must be positive");
    }
    max_height_ = 0.2 * delta;
    if (alpha >= 2.0) {
        // The reduced system x' = y, y' = -x + alpha y is a node here, and the
        // line y = l x with l = (alpha - sqrt(alpha^2 - 4)) / 2 is invariant.
        // Orbits starting on or above it escape along the fast direction and
        // never come back down to y = delta; (alpha delta, delta + h) lies
        // below it iff h < delta (alpha l - 1) = delta l^2.
        const double l = 2.0 / (alpha + std::sqrt(alpha * alpha - 4.0));
        const double escape = delta * l * l;
        if (escape <= max_height_) {
            max_height_ = escape;
            max_height_open_ = true;
        }
    }
}

std::string TwoStrokeModel::describe() const {
    std::ostringstream os;
    os << "twostroke(alpha=" << alpha_ << ", delta=" << delta_ << ", gamma=" << gamma_ << ")";
    return os.str();
}

namespace {

struct Offset {
    double X, Y;
};

// Exact flow of X' = delta + Y, Y' = -X + alpha Y over time t, summed as a
// Taylor series; callers keep |t| * max(1, alpha) below 1/4.
Offset propagate(const Offset& z, double t, double alpha, double delta) {
    double dX = delta + z.Y;
    double dY = -z.X + alpha * z.Y;
    double X = z.X, Y = z.Y;
    double coef = 1.0;
    for (int k = 1; k <= 60; ++k) {
        coef *= t / k;
        const double tX = coef * dX, tY = coef * dY;
        X += tX;
        Y += tY;
        if (k >= 4 && std::abs(tX) <= 1e-18 * std::abs(X) && std::abs(tY) <= 1e-18 * std::abs(Y))
            break;
        const double nX = dY;
        const double nY = -dX + alpha * dY;
        dX = nX;
        dY = nY;
    }
    return {X, Y};
}

}  // namespace

double TwoStrokeModel::crossing_offset(double h, bool forward) const {
    if (h == 0.0) return 0.0;
    // near the contact point Y ~ h - delta t^2 / 2, so the crossing is close
    // to t = sqrt(2h/delta); march in quarters of that
    const double step = std::min(0.25 * std::sqrt(2.0 * h / delta_), 0.25 / std::max(1.0, alpha_));
    const double dt = forward ? step : -step;
    Offset z{0.0, h};
    for (int i = 0; i < 100000; ++i) {
        const Offset next = propagate(z, dt, alpha_, delta_);
        if (next.Y <= 0.0) {
            if (next.Y == 0.0) return next.X;
            const auto Y = [&](double t) { return propagate(z, t, alpha_, delta_).Y; };
            const double t = numeric::brent(Y, 0.0, dt, z.Y, next.Y);
            return propagate(z, t, alpha_, delta_).X;
        }
        z = next;
    }
    std::ostringstream os;
    os << "reduced orbit through height " << h << " never returns to the critical line for "
       << describe();
    throw Error(ErrorKind::NoConvergence, os.str());
}

double TwoStrokeModel::omega_limit(double h) const {
    require_admissible(h);
    return alpha_ * delta_ + crossing_offset(h, false);
}

double TwoStrokeModel::alpha_limit(double h) const {
    require_admissible(h);
    return alpha_ * delta_ + crossing_offset(h, true);
}

double TwoStrokeModel::symmetric_sdi(double h) const {
    require_admissible(h);
    const double w = crossing_offset(h, false);
    const double a = crossing_offset(h, true);
    return (w - a) * (w + a) / (2.0 * gamma_ * delta_);
}

double TwoStrokeModel::branch_sdi(Branch branch, double upper, double drop) const {
    require_admissible(upper);
    check_drop(upper, drop);
    if (drop == 0.0) return 0.0;
    const bool forward = branch == Branch::Repelling;
    const double xu = crossing_offset(upper, forward);
    const double xl = crossing_offset(upper - drop, forward);
    const double diff = (xu - xl) * (xu + xl) / (2.0 * gamma_ * delta_);
    return forward ? -diff : diff;
}

}  // namespace slowfast
