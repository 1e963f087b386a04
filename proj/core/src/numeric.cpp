#include "slowfast/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "slowfast/error.hpp"

namespace slowfast {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NonAdmissibleHeight: return "NonAdmissibleHeight";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::DegenerateModel: return "DegenerateModel";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::DegenerateGap: return "DegenerateGap";
    case ErrorKind::InsufficientScales: return "InsufficientScales";
    case ErrorKind::CompositionConstantTerm: return "CompositionConstantTerm";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace numeric {

namespace {

constexpr int kCoarsePanels = 16;

struct Panel {
    double a, b;
    double fa, fm, fb;
    double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double checked(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "integrand is not finite at x = " << x;
        throw Error(ErrorKind::QuadratureFailure, os.str());
    }
    return y;
}

double refine(const std::function<double(double)>& f, const Panel& p, double eps, int depth,
              int max_depth) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = checked(f, lm);
    const double frm = checked(f, rm);
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    if (std::abs(delta) <= 15.0 * eps || !(lm > p.a && rm < p.b)) {
        return left + right + delta / 15.0;
    }
    if (depth >= max_depth) {
        std::ostringstream os;
        os << "tolerance not reached on [" << p.a << ", " << p.b << "] after " << max_depth
           << " bisections";
        throw Error(ErrorKind::QuadratureFailure, os.str());
    }
    return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * eps, depth + 1, max_depth) +
           refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * eps, depth + 1, max_depth);
}

// Kronrod nodes on [0, 1] of the symmetric rule; odd indices are the Gauss nodes
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
    double value, error, magnitude;  // magnitude: the rule applied to |f|
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    const double fc = checked(f, c);
    double k = kWk[7] * fc;
    double g = kWg[3] * fc;
    double mag = kWk[7] * std::abs(fc);
    for (std::size_t i = 0; i < 7; ++i) {
        const double lo = checked(f, c - r * kXk[i]);
        const double hi = checked(f, c + r * kXk[i]);
        k += kWk[i] * (lo + hi);
        mag += kWk[i] * (std::abs(lo) + std::abs(hi));
        if (i % 2 == 1) g += kWg[i / 2] * (lo + hi);
    }
    return {k * r, std::abs((k - g) * r), mag * std::abs(r)};
}

double refine_gk(const std::function<double(double)>& f, double a, double b,
                 const GkResult& p, double eps, int depth, int max_depth) {
    constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
    const double m = 0.5 * (a + b);
    if (p.error <= eps || p.error <= kRoundoff * p.magnitude || !(m > a && m < b)) {
        return p.value;
    }
    if (depth >= max_depth) {
        std::ostringstream os;
        os << "tolerance not reached on [" << a << ", " << b << "] after " << max_depth
           << " bisections";
        throw Error(ErrorKind::QuadratureFailure, os.str());
    }
    const GkResult l = gk15(f, a, m);
    const GkResult r = gk15(f, m, b);
    return refine_gk(f, a, m, l, 0.5 * eps, depth + 1, max_depth) +
           refine_gk(f, m, b, r, 0.5 * eps, depth + 1, max_depth);
}

}  // namespace

double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                              const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    if (b < a) return -adaptive_gauss_kronrod(f, b, a, opts);
    const GkResult whole = gk15(f, a, b);
    const double eps = std::max(opts.abs_tol, opts.rel_tol * std::abs(whole.value));
    if (eps == 0.0) return whole.value;
    return refine_gk(f, a, b, whole, eps, 0, opts.max_depth);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    if (b < a) return -adaptive_simpson(f, b, a, opts);

    std::array<double, 2 * kCoarsePanels + 1> xs{};
    std::array<double, 2 * kCoarsePanels + 1> ys{};
    const double h = (b - a) / (2 * kCoarsePanels);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = (i + 1 == xs.size()) ? b : a + h * static_cast<double>(i);
        ys[i] = checked(f, xs[i]);
    }

    std::array<Panel, kCoarsePanels> panels{};
    double coarse = 0.0;
    for (int i = 0; i < kCoarsePanels; ++i) {
        const auto k = static_cast<std::size_t>(2 * i);
        panels[i] = {xs[k], xs[k + 2], ys[k], ys[k + 1], ys[k + 2],
                     simpson(xs[k], xs[k + 2], ys[k], ys[k + 1], ys[k + 2])};
        coarse += panels[i].whole;
    }

    const double eps = std::max(opts.abs_tol, opts.rel_tol * std::abs(coarse)) / kCoarsePanels;
    if (eps == 0.0) return coarse;  // integrand vanished on every sample

    double total = 0.0;
    for (const auto& p : panels) total += refine(f, p, eps, 0, opts.max_depth);
    return total;
}

double brent(const std::function<double(double)>& f, double a, double b, const RootOptions& opts) {
    return brent(f, a, b, f(a), f(b), opts);
}

double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
             const RootOptions& opts) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "no sign change on [" << a << ", " << b << "]: f = " << fa << ", " << fb;
        throw Error(ErrorKind::BracketFailure, os.str());
    }

    constexpr double kEps = std::numeric_limits<double>::epsilon();
    double c = b, fc = fb;
    double d = b - a, e = d;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol =
            0.5 * std::max(opts.abs_tol, opts.rel_tol * std::abs(b)) + kEps * std::abs(b);
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic interpolation, or secant when only two points differ
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if (!std::isfinite(fb)) {
            std::ostringstream os;
            os << "function not finite at " << b;
            throw Error(ErrorKind::NoConvergence, os.str());
        }
    }
    std::ostringstream os;
    os << "Brent did not converge in " << opts.max_iterations << " iterations near " << b;
    throw Error(ErrorKind::NoConvergence, os.str());
}

}  // namespace numeric
}  // namespace slowfast
