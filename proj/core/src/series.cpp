#include "slowfast/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "slowfast/error.hpp"

namespace slowfast {

namespace {

constexpr double kZeroTolerance = 1e-10;
constexpr double kShapeTolerance = 1e-12;

void require_order(int order) {
    if (order < 0) throw Error(ErrorKind::InvalidArgument, "series order must be >= 0");
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<double> coefficients, int order)
    : c_(std::move(coefficients)) {
    require_order(order);
    c_.resize(static_cast<std::size_t>(order) + 1, 0.0);
}

TruncatedSeries TruncatedSeries::zero(int order) { return TruncatedSeries({}, order); }

TruncatedSeries TruncatedSeries::constant(double c, int order) {
    return TruncatedSeries({c}, order);
}

TruncatedSeries TruncatedSeries::identity(int order) { return monomial(1.0, 1, order); }

TruncatedSeries TruncatedSeries::monomial(double c, int power, int order) {
    TruncatedSeries s = zero(order);
    if (power >= 0 && power <= order) s.c_[static_cast<std::size_t>(power)] = c;
    return s;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    return TruncatedSeries(std::vector<double>(c_.begin(),
                                               c_.begin() + std::min<std::size_t>(
                                                                c_.size(), order + 1)),
                           order);
}

double TruncatedSeries::max_abs_difference(const TruncatedSeries& other) const {
    const int n = std::min(order(), other.order());
    double m = 0.0;
    for (int i = 0; i <= n; ++i) m = std::max(m, std::abs((*this)[i] - other[i]));
    return m;
}

std::string TruncatedSeries::to_string(int precision) const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i <= order(); ++i) {
        const double c = c_[static_cast<std::size_t>(i)];
        if (c == 0.0) continue;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", precision, std::abs(c));
        if (any) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        os << buf;
        if (i == 1) os << "*x";
        if (i > 1) os << "*x^" << i;
        any = true;
    }
    if (!any) os << "0";
    os << " + O(x^" << order() + 1 << ")";
    return os.str();
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[i] = a[i] + b[i];
    return TruncatedSeries(std::move(c), n);
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return series_add(a, series_scale(b, -1.0));
}

TruncatedSeries series_scale(const TruncatedSeries& a, double s) {
    std::vector<double> c = a.coefficients();
    for (double& v : c) v *= s;
    return TruncatedSeries(std::move(c), a.order());
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0.0) continue;
        for (int k = 0; i + k <= n; ++k) c[i + k] += a[i] * b[k];
    }
    return TruncatedSeries(std::move(c), n);
}

TruncatedSeries series_compose(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (b[0] != 0.0) {
        throw Error(ErrorKind::CompositionConstantTerm,
                    "inner series of a composition must vanish at 0");
    }
    const int n = std::min(a.order(), b.order());
    // Horner: a_0 + b (a_1 + b (a_2 + ...))
    TruncatedSeries acc = TruncatedSeries::constant(a[n], n);
    const TruncatedSeries inner = b.truncated(n);
    for (int i = n - 1; i >= 0; --i) {
        acc = series_add(series_mul(acc, inner), TruncatedSeries::constant(a[i], n));
    }
    return acc;
}

TruncatedSeries series_derivative(const TruncatedSeries& a) {
    if (a.order() < 1) throw Error(ErrorKind::InvalidArgument, "derivative needs order >= 1");
    const int n = a.order() - 1;
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[i] = (i + 1) * a[i + 1];
    return TruncatedSeries(std::move(c), n);
}

TruncatedSeries series_reciprocal(const TruncatedSeries& a) {
    if (a[0] == 0.0) throw Error(ErrorKind::NotInvertible, "reciprocal of a series vanishing at 0");
    const int n = a.order();
    std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
    r[0] = 1.0 / a[0];
    for (int i = 1; i <= n; ++i) {
        double s = 0.0;
        for (int k = 1; k <= i; ++k) s += a[k] * r[i - k];
        r[i] = -s / a[0];
    }
    return TruncatedSeries(std::move(r), n);
}

TruncatedSeries series_power(const TruncatedSeries& a, int k) {
    if (k < 0) return series_power(series_reciprocal(a), -k);
    TruncatedSeries result = TruncatedSeries::constant(1.0, a.order());
    TruncatedSeries base = a;
    while (k > 0) {
        if (k & 1) result = series_mul(result, base);
        k >>= 1;
        if (k > 0) base = series_mul(base, base);
    }
    return result;
}

TruncatedSeries psi_from_h1(const TruncatedSeries& h1) {
    const int n = h1.order();
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "h1 needs truncation order >= 1");
    const TruncatedSeries x = TruncatedSeries::identity(n);
    const TruncatedSeries s = series_scale(series_mul(x, h1), -1.0);  // -x h1, no constant term

    // sqrt(1 + s) = sum_k binom(1/2, k) s^k
    TruncatedSeries root = TruncatedSeries::constant(1.0, n);
    TruncatedSeries sk = TruncatedSeries::constant(1.0, n);
    double binom = 1.0;
    for (int k = 1; k <= n; ++k) {
        binom *= (0.5 - (k - 1)) / k;
        sk = series_mul(sk, s);
        root = series_add(root, series_scale(sk, binom));
    }
    return series_mul(x, root);
}

TruncatedSeries series_invert(const TruncatedSeries& psi) {
    const int n = psi.order();
    if (n < 1 || psi[0] != 0.0 || psi[1] != 1.0) {
        throw Error(ErrorKind::NotInvertible,
                    "Lagrange inversion needs psi(0) = 0 and psi'(0) = 1");
    }
    // psi(x) / x, then its reciprocal x / psi(x), both known to order n-1
    std::vector<double> shifted(psi.coefficients().begin() + 1, psi.coefficients().end());
    const TruncatedSeries ratio = series_reciprocal(TruncatedSeries(std::move(shifted), n - 1));

    std::vector<double> inv(static_cast<std::size_t>(n) + 1, 0.0);
    TruncatedSeries power = TruncatedSeries::constant(1.0, n - 1);
    for (int i = 1; i <= n; ++i) {
        power = series_mul(power, ratio);
        inv[i] = power[i - 1] / i;
    }
    return TruncatedSeries(std::move(inv), n);
}

TruncatedSeries g_from_h1(const TruncatedSeries& h1) {
    const TruncatedSeries inv = series_invert(psi_from_h1(h1));
    return series_scale(series_mul(inv, series_derivative(inv)), -1.0);
}

SeriesCodimension codimension_from_series(const TruncatedSeries& g) {
    if (g.order() < 2 || std::abs(g[0]) > kShapeTolerance ||
        std::abs(g[1] + 1.0) > kShapeTolerance) {
        std::ostringstream os;
        os << "expected g = -x + x^2 g~(x) with order >= 2, got g(0) = " << g[0]
           << ", g'(0) = " << g[1] << ", order " << g.order();
        throw Error(ErrorKind::WrongShape, os.str());
    }
    SeriesCodimension out;
    out.checked_order = g.order() - 2;
    double scale = 0.0;
    for (int i = 0; i <= out.checked_order; ++i) scale = std::max(scale, std::abs(g[i + 2]));
    out.zero_tolerance = kZeroTolerance * scale;
    if (scale == 0.0) return out;

    for (int i = 0; i <= out.checked_order; i += 2) {
        const double c = g[i + 2];
        if (std::abs(c) > out.zero_tolerance) {
            out.finite = true;
            out.j = i / 2;
            out.codimension = out.j + 1;
            out.alpha = 2.0 * c;
            break;
        }
    }
    return out;
}

}  // namespace slowfast
