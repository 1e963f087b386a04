#pragma once

#include <string>
#include <vector>

namespace slowfast {

/// Formal power series c_0 + c_1 x + ... + c_N x^N known modulo x^(N+1).
/// Binary operations truncate to the smaller order of their operands.
class TruncatedSeries {
public:
    /// Pads with zeros or drops coefficients so that exactly order+1 remain.
    TruncatedSeries(std::vector<double> coefficients, int order);

    static TruncatedSeries zero(int order);
    static TruncatedSeries constant(double c, int order);
    static TruncatedSeries identity(int order);  ///< the series x
    static TruncatedSeries monomial(double c, int power, int order);

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    double operator[](int i) const { return i >= 0 && i <= order() ? c_[i] : 0.0; }
    const std::vector<double>& coefficients() const noexcept { return c_; }

    TruncatedSeries truncated(int order) const;
    /// Largest |c_i - other_i| over the common order.
    double max_abs_difference(const TruncatedSeries& other) const;

    std::string to_string(int precision = 9) const;

private:
    std::vector<double> c_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, double s);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
/// a(b(x)); b must have zero constant term (CompositionConstantTerm).
TruncatedSeries series_compose(const TruncatedSeries& a, const TruncatedSeries& b);
/// Derivative; the result has order one less.
TruncatedSeries series_derivative(const TruncatedSeries& a);
/// 1/a; a must have a nonzero constant term (NotInvertible).
TruncatedSeries series_reciprocal(const TruncatedSeries& a);
TruncatedSeries series_power(const TruncatedSeries& a, int k);

/// Psi(x) = x sqrt(1 - x h1(x)) through the binomial series, same order as h1.
TruncatedSeries psi_from_h1(const TruncatedSeries& h1);

/// Compositional inverse by Lagrange inversion: the coefficient of x^i in
/// the inverse is [x^(i-1)] (x / psi(x))^i / i. Requires psi(0) = 0 and
/// psi'(0) = 1 (NotInvertible otherwise).
TruncatedSeries series_invert(const TruncatedSeries& psi);

/// g = -Psi^-1 (Psi^-1)' for Psi = psi_from_h1(h1); order is h1.order() - 1.
TruncatedSeries g_from_h1(const TruncatedSeries& h1);

struct SeriesCodimension {
    bool finite = false;
    int j = -1;              ///< first index 2j with a nonzero even coefficient of g~
    int codimension = -1;    ///< j + 1
    double alpha = 0.0;      ///< g~(x) + g~(-x) = alpha x^(2j) + O(x^(2j+2))
    int checked_order = 0;   ///< highest power of g~ available
    double zero_tolerance = 0.0;
};

/// Reads the codimension off g = -x + x^2 g~(x). A coefficient of g~ counts
/// as zero when it is below 1e-10 times the largest |coefficient| of g~.
/// WrongShape unless g(0) = 0 and g'(0) = -1.
SeriesCodimension codimension_from_series(const TruncatedSeries& g);

}  // namespace slowfast
