#include "slowfast/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <tuple>

#include "slowfast/error.hpp"

namespace slowfast {

namespace {

double clamp_dim(double v, double ambient) {
    if (std::isnan(v)) return v;
    return std::clamp(v, 0.0, ambient);
}

void finish(DimensionEstimate& est, double ambient) {
    if (est.per_k.empty()) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(to_string(est.method)) + " estimate needs at least 3 heights");
    }
    est.k_first = est.per_k.front().k;
    est.k_last = est.per_k.back().k;
    est.final_value = clamp_dim(est.per_k.back().value, ambient);
}

double gap_at(const FractalSequence& seq, std::size_t k) {
    const double d = seq.gaps[k];
    if (!(d > 0.0)) {
        std::ostringstream os;
        os << "gap y_" << k << " - y_" << k + 1 << " = " << d << " is not positive";
        throw Error(ErrorKind::DegenerateGap, os.str());
    }
    return d;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

std::int64_t cell(double v, int exponent) {
    return static_cast<std::int64_t>(std::floor(std::ldexp(v, exponent)));
}

// min spacing between distinct sorted values, 0 if there is none
double min_spacing(const std::vector<double>& sorted) {
    double best = 0.0;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double d = sorted[i] - sorted[i - 1];
        if (d > 0.0 && (best == 0.0 || d < best)) best = d;
    }
    return best;
}

std::vector<int> default_exponents(double span, double fine) {
    if (!(span > 0.0) || !(fine > 0.0)) {
        throw Error(ErrorKind::InsufficientScales, "set has no positive extent");
    }
    return dyadic_exponents(span, std::max(fine, std::ldexp(span, -50)));
}

template <class CountFn>
DimensionEstimate fit_counts(std::size_t items, const std::vector<int>& exponents,
                             const BoxCountOptions& opts, double ambient, CountFn count) {
    if (items < opts.min_items) {
        std::ostringstream os;
        os << "box counting needs at least " << opts.min_items << " items, got " << items;
        throw Error(ErrorKind::InsufficientScales, os.str());
    }
    if (exponents.size() < 2) throw Error(ErrorKind::InsufficientScales, "fewer than 2 scales");
    const auto [lo, hi] = std::minmax_element(exponents.begin(), exponents.end());
    const double decades = (*hi - *lo) * std::log10(2.0);
    if (decades < opts.min_decades) {
        std::ostringstream os;
        os << "scales span " << decades << " decades, need " << opts.min_decades;
        throw Error(ErrorKind::InsufficientScales, os.str());
    }

    std::vector<int> sorted = exponents;
    std::sort(sorted.begin(), sorted.end());
    DimensionEstimate est;
    est.method = Method::BoxCount;
    for (int i : sorted) est.per_k.push_back({i, static_cast<double>(count(i))});

    const std::size_t S = sorted.size();
    const auto drop = static_cast<std::size_t>(std::floor(0.5 * (1.0 - opts.fit_fraction) * S));
    std::size_t first = drop, last = S - 1 - drop;
    if (last < first + 2) {
        first = 0;
        last = S - 1;
    }
    std::vector<double> x, y;
    for (std::size_t s = first; s <= last; ++s) {
        x.push_back(est.per_k[s].k * std::log(2.0));
        y.push_back(std::log(est.per_k[s].value));
    }
    est.k_first = est.per_k[first].k;
    est.k_last = est.per_k[last].k;
    est.final_value = clamp_dim(least_squares_slope(x, y), ambient);
    return est;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::Cahen: return "cahen";
    case Method::Borel: return "borel";
    case Method::TailNucleus: return "tailnucleus";
    case Method::BoxCount: return "boxcount";
    }
    return "unknown";
}

FractalSequence sequence_from_heights(std::vector<double> heights) {
    FractalSequence seq;
    seq.heights = std::move(heights);
    for (std::size_t k = 0; k + 1 < seq.heights.size(); ++k) {
        seq.gaps.push_back(seq.heights[k] - seq.heights[k + 1]);
    }
    seq.residuals.assign(seq.gaps.size(), 0.0);
    return seq;
}

DimensionEstimate cahen_estimate(const FractalSequence& seq) {
    DimensionEstimate est;
    est.method = Method::Cahen;
    // k counts gaps from 1: the k-th gap is y_{k-1} - y_k
    for (std::size_t k = 2; k <= seq.gaps.size(); ++k) {
        const double d = gap_at(seq, k - 1);
        est.per_k.push_back({static_cast<int>(k), std::log(static_cast<double>(k)) / -std::log(d)});
    }
    finish(est, 1.0);
    return est;
}

DimensionEstimate borel_estimate(const FractalSequence& seq) {
    DimensionEstimate est;
    est.method = Method::Borel;
    for (std::size_t k = 2; k < seq.heights.size(); ++k) {
        const double y = seq.heights[k];
        if (!(y > 0.0)) {
            std::ostringstream os;
            os << "height y_" << k << " = " << y << " is not positive";
            throw Error(ErrorKind::DegenerateGap, os.str());
        }
        est.per_k.push_back(
            {static_cast<int>(k), 1.0 / (1.0 - std::log(y) / std::log(static_cast<double>(k)))});
    }
    finish(est, 1.0);
    return est;
}

DimensionEstimate tail_nucleus_estimate(const FractalSequence& seq) {
    DimensionEstimate est;
    est.method = Method::TailNucleus;
    for (std::size_t k = 1; k < seq.gaps.size(); ++k) {
        const double d = gap_at(seq, k);
        const double y = seq.heights[k];
        est.per_k.push_back({static_cast<int>(k),
                             1.0 - std::log(static_cast<double>(k) * d + y) / std::log(0.5 * d)});
    }
    finish(est, 1.0);
    return est;
}

const DimensionEstimate& FormulaEstimates::auto_selected() const {
    return tail_nucleus.final_value > 0.5 ? tail_nucleus : cahen;
}

const DimensionEstimate& FormulaEstimates::closest_to(double target) const {
    const DimensionEstimate* best = &cahen;
    for (const DimensionEstimate* e : {&borel, &tail_nucleus}) {
        if (std::abs(e->final_value - target) < std::abs(best->final_value - target)) best = e;
    }
    return *best;
}

double FormulaEstimates::spread() const {
    const double a = cahen.final_value, b = borel.final_value, c = tail_nucleus.final_value;
    return std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
}

FormulaEstimates all_estimates(const FractalSequence& seq) {
    return {cahen_estimate(seq), borel_estimate(seq), tail_nucleus_estimate(seq)};
}

// --- box counting -------------------------------------------------------------

std::vector<int> dyadic_exponents(double coarse, double fine) {
    if (!(coarse > 0.0) || !(fine > 0.0) || fine > coarse) {
        throw Error(ErrorKind::InvalidArgument, "need 0 < fine <= coarse");
    }
    const int first = -static_cast<int>(std::ceil(std::log2(coarse)));
    const int last = static_cast<int>(std::floor(-std::log2(fine)));
    std::vector<int> out;
    for (int i = first; i <= last; ++i) out.push_back(i);
    return out;
}

std::size_t count_boxes(const std::vector<double>& points, int exponent) {
    std::vector<std::int64_t> cells;
    cells.reserve(points.size());
    for (double p : points) cells.push_back(cell(p, exponent));
    std::sort(cells.begin(), cells.end());
    return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

std::size_t count_boxes(const std::vector<Segment>& segments, int exponent) {
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> rows;
    rows.reserve(segments.size());
    for (const Segment& s : segments) {
        rows.emplace_back(cell(s.y, exponent), cell(s.x0, exponent), cell(s.x1, exponent));
    }
    std::sort(rows.begin(), rows.end());
    std::size_t total = 0;
    std::size_t i = 0;
    while (i < rows.size()) {
        const auto row = std::get<0>(rows[i]);
        std::int64_t c0 = std::get<1>(rows[i]);
        std::int64_t c1 = std::get<2>(rows[i]);
        for (++i; i < rows.size() && std::get<0>(rows[i]) == row; ++i) {
            const auto [r, a, b] = rows[i];
            if (a > c1 + 1) {
                total += static_cast<std::size_t>(c1 - c0 + 1);
                c0 = a;
                c1 = b;
            } else {
                c1 = std::max(c1, b);
            }
        }
        total += static_cast<std::size_t>(c1 - c0 + 1);
    }
    return total;
}

DimensionEstimate box_count_dimension(const std::vector<double>& points,
                                      const std::vector<int>& exponents,
                                      const BoxCountOptions& opts) {
    std::vector<double> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    return fit_counts(points.size(), exponents, opts, 1.0,
                      [&](int i) { return count_boxes(sorted, i); });
}

DimensionEstimate box_count_dimension(const std::vector<double>& points,
                                      const BoxCountOptions& opts) {
    std::vector<double> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    const double span = sorted.empty() ? 0.0 : sorted.back() - sorted.front();
    if (points.size() < opts.min_items) return box_count_dimension(points, {}, opts);
    return box_count_dimension(sorted, default_exponents(span, min_spacing(sorted)), opts);
}

DimensionEstimate box_count_dimension(const std::vector<Segment>& segments,
                                      const std::vector<int>& exponents,
                                      const BoxCountOptions& opts) {
    return fit_counts(segments.size(), exponents, opts, 2.0,
                      [&](int i) { return count_boxes(segments, i); });
}

DimensionEstimate box_count_dimension(const std::vector<Segment>& segments,
                                      const BoxCountOptions& opts) {
    if (segments.size() < opts.min_items) return box_count_dimension(segments, {}, opts);
    double xmin = segments.front().x0, xmax = segments.front().x1;
    std::vector<double> ys;
    for (const Segment& s : segments) {
        xmin = std::min(xmin, s.x0);
        xmax = std::max(xmax, s.x1);
        ys.push_back(s.y);
    }
    std::sort(ys.begin(), ys.end());
    const double span = std::max(xmax - xmin, ys.back() - ys.front());
    return box_count_dimension(segments, default_exponents(span, min_spacing(ys)), opts);
}

std::vector<Segment> chirp_segments(const SlowFastModel& model, const FractalSequence& seq) {
    std::vector<Segment> out;
    out.reserve(seq.heights.size());
    for (double h : seq.heights) {
        double a = model.alpha_limit(h);
        double w = model.omega_limit(h);
        if (a > w) std::swap(a, w);
        out.push_back({a, w, h});
    }
    return out;
}

// --- theory and codimension --------------------------------------------------------

double theoretical_dimension(int n, std::optional<int> j) {
    if (n < 2 || n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "n must be even and >= 2");
    if (!j) return 1.0;
    if (*j < 0) throw Error(ErrorKind::InvalidArgument, "j must be >= 0");
    return (2.0 * *j + 1.0) / (n + 2.0 * *j + 1.0);
}

double chirp_theoretical_dimension(int n, int j) {
    if (n < 2 || n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "n must be even and >= 2");
    if (j < 0) throw Error(ErrorKind::InvalidArgument, "j must be finite and >= 0");
    return (n + 4.0 * j + 1.0) / (n + 2.0 * j + 1.0);
}

double default_snap_threshold(int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be >= 2");
    return 0.04 * 2.0 / n;
}

CodimensionReport codimension_from_dimension(int n, double D, double snap_threshold) {
    if (n < 2 || n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "n must be even and >= 2");
    if (!(snap_threshold > 0.0)) throw Error(ErrorKind::InvalidArgument, "snap_threshold <= 0");
    if (!(D >= 0.0) || !(D <= 1.0)) {
        std::ostringstream os;
        os << "dimension estimate " << D << " outside [0, 1]";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    CodimensionReport rep;
    rep.contact_order_n = n;
    rep.estimated_dimension = D;

    if (D == 1.0) {
        rep.infinite = true;
        rep.snapped_dimension = rep.lower_candidate = rep.upper_candidate = 1.0;
    } else {
        // invert D = (2j+1)/(n+2j+1) and look at the admissible values around it
        const double jc = ((n + 1.0) * D - 1.0) / (2.0 * (1.0 - D));
        const double jf = std::floor(std::max(jc, 0.0));
        if (jf > 1e9) {
            rep.infinite = true;
            rep.snapped_dimension = rep.lower_candidate = rep.upper_candidate = 1.0;
        } else {
            const int j0 = static_cast<int>(jf);
            const double d0 = theoretical_dimension(n, j0);
            const double d1 = theoretical_dimension(n, j0 + 1);
            const bool take_upper = D > d0 && std::abs(d1 - D) < std::abs(D - d0);
            rep.lower_candidate = D >= d0 ? d0 : 0.0;
            rep.upper_candidate = D >= d0 ? d1 : d0;
            rep.recovered_j = take_upper ? j0 + 1 : j0;
            rep.snapped_dimension = take_upper ? d1 : d0;
        }
    }
    rep.snap_distance = std::abs(D - rep.snapped_dimension);
    rep.resolved = rep.snap_distance <= snap_threshold;
    if (!rep.resolved || rep.infinite) {
        rep.recovered_j = -1;
    }
    if (rep.resolved && !rep.infinite) rep.codimension = rep.recovered_j + 1;
    return rep;
}

CodimensionReport codimension_from_dimension(int n, double D) {
    return codimension_from_dimension(n, D, default_snap_threshold(n));
}

}  // namespace slowfast
