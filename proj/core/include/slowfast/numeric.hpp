#pragma once

#include <functional>

namespace slowfast::numeric {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 60;
};

/// Adaptive Simpson on [a, b]. A panel is accepted once its Richardson error
/// estimate is below max(abs_tol, rel_tol * |coarse estimate of the whole
/// integral|) scaled to the panel width. Throws Error{QuadratureFailure} when
/// a panel needs more than max_depth bisections or a non-finite value shows up.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts = {});

/// Adaptive 7/15-point Gauss-Kronrod with recursive bisection. The panel
/// error estimate |K15 - G7| is pessimistic for smooth integrands, so the
/// returned value is usually far more accurate than the tolerance, and varies
/// smoothly with the endpoints once the panel layout settles.
double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                              const QuadratureOptions& opts = {});

struct RootOptions {
    double rel_tol = 1e-14;
    double abs_tol = 0.0;
    int max_iterations = 200;
};

/// Brent's method on a bracket [a, b] with f(a) and f(b) of opposite sign
/// (or one of them zero). Throws BracketFailure on a bad bracket and
/// NoConvergence once max_iterations is exhausted.
double brent(const std::function<double(double)>& f, double a, double b,
             const RootOptions& opts = {});

/// Same, with the endpoint values already known.
double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
             const RootOptions& opts = {});

}  // namespace slowfast::numeric
