#ifndef BEAMS_QUADRATURE_HPP
#define BEAMS_QUADRATURE_HPP

#include <functional>

namespace beams {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  // Above this estimated relative error the integration throws
  // QuadratureFailure instead of returning a value.
  double panic_tol = 1e-6;
  int max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod 7-15 on [a, b]. Worst interval is
/// bisected until the summed error estimate meets the tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureOptions& opts = {});

/// int_0^infty f(p) dp via the exponential substitution
/// p = -scale ln(1 - t), t in [0, 1). `scale` should be a few times the
/// decay length of f; adaptive refinement absorbs a poor choice.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double scale,
                               const QuadratureOptions& opts = {});

}  // namespace beams

#endif
