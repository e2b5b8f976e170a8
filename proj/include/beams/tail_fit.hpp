#ifndef BEAMS_TAIL_FIT_HPP
#define BEAMS_TAIL_FIT_HPP

#include <vector>

// Power-law tail model f(r) ~ C r^{-alpha} (1 + c2 / r^2), fitted in log
// space by linear least squares. The curvature term absorbs the leading
// correction to a pure power law, which matters when the tail integral
// must be accurate to ~1e-8 of the total.

namespace beams {

struct PowerTail {
  double amplitude = 0.0;  // C
  double exponent = 0.0;   // alpha
  double curvature = 0.0;  // c2
  double max_log_misfit = 0.0;

  double value(double r) const;
  /// int_R^infty 2 pi r f(r) dr; requires exponent > 2.
  double plane_integral_beyond(double R) const;
};

/// Throws NonIntegrable if fewer than 8 positive samples are available or
/// the normal equations are degenerate.
PowerTail fit_power_tail(const std::vector<double>& r,
                         const std::vector<double>& f);

}  // namespace beams

#endif
