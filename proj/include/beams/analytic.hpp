#ifndef BEAMS_ANALYTIC_HPP
#define BEAMS_ANALYTIC_HPP

#include <vector>

#include "beams/planar.hpp"

// Closed-form reference objects: the pinch family
//   v(x) = v0 - ln(1 + k^2 |x - x0|^2),
// its density profile weight * (k^2/pi) (1 + k^2 |x-x0|^2)^{-2}, and
// residual evaluators for Liouville's equation
//   -Lap v = 4 pi e^{2v} / int e^{2v} dx.
// Residual stencils are second-order centered; grid spacing should be
// chosen from the target residual (h ~ 1e-3/k gives ~1e-6).

namespace beams {

struct PinchParams {
  double k = 1.0;                  // inverse scale length, > 0
  double x0 = 0.0, y0 = 0.0;       // center
  double v0 = 0.0;                 // gauge constant
};

double pinch_potential(const PinchParams& p, double x, double y);
double pinch_potential_radial(const PinchParams& p, double r);

/// weight * (k^2/pi) (1 + k^2 r^2)^{-2}; integrates to weight over the
/// plane.
double pinch_density(const PinchParams& p, double weight, double x, double y);
double pinch_density_radial(const PinchParams& p, double weight, double r);

/// 2 pi int r f(r) dr for samples on the uniform grid r_i = i h, by
/// Simpson's rule plus a fitted power-law tail beyond the last sample.
/// Throws NonIntegrable if the fitted tail exponent is <= 2.
double radial_plane_integral(const std::vector<double>& f, double h);

/// -Lap v - 4 pi e^{2v} / S at every node of the uniform radial grid
/// r_i = i h, with S = exp_integral (pass radial_plane_integral of e^{2v},
/// or the analytic value when known). Second-order stencils; the r = 0
/// node uses the regularity condition v'(0) = 0.
std::vector<double> liouville_residual_radial(const std::vector<double>& v,
                                              double h, double exp_integral);

/// Planar version on a masked grid; the normalization integral is taken
/// over the in-disk cells only (finite-domain convention). Residual values
/// are stored on interior nodes, zero elsewhere.
PlanarField liouville_residual(const PlanarField& v);

}  // namespace beams

#endif
