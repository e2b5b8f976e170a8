#ifndef BEAMS_DIAGNOSTICS_HPP
#define BEAMS_DIAGNOSTICS_HPP

#include <array>

#include "beams/radial.hpp"

// Exact identities evaluated as residuals on solver output: the virial
// identity I^2 - Q^2 = 2 sum_s M_s, its closed Bennett form with
// M_s = N_s / beta_s, the isoperimetric deficit
// (1/2) sum gamma[s][t] N_s N_t - sum M_s (zero iff radial), and the
// gradient asymptote r u_s' -> -2 N_s.  All quantities use the realized
// line densities of the profile, not the configured targets.

namespace beams {

struct DiagnosticsReport {
  Model model = Model::bennett;
  std::array<double, 2> line_density = {0.0, 0.0};  // realized N~_s
  std::array<double, 2> mass = {0.0, 0.0};          // M_s
  std::array<double, 2> confinement_exponent = {0.0, 0.0};
  std::array<double, 2> asymptote_error = {0.0, 0.0};
  double current = 0.0;  // I = sum q_s nu_s N~_s
  double charge = 0.0;   // Q = sum q_s N~_s
  double J = 0.0;        // sum_s M_s
  double virial_residual_raw = 0.0;
  double virial_residual = 0.0;  // normalized by I^2 + Q^2 + 2 sum M
  // quiet NaN for Thomas-Fermi profiles (identity holds classically only)
  double bennett_residual_raw = 0.0;
  double bennett_residual = 0.0;
  double isoperimetric_deficit = 0.0;  // raw, = virial_residual_raw / 2
};

/// M_s including the analytic tail. Throws NonIntegrableTail if the
/// primitive's fitted tail exponent is <= 2.
std::array<double, 2> masses(const RadialProfile& profile);

/// ((I^2 - Q^2) - 2 sum M_s) / (I^2 + Q^2 + 2 sum M_s).
double virial_residual(const RadialProfile& profile);

/// ((I^2 - Q^2) - 2 sum N~_s/beta_s), same normalization. Throws
/// WrongModel on a Thomas-Fermi profile, where M_s > N_s/beta_s strictly.
double bennett_residual(const RadialProfile& profile);

/// (1/2) sum_{s,t} gamma[s][t] N~_s N~_t - sum_s M_s (raw).
double isoperimetric_deficit(const RadialProfile& profile);

/// Per-species |r u_s'(r_max) / (-2 N~_s) - 1|.
std::array<double, 2> asymptote_check(const RadialProfile& profile);

DiagnosticsReport build_report(const RadialProfile& profile);

}  // namespace beams

#endif
