#ifndef BEAMS_RADIAL_HPP
#define BEAMS_RADIAL_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "beams/coupling.hpp"
#include "beams/species.hpp"
#include "beams/tail_fit.hpp"

// Radially reduced equilibrium system
//
//   -(1/r) (r u_s')' = 4 pi G_s(w_s),   w_s = mu_s + sum_t gamma[s][t] u_t
//
// in the gauge u_s(0) = 0, so the unknown central data are the two values
// w_s(0) = mu_s.  Forward mode integrates outward from given central data
// and reports the realized line densities (inner quadrature plus analytic
// power-law tail); inverse mode runs Newton on the central data to hit
// target line densities.  The conformal (pinch) case is constructed from
// the closed-form family instead, since there the Newton map is singular
// along the scaling direction.

namespace beams {

struct SolverOptions {
  double r_max = 1000.0;
  double ode_rel_tol = 1e-10;
  double ode_abs_tol = 1e-12;
  double newton_tol = 1e-8;
  int max_newton_iter = 40;
  double min_damping = 1.0 / 64.0;
  // tail fit uses samples with r >= r_max / tail_window
  double tail_window = 8.0;
  double confinement_margin = 0.05;
  // optional initial guess for the central (w_+(0), w_-(0))
  std::optional<std::array<double, 2>> central_guess;

  void validate() const;  // throws ValidationError
};

struct RadialProfile {
  Model model = Model::bennett;
  SpeciesPair species;
  std::array<double, 2> central_w = {0.0, 0.0};

  std::vector<double> r;  // r[0] = 0, strictly increasing
  std::array<std::vector<double>, 2> u;    // u_s, u_s(0) = 0
  std::array<std::vector<double>, 2> du;   // u_s'
  std::array<std::vector<double>, 2> U;    // sum_t gamma[s][t] u_t
  std::array<std::vector<double>, 2> w;    // mu_s + U_s
  std::array<std::vector<double>, 2> rho;  // G_s(w_s)
  std::array<std::vector<double>, 2> g;    // g_s(w_s), primitive of G_s

  // running plane integrals int_0^r 2 pi r' rho_s dr' and the primitive
  // analogue (accumulated inside the ODE state, not re-quadratured)
  std::array<std::vector<double>, 2> line_density_inner;
  std::array<std::vector<double>, 2> mass_inner;

  std::array<PowerTail, 2> density_tail;
  std::array<PowerTail, 2> primitive_tail;
  std::array<double, 2> line_density = {0.0, 0.0};  // realized N-tilde
  std::array<double, 2> mass = {0.0, 0.0};          // M_s with tail
  std::array<double, 2> asymptote_error = {0.0, 0.0};
};

struct ConfinementReport {
  std::array<double, 2> exponent = {0.0, 0.0};  // e_s = beta_s sum gamma N
  bool pass = false;
  std::string message;
};

/// Confinement exponents e_s = beta_s sum_t gamma[s][t] N_t from the
/// *target* line densities; pass requires e_s >= 1 + margin for both
/// species (the marginal case e_s = 1 is excluded by policy).
ConfinementReport validate_confinement(const SpeciesPair& sp,
                                       double margin = 0.05);

/// Forward mode: integrate from central data central_w = (w_+(0), w_-(0)).
/// Throws BlowUp if the fields diverge before r_max, TailNotAsymptotic if
/// the tail fit is unstable.
RadialProfile integrate_profile(Model model, const SpeciesPair& sp,
                                const std::array<double, 2>& central_w,
                                const SolverOptions& opts = {});

/// Refit power-law tails on the outer window of an integrated profile and
/// recompute the corrected line densities / masses in place.  Returns the
/// density tails.  Throws TailNotAsymptotic if the fit window is not in
/// the asymptotic regime (misfit too large or alpha inconsistent with
/// 2 beta_s sum_t gamma[s][t] N_t).
std::array<PowerTail, 2> tail_extend(RadialProfile& profile,
                                     const SolverOptions& opts = {});

/// Inverse mode: Newton on the central data so the realized line
/// densities match sp[s].line_density.  Throws JacobianSingular on the
/// conformal degeneracy (use solve_equilibrium_conformal), NoConvergence
/// with an iteration trace otherwise.
RadialProfile solve_equilibrium(Model model, const SpeciesPair& sp,
                                const SolverOptions& opts = {});

/// Conformal case: construct the solution from the pinch family at scale
/// k and verify it solves the full system.  Throws NotConformal if the
/// configuration is not conformal to 1e-8 or the model is not Bennett.
RadialProfile solve_equilibrium_conformal(Model model, const SpeciesPair& sp,
                                          double scale_k,
                                          const SolverOptions& opts = {});

/// u_s(r) off the stored grid by cubic Hermite interpolation (the exact
/// derivative u_s' is stored); beyond the last node the logarithmic
/// asymptote u(r_max) - 2 N~_s ln(r / r_max) is used.
double eval_u(const RadialProfile& profile, int s, double r);

/// Discretized ODE defect -(1/r)(r u_s')' - 4 pi rho_s at the interior
/// grid nodes (three-point stencils on the nonuniform grid), normalized
/// by 4 pi rho_s(0).  Index 0 corresponds to grid node 1.
std::array<std::vector<double>, 2> ode_defect(const RadialProfile& profile);

}  // namespace beams

#endif
