#ifndef BEAMS_SPECIES_HPP
#define BEAMS_SPECIES_HPP

#include <memory>

#include "beams/quadrature.hpp"

// Per-species density functions G_s and their primitives g_s for the
// quantum (Thomas-Fermi) and classical (Bennett/Boltzmann) models.
//
// Units: the library works in natural units c = k_B = h = 1 throughout;
// configs supply dimensionless parameters. The spin-1/2 degeneracy factor
// 2 is included.
//
// Both G_s and g_s depend on position only through the effective potential
// w = mu_s + U_s; the split between the external chemical potential mu_s
// and the chemical self-potential U_s is gauge-dependent and is fixed by
// the solver's gauge convention, never here.

namespace beams {

enum class Model { thomas_fermi, bennett };

struct SpeciesParams {
  double charge = 0.0;        // q_s, units of elementary charge, signed
  double mass = 0.0;          // m_s > 0
  double temperature = 0.0;   // T_s > 0
  double drift = 0.0;         // nu_s in (-1, 1), lab-frame drift speed / c
  double line_density = 0.0;  // N_s > 0, target particles per unit length

  // Thermal lab-frame parameter beta_s = 1 / (T_s sqrt(1 - nu_s^2)).
  double beta() const;
  // Minimum of E(p) - nu_s p.a over momenta: m_s sqrt(1 - nu_s^2). The
  // fugacity at effective potential w is exp(beta (w - min_energy)).
  double min_energy() const;
  // Throws ValidationError if any invariant is violated.
  void validate() const;
};

/// Effective potential w_s = mu_s + U_s, the only combination through
/// which G_s depends on position.
struct EffectivePotential {
  double w = 0.0;
};

/// G_s(w): particle density at effective potential w. Strictly positive
/// and strictly increasing in w. Throws QuadratureFailure if the radial
/// momentum quadrature cannot reach tolerance.
double density(Model model, const SpeciesParams& sp, double w,
               const QuadratureOptions& opts = {});
inline double density(Model m, const SpeciesParams& sp, EffectivePotential w,
                      const QuadratureOptions& o = {}) {
  return density(m, sp, w.w, o);
}

/// g_s(w): the unique primitive of G_s with g_s -> 0 as w -> -infinity.
/// In the Bennett model g_s = G_s / beta_s exactly.
double primitive(Model model, const SpeciesParams& sp, double w,
                 const QuadratureOptions& opts = {});
inline double primitive(Model m, const SpeciesParams& sp, EffectivePotential w,
                        const QuadratureOptions& o = {}) {
  return primitive(m, sp, w.w, o);
}

/// Cached evaluator bound to one (model, species). Solvers call G_s and
/// g_s millions of times; for the Thomas-Fermi model this wraps the
/// quadrature in piecewise-Chebyshev interpolants of ln G and ln g
/// (accurate to ~1e-11 relative, cross-checked in tests), switching to the
/// exact Boltzmann asymptote at fugacities below ~1e-13. For the Bennett
/// model everything is closed-form after one normalization quadrature.
/// Thread-safety: const after construction except for lazy panel growth;
/// use one instance per thread.
class SpeciesDensity {
 public:
  SpeciesDensity(Model model, const SpeciesParams& sp,
                 const QuadratureOptions& opts = {});
  ~SpeciesDensity();
  SpeciesDensity(SpeciesDensity&&) noexcept;
  SpeciesDensity& operator=(SpeciesDensity&&) noexcept;

  double density(double w) const;
  double primitive(double w) const;
  /// Inverse of the strictly increasing map w -> G_s(w).
  double inverse_density(double rho) const;

  Model model() const;
  const SpeciesParams& params() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace beams

#endif
