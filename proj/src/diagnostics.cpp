#include "beams/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "beams/errors.hpp"

namespace beams {

namespace {

// species pair with line densities replaced by the realized values, so
// total_current / total_charge / kappa_matrix act on the actual solution
SpeciesPair realized(const RadialProfile& p) {
  SpeciesPair sp = p.species;
  sp[0].line_density = p.line_density[0];
  sp[1].line_density = p.line_density[1];
  return sp;
}

}  // namespace

std::array<double, 2> masses(const RadialProfile& p) {
  for (int s = 0; s < 2; ++s)
    if (!(p.primitive_tail[s].exponent > 2.0))
      throw NonIntegrableTail("primitive tail exponent <= 2, M_s diverges");
  return p.mass;
}

double virial_residual(const RadialProfile& p) {
  const SpeciesPair sp = realized(p);
  const double I = total_current(sp);
  const double Q = total_charge(sp);
  const double twoJ = 2.0 * (p.mass[0] + p.mass[1]);
  return ((I * I - Q * Q) - twoJ) / (I * I + Q * Q + twoJ);
}

double bennett_residual(const RadialProfile& p) {
  if (p.model != Model::bennett)
    throw WrongModel(
        "the closed-form Bennett identity needs M_s = N_s/beta_s, which "
        "fails strictly in the Thomas-Fermi model");
  const SpeciesPair sp = realized(p);
  const double I = total_current(sp);
  const double Q = total_charge(sp);
  const double twoJ = 2.0 * (p.line_density[0] / sp[0].beta() +
                             p.line_density[1] / sp[1].beta());
  return ((I * I - Q * Q) - twoJ) / (I * I + Q * Q + twoJ);
}

double isoperimetric_deficit(const RadialProfile& p) {
  const CouplingMatrix g = coupling_matrix(p.species);
  double quad = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      quad += g.entry[s][t] * p.line_density[s] * p.line_density[t];
  return 0.5 * quad - (p.mass[0] + p.mass[1]);
}

std::array<double, 2> asymptote_check(const RadialProfile& p) {
  const double r = p.r.back();
  return {std::fabs(r * p.du[0].back() / (-2.0 * p.line_density[0]) - 1.0),
          std::fabs(r * p.du[1].back() / (-2.0 * p.line_density[1]) - 1.0)};
}

DiagnosticsReport build_report(const RadialProfile& p) {
  DiagnosticsReport rep;
  rep.model = p.model;
  rep.line_density = p.line_density;
  rep.mass = masses(p);
  rep.asymptote_error = asymptote_check(p);

  const SpeciesPair sp = realized(p);
  const auto kappa = kappa_matrix(sp);
  rep.confinement_exponent = {kappa[0][0] + kappa[0][1],
                              kappa[1][0] + kappa[1][1]};
  rep.current = total_current(sp);
  rep.charge = total_charge(sp);
  rep.J = rep.mass[0] + rep.mass[1];

  const double norm =
      rep.current * rep.current + rep.charge * rep.charge + 2.0 * rep.J;
  rep.virial_residual_raw =
      (rep.current * rep.current - rep.charge * rep.charge) - 2.0 * rep.J;
  rep.virial_residual = rep.virial_residual_raw / norm;

  if (p.model == Model::bennett) {
    const double twoJ_cl = 2.0 * (p.line_density[0] / sp[0].beta() +
                                  p.line_density[1] / sp[1].beta());
    rep.bennett_residual_raw =
        (rep.current * rep.current - rep.charge * rep.charge) - twoJ_cl;
    rep.bennett_residual = rep.bennett_residual_raw / norm;
  } else {
    rep.bennett_residual_raw = std::numeric_limits<double>::quiet_NaN();
    rep.bennett_residual = rep.bennett_residual_raw;
  }

  rep.isoperimetric_deficit = isoperimetric_deficit(p);
  return rep;
}

}  // namespace beams
