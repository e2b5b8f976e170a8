#include "beams/coupling.hpp"

#include <cmath>

#include "beams/errors.hpp"

namespace beams {

CouplingMatrix coupling_matrix(const SpeciesPair& sp) {
  if (sp[0].drift == sp[1].drift)
    throw DegenerateCoupling(
        "nu+ == nu-: coupling matrix rank drops below 2 "
        "(counter-streaming species required)");
  CouplingMatrix g;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      g.entry[s][t] =
          -sp[s].charge * sp[t].charge * (1.0 - sp[s].drift * sp[t].drift);
  g.determinant = g.entry[0][0] * g.entry[1][1] - g.entry[0][1] * g.entry[1][0];
  g.inverse[0][0] = g.entry[1][1] / g.determinant;
  g.inverse[1][1] = g.entry[0][0] / g.determinant;
  g.inverse[0][1] = -g.entry[0][1] / g.determinant;
  g.inverse[1][0] = -g.entry[1][0] / g.determinant;
  return g;
}

FieldPair to_chemical(const FieldPair& u, const CouplingMatrix& g) {
  return {g.entry[0][0] * u[0] + g.entry[0][1] * u[1],
          g.entry[1][0] * u[0] + g.entry[1][1] * u[1]};
}

FieldPair to_density_potentials(const FieldPair& U, const CouplingMatrix& g) {
  return {g.inverse[0][0] * U[0] + g.inverse[0][1] * U[1],
          g.inverse[1][0] * U[0] + g.inverse[1][1] * U[1]};
}

Potentials to_potentials(const FieldPair& u, const SpeciesPair& sp) {
  Potentials p;
  p.phi = sp[0].charge * u[0] + sp[1].charge * u[1];
  p.psi = sp[0].drift * sp[0].charge * u[0] + sp[1].drift * sp[1].charge * u[1];
  return p;
}

FieldPair from_potentials(const Potentials& p, const SpeciesPair& sp) {
  const double a = sp[0].charge, b = sp[1].charge;
  const double c = sp[0].drift * sp[0].charge, d = sp[1].drift * sp[1].charge;
  const double det = a * d - b * c;
  if (det == 0.0)
    throw DegenerateCoupling("potential map not invertible (nu+ == nu-)");
  return {(d * p.phi - b * p.psi) / det, (a * p.psi - c * p.phi) / det};
}

FieldTriple make_field_triple(const FieldPair& u, const SpeciesPair& sp) {
  FieldTriple t;
  t.u = u;
  t.U = to_chemical(u, coupling_matrix(sp));
  t.pot = to_potentials(u, sp);
  return t;
}

double total_current(const SpeciesPair& sp) {
  return sp[0].charge * sp[0].drift * sp[0].line_density +
         sp[1].charge * sp[1].drift * sp[1].line_density;
}

double total_charge(const SpeciesPair& sp) {
  return sp[0].charge * sp[0].line_density + sp[1].charge * sp[1].line_density;
}

std::array<std::array<double, 2>, 2> kappa_matrix(const SpeciesPair& sp) {
  const CouplingMatrix g = coupling_matrix(sp);
  std::array<std::array<double, 2>, 2> k{};
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      k[s][t] = sp[s].beta() * g.entry[s][t] * sp[t].line_density;
  return k;
}

FieldPair conformal_residual(const SpeciesPair& sp) {
  const double current = total_current(sp);
  const double charge = total_charge(sp);
  FieldPair r;
  for (int s = 0; s < 2; ++s)
    r[s] =
        sp[s].beta() * sp[s].charge * (sp[s].drift * current - charge) - 2.0;
  return r;
}

FieldPair solve_conformal_line_densities(const SpeciesPair& sp) {
  // beta_s q_s (nu_s I - Q) = sum_t beta_s gamma[s][t] N_t, so the
  // conformal conditions read gamma N = (2/beta+, 2/beta-).
  const CouplingMatrix g = coupling_matrix(sp);
  const FieldPair rhs = {2.0 / sp[0].beta(), 2.0 / sp[1].beta()};
  FieldPair n = to_density_potentials(rhs, g);
  if (!(n[0] > 0.0) || !(n[1] > 0.0))
    throw NoPositiveSolution(
        "conformal line densities are nonpositive for these parameters");
  return n;
}

}  // namespace beams
