#ifndef BEAMS_COUPLING_HPP
#define BEAMS_COUPLING_HPP

#include <array>

#include "beams/species.hpp"

// The 2x2 coupling matrix gamma[s][t] = -q_s q_t (1 - nu_s nu_t) and the
// three equivalent field representations
//   (phi, psi)  <->  (u_+, u_-)  <->  (U_+, U_-),
// where phi is the electric potential, psi the magnetic flux function,
// u_s the density potentials and U_s = sum_t gamma[s][t] u_t the chemical
// self-potentials. Species index 0 is "+", 1 is "-".

namespace beams {

using SpeciesPair = std::array<SpeciesParams, 2>;
using FieldPair = std::array<double, 2>;

struct CouplingMatrix {
  double entry[2][2];
  double inverse[2][2];
  double determinant;  // = -(q+ q-)^2 (nu+ - nu-)^2 < 0
};

struct Potentials {
  double phi = 0.0;
  double psi = 0.0;
};

/// Any one pair of a FieldTriple determines the other two; see the
/// conversion operations below, which round-trip to machine precision.
struct FieldTriple {
  FieldPair u;  // density potentials
  FieldPair U;  // chemical self-potentials
  Potentials pot;
};

/// Throws DegenerateCoupling when nu+ == nu- (rank would drop below 2).
CouplingMatrix coupling_matrix(const SpeciesPair& sp);

FieldPair to_chemical(const FieldPair& u, const CouplingMatrix& g);
FieldPair to_density_potentials(const FieldPair& U, const CouplingMatrix& g);

Potentials to_potentials(const FieldPair& u, const SpeciesPair& sp);
/// Inverse of to_potentials; exists iff nu+ != nu-.
FieldPair from_potentials(const Potentials& p, const SpeciesPair& sp);

FieldTriple make_field_triple(const FieldPair& u, const SpeciesPair& sp);

/// Total current I = sum_s q_s nu_s N_s and line charge Q = sum_s q_s N_s
/// (c = 1).
double total_current(const SpeciesPair& sp);
double total_charge(const SpeciesPair& sp);

/// kappa[s][t] = beta_s gamma[s][t] N_t. Non-symmetric in general; rows
/// sum to beta_s q_s (nu_s I - Q), which equals 2 for both species exactly
/// in the conformal case.
std::array<std::array<double, 2>, 2> kappa_matrix(const SpeciesPair& sp);

/// (beta_s q_s (nu_s I - Q) - 2) for s = +, -. Zero pair iff conformal.
FieldPair conformal_residual(const SpeciesPair& sp);

/// Solves the conformal conditions, linear in (N+, N-), for the line
/// densities; ignores the line_density fields of the inputs. Throws
/// DegenerateCoupling if the system is singular (nu+ == nu-) and
/// NoPositiveSolution if a component is nonpositive.
FieldPair solve_conformal_line_densities(const SpeciesPair& sp);

}  // namespace beams

#endif
