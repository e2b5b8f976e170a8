#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "beams/coupling.hpp"
#include "beams/errors.hpp"
#include "doctest.h"

using namespace beams;

namespace {

SpeciesPair pair_pm(double qp, double qm, double nup, double num,
                    double Tp = 1.0, double Tm = 1.0, double Np = 2.0,
                    double Nm = 3.0) {
  SpeciesPair sp;
  sp[0] = {qp, 1.0, Tp, nup, Np};
  sp[1] = {qm, 1.0, Tm, num, Nm};
  return sp;
}

}  // namespace

TEST_CASE("coupling matrix closed forms") {
  const CouplingMatrix g = coupling_matrix(pair_pm(1.0, -1.0, 0.5, -0.5));
  CHECK(g.entry[0][0] == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(g.entry[1][1] == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(g.entry[0][1] == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(g.entry[1][0] == g.entry[0][1]);
  CHECK(g.determinant == doctest::Approx(-1.0).epsilon(1e-14));

  const CouplingMatrix g2 = coupling_matrix(pair_pm(2.0, -1.0, 0.9, -0.9));
  CHECK(g2.determinant == doctest::Approx(-12.96).epsilon(1e-14));

  CHECK_THROWS_AS(coupling_matrix(pair_pm(1.0, -1.0, 0.3, 0.3)),
                  DegenerateCoupling);
}

TEST_CASE("inverse and representation round trips") {
  const SpeciesPair sp = pair_pm(1.3, -0.8, 0.6, -0.2, 1.1, 0.7);
  const CouplingMatrix g = coupling_matrix(sp);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double id = 0.0;
      for (int k = 0; k < 2; ++k) id += g.entry[i][k] * g.inverse[k][j];
      CHECK(id == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
    }

  std::mt19937 rng(0);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const FieldPair u = {uni(rng), uni(rng)};
    const FieldPair back = to_density_potentials(to_chemical(u, g), g);
    CHECK(std::fabs(back[0] - u[0]) < 1e-12);
    CHECK(std::fabs(back[1] - u[1]) < 1e-12);
    const FieldPair back2 = from_potentials(to_potentials(u, sp), sp);
    CHECK(std::fabs(back2[0] - u[0]) < 1e-12);
    CHECK(std::fabs(back2[1] - u[1]) < 1e-12);
  }

  // matrix-row spot check for the symmetric configuration
  const CouplingMatrix gs = coupling_matrix(pair_pm(1.0, -1.0, 0.5, -0.5));
  const FieldPair U = to_chemical({1.0, 0.0}, gs);
  CHECK(U[0] == doctest::Approx(-0.75));
  CHECK(U[1] == doctest::Approx(1.25));
  const FieldPair z = to_chemical({0.0, 0.0}, gs);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
}

TEST_CASE("field triple consistency") {
  const SpeciesPair sp = pair_pm(1.0, -1.0, 0.5, -0.5);
  const FieldTriple ft = make_field_triple({0.7, -0.3}, sp);
  // phi = sum q_s u_s, psi = sum nu_s q_s u_s
  CHECK(ft.pot.phi == doctest::Approx(0.7 + 0.3));
  CHECK(ft.pot.psi == doctest::Approx(0.5 * 0.7 + 0.5 * (-1) * (-0.3) *
                                      (-1)).epsilon(1e-14));
  // U_s = -q_s (phi - nu_s psi)
  for (int s = 0; s < 2; ++s)
    CHECK(ft.U[s] ==
          doctest::Approx(-sp[s].charge *
                          (ft.pot.phi - sp[s].drift * ft.pot.psi))
              .epsilon(1e-13));
}

TEST_CASE("kappa matrix and confinement rows") {
  const SpeciesPair sp = pair_pm(1.0, -1.0, 0.6, -0.4, 1.0, 0.8, 2.0, 3.0);
  const auto k = kappa_matrix(sp);
  const double I = total_current(sp);
  const double Q = total_charge(sp);
  for (int s = 0; s < 2; ++s)
    CHECK(k[s][0] + k[s][1] ==
          doctest::Approx(sp[s].beta() * sp[s].charge *
                          (sp[s].drift * I - Q))
              .epsilon(1e-12));
  // non-symmetric in general, diagonal negative / off-diagonal positive
  CHECK(k[0][1] != doctest::Approx(k[1][0]));
  CHECK(k[0][0] < 0.0);
  CHECK(k[1][1] < 0.0);
  CHECK(k[0][1] > 0.0);
  CHECK(k[1][0] > 0.0);
}

TEST_CASE("algebraic bridge: sum gamma N N = I^2 - Q^2") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> q(0.2, 3.0), nu(-0.95, 0.95),
      N(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double nup = nu(rng);
    double num = nu(rng);
    if (nup == num) num += 0.1;
    const SpeciesPair sp =
        pair_pm(q(rng), -q(rng), nup, num, 1.0, 1.0, N(rng), N(rng));
    const CouplingMatrix g = coupling_matrix(sp);
    double quad = 0.0;
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        quad += g.entry[s][t] * sp[s].line_density * sp[t].line_density;
    const double I = total_current(sp), Q = total_charge(sp);
    CHECK(quad == doctest::Approx(I * I - Q * Q).epsilon(1e-12));
  }
}

TEST_CASE("conformal line densities") {
  // symmetric case: q = (1,-1), nu = (v,-v), equal T -> N = 1/(beta v^2)
  const double v = 0.5;
  SpeciesPair sp = pair_pm(1.0, -1.0, v, -v);
  const FieldPair N = solve_conformal_line_densities(sp);
  const double beta = sp[0].beta();
  CHECK(N[0] == doctest::Approx(1.0 / (beta * v * v)).epsilon(1e-12));
  CHECK(N[1] == doctest::Approx(N[0]).epsilon(1e-12));

  sp[0].line_density = N[0];
  sp[1].line_density = N[1];
  const FieldPair res = conformal_residual(sp);
  CHECK(std::fabs(res[0]) < 1e-12);
  CHECK(std::fabs(res[1]) < 1e-12);

  // asymmetric parameters still produce a consistent conformal pair
  SpeciesPair sp2 = pair_pm(1.0, -1.0, 0.6, -0.4, 1.0, 0.8);
  const FieldPair N2 = solve_conformal_line_densities(sp2);
  CHECK(N2[0] > 0.0);
  CHECK(N2[1] > 0.0);
  sp2[0].line_density = N2[0];
  sp2[1].line_density = N2[1];
  const FieldPair res2 = conformal_residual(sp2);
  CHECK(std::fabs(res2[0]) < 1e-12);
  CHECK(std::fabs(res2[1]) < 1e-12);

  // residual is linear in N: a 1% bump in N_+ moves residual_+ by
  // beta_+ q_+ (nu_+ q_+ nu_+ - q_+) * 0.01 N_+
  SpeciesPair sp3 = sp2;
  sp3[0].line_density *= 1.01;
  const FieldPair res3 = conformal_residual(sp3);
  const double expected =
      sp2[0].beta() * sp2[0].charge *
      (sp2[0].drift * sp2[0].charge * sp2[0].drift - sp2[0].charge) *
      0.01 * sp2[0].line_density;
  CHECK(res3[0] - res2[0] == doctest::Approx(expected).epsilon(1e-10));

  CHECK_THROWS_AS(solve_conformal_line_densities(pair_pm(1, -1, 0.4, 0.4)),
                  DegenerateCoupling);
  // co-streaming opposite charges still confine each other
  const FieldPair nco = solve_conformal_line_densities(pair_pm(1, -1, 0.8, 0.6));
  CHECK(nco[0] > 0.0);
  CHECK(nco[1] > 0.0);
  // like charges make every coupling entry negative: no positive pair
  CHECK_THROWS_AS(solve_conformal_line_densities(pair_pm(1, 1, 0.5, -0.5)),
                  NoPositiveSolution);
}
