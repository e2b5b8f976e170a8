// Acceptance suite: ten criteria, one pass/fail line each. Exits nonzero
// if any criterion fails. Tolerances are pinned in-line; where a check
// needs a solver product, the product is built here with default options
// so the whole run is reproducible from scratch.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "beams/analytic.hpp"
#include "beams/coupling.hpp"
#include "beams/diagnostics.hpp"
#include "beams/planar.hpp"
#include "beams/quadrature.hpp"
#include "beams/radial.hpp"
#include "beams/rearrangement.hpp"
#include "beams/special_functions.hpp"
#include "beams/species.hpp"

using namespace beams;

namespace {

constexpr double kPi = 3.14159265358979323846;

int failures = 0;

void criterion(int n, const char* name, bool ok, double value,
               double limit) {
  std::printf("criterion %2d  %-34s  %s  (value %.3e, limit %.0e)\n", n,
              name, ok ? "PASS" : "FAIL", value, limit);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       t0)
      .count();
}

SpeciesPair conformal_pair() {
  SpeciesPair sp;
  sp[0] = {1.0, 1.0, 1.0, 0.5, 1.0};
  sp[1] = {-1.0, 1.0, 1.0, -0.5, 1.0};
  const FieldPair N = solve_conformal_line_densities(sp);
  sp[0].line_density = N[0];
  sp[1].line_density = N[1];
  return sp;
}

SpeciesPair nonconformal_pair() {
  SpeciesPair sp;
  sp[0] = {1.0, 1.0, 1.0, 0.6, 1.0};
  sp[1] = {-1.0, 1.0, 0.8, -0.4, 1.0};
  const FieldPair N = solve_conformal_line_densities(sp);
  sp[0].line_density = N[0];
  sp[1].line_density = N[1];
  SpeciesDensity g0(Model::bennett, sp[0]), g1(Model::bennett, sp[1]);
  std::array<double, 2> cw = {g0.inverse_density(N[0] / kPi),
                              g1.inverse_density(N[1] / kPi)};
  // small transverse offset: the confined non-conformal family is a
  // narrow arc; 3e-4 gives tail exponents near (3.5, 4.6)
  cw[0] += 3e-4 / sp[0].beta();
  cw[1] -= 3e-4 / sp[1].beta();
  const RadialProfile fwd = integrate_profile(Model::bennett, sp, cw);
  sp[0].line_density = fwd.line_density[0];
  sp[1].line_density = fwd.line_density[1];
  return sp;
}

// consistent Thomas-Fermi targets at moderate central fugacity
SpeciesPair tf_pair(std::array<double, 2>* central_out = nullptr) {
  SpeciesPair sp = conformal_pair();
  std::array<double, 2> cw;
  for (int s = 0; s < 2; ++s)
    cw[s] = sp[s].min_energy() + std::log(0.5) / sp[s].beta();
  // fugacity 1/2 shrinks the realized densities below the confinement
  // threshold at these parameters; rescale the central data upward until
  // the realized configuration is well confined
  RadialProfile fwd = integrate_profile(Model::thomas_fermi, sp, cw);
  for (int tries = 0; tries < 40; ++tries) {
    SpeciesPair trial = sp;
    trial[0].line_density = fwd.line_density[0];
    trial[1].line_density = fwd.line_density[1];
    if (validate_confinement(trial).pass) break;
    for (int s = 0; s < 2; ++s) cw[s] += 0.5 / sp[s].beta();
    fwd = integrate_profile(Model::thomas_fermi, sp, cw);
  }
  sp[0].line_density = fwd.line_density[0];
  sp[1].line_density = fwd.line_density[1];
  if (central_out) *central_out = cw;
  return sp;
}

}  // namespace

int main() {
  const SpeciesPair conf = conformal_pair();

  // ---- 1: pinch reproduction ------------------------------------------
  auto t0 = std::chrono::steady_clock::now();
  const double k = 1.0;
  const RadialProfile pinch =
      solve_equilibrium_conformal(Model::bennett, conf, k);
  double worst1 = 0.0;
  for (std::size_t i = 0; i < pinch.r.size(); ++i) {
    if (pinch.r[i] > 10.0 / k) continue;
    const double q = 1.0 + k * k * pinch.r[i] * pinch.r[i];
    for (int s = 0; s < 2; ++s) {
      const double ref = conf[s].line_density * k * k / (kPi * q * q);
      worst1 = std::max(worst1, std::fabs(pinch.rho[s][i] / ref - 1.0));
    }
  }
  const double dt1 = seconds_since(t0);
  criterion(1, "pinch density reproduction", worst1 < 1e-5 && dt1 < 30.0,
            worst1, 1e-5);

  // ---- 2: Liouville residual of the pinch potential --------------------
  {
    const double h = 1e-3 / k;
    const int n = int(10.0 / (k * h)) + 1;
    std::vector<double> v(n), e2v(n);
    for (int i = 0; i < n; ++i) {
      v[i] = -std::log1p(k * k * (i * h) * (i * h));
      e2v[i] = std::exp(2.0 * v[i]);
    }
    // closed form: the plane integral of e^{2v} for the pinch is pi/k^2
    const auto res = liouville_residual_radial(v, h, kPi / (k * k));
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, std::fabs(r));
    criterion(2, "Liouville residual (radial grid)", worst < 1e-5, worst,
              1e-5);
  }

  // ---- 3: virial identity on three solves ------------------------------
  t0 = std::chrono::steady_clock::now();
  const SpeciesPair ncf = nonconformal_pair();
  const RadialProfile bennett_solve =
      solve_equilibrium(Model::bennett, ncf);
  const double dt3b = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const SpeciesPair tfp = tf_pair();
  const RadialProfile tf_solve = solve_equilibrium(Model::thomas_fermi, tfp);
  const double dt3c = seconds_since(t0);

  const double vr_a = std::fabs(virial_residual(pinch));
  const double vr_b = std::fabs(virial_residual(bennett_solve));
  const double vr_c = std::fabs(virial_residual(tf_solve));
  const double worst3 = std::max({vr_a, vr_b, vr_c});
  criterion(3, "virial identity (3 solves)",
            worst3 < 1e-6 && dt3b < 60.0 && dt3c < 60.0, worst3, 1e-6);

  // ---- 4: Bennett identity ---------------------------------------------
  {
    double worst_id = 0.0, worst_eq = 0.0, worst_m = 0.0;
    for (const RadialProfile* p : {&pinch, &bennett_solve}) {
      worst_id = std::max(worst_id, std::fabs(bennett_residual(*p)));
      worst_eq = std::max(worst_eq, std::fabs(bennett_residual(*p) -
                                              virial_residual(*p)));
      for (int s = 0; s < 2; ++s)
        worst_m = std::max(
            worst_m,
            std::fabs(p->mass[s] * p->species[s].beta() /
                          p->line_density[s] -
                      1.0));
    }
    criterion(4, "Bennett identity",
              worst_id < 1e-6 && worst_eq < 1e-10 && worst_m < 1e-8,
              std::max({worst_id, worst_eq * 1e4, worst_m * 1e2}), 1e-6);
  }

  // ---- 5: Thomas-Fermi strictness and the classical limit --------------
  {
    // strictness at moderate fugacity
    bool strict = true;
    for (int s = 0; s < 2; ++s)
      strict = strict && tf_solve.mass[s] * tfp[s].beta() >
                             tf_solve.line_density[s];

    // classical limit: central fugacity 1e-5 (same central data for both
    // models); the core scale grows like 1/sqrt(rho(0)), so r_max follows
    const double z = 1e-5;
    std::array<double, 2> cw;
    for (int s = 0; s < 2; ++s)
      cw[s] = conf[s].min_energy() + std::log(z) / conf[s].beta();
    SpeciesDensity gb0(Model::bennett, conf[0]);
    SpeciesDensity gb1(Model::bennett, conf[1]);
    const double rho0 = gb0.density(cw[0]);
    SolverOptions wide;
    wide.r_max = 1000.0 * std::sqrt(conf[0].line_density / (kPi * rho0));
    const RadialProfile tf_cl =
        integrate_profile(Model::thomas_fermi, conf, cw, wide);
    const RadialProfile bz_cl =
        integrate_profile(Model::bennett, conf, cw, wide);

    double worst_m = 0.0;
    for (int s = 0; s < 2; ++s)
      worst_m = std::max(worst_m, tf_cl.mass[s] * conf[s].beta() /
                                          tf_cl.line_density[s] -
                                      1.0);
    const CouplingMatrix gam = coupling_matrix(conf);
    const SpeciesDensity* gb[2] = {&gb0, &gb1};
    double worst_rho = 0.0;
    for (std::size_t i = 0; i < tf_cl.r.size(); i += 3)
      for (int s = 0; s < 2; ++s) {
        const double w = cw[s] +
                         gam.entry[s][0] * eval_u(bz_cl, 0, tf_cl.r[i]) +
                         gam.entry[s][1] * eval_u(bz_cl, 1, tf_cl.r[i]);
        worst_rho = std::max(
            worst_rho, std::fabs(tf_cl.rho[s][i] / gb[s]->density(w) - 1.0));
      }
    criterion(5, "TF strictness / classical limit",
              strict && worst_m > 0.0 && worst_m <= 1e-4 &&
                  worst_rho <= 1e-3,
              std::max(worst_m * 10.0, worst_rho), 1e-3);
  }

  // ---- 6: asymptote and tail-exponent law ------------------------------
  {
    double worst_asym = 0.0, worst_alpha = 0.0;
    for (const RadialProfile* p : {&pinch, &bennett_solve, &tf_solve}) {
      const CouplingMatrix g = coupling_matrix(p->species);
      for (int s = 0; s < 2; ++s) {
        worst_asym = std::max(worst_asym, p->asymptote_error[s]);
        const double alpha_pred =
            2.0 * p->species[s].beta() *
            (g.entry[s][0] * p->line_density[0] +
             g.entry[s][1] * p->line_density[1]);
        worst_alpha =
            std::max(worst_alpha,
                     std::fabs(p->density_tail[s].exponent / alpha_pred -
                               1.0));
      }
    }
    double pinch_alpha_err = 0.0;
    for (int s = 0; s < 2; ++s)
      pinch_alpha_err = std::max(
          pinch_alpha_err, std::fabs(pinch.density_tail[s].exponent - 4.0));
    criterion(6, "asymptote and tail exponents",
              worst_asym < 1e-2 && worst_alpha < 0.02 &&
                  pinch_alpha_err < 0.02,
              std::max({worst_asym, worst_alpha, pinch_alpha_err}), 2e-2);
  }

  // ---- 7: radialization on the disk ------------------------------------
  {
    t0 = std::chrono::steady_clock::now();
    const int n = 257;
    // kR = 2: the anisotropic 5-point truncation error at the core scales
    // like (kh)^2 and must sit below the 1e-3 match threshold
    const double R = 2.0;
    std::array<std::function<double(double)>, 2> boundary;
    std::array<PlanarField, 2> init;
    std::array<double, 2> target;
    for (int s = 0; s < 2; ++s) {
      boundary[s] = [&pinch, s](double r) { return eval_u(pinch, s, r); };
      init[s] = make_disk_field(n, R);
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const double x = init[s].coord(ix), y = init[s].coord(iy);
          const double r = std::hypot(x, y);
          double v = eval_u(pinch, s, r);
          if (r > 0.0 && r < R)  // 20% l=2 perturbation, zero on boundary
            v += 0.2 * std::fabs(v) * ((x * x - y * y) / (r * r)) *
                 (1.0 - r / R);
          init[s].at(ix, iy) = v;
        }
      target[s] = conf[s].line_density * R * R / (1.0 + R * R);
    }
    const PlanarSolution sol = solve_planar(Model::bennett, conf, n, R,
                                            boundary, target, init, {});
    double var = 0.0, mismatch = 0.0;
    const PinchParams pin{k, 0.0, 0.0, 0.0};
    for (int s = 0; s < 2; ++s) {
      var = std::max(var, angular_variation(sol.rho[s]));
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const double r = std::hypot(sol.rho[s].coord(ix),
                                      sol.rho[s].coord(iy));
          if (r >= R - 3.0 * sol.rho[s].h) continue;
          const double ref =
              pinch_density_radial(pin, conf[s].line_density, r);
          mismatch = std::max(
              mismatch, std::fabs(sol.rho[s].at(ix, iy) / ref - 1.0));
        }
    }
    const double dt7 = seconds_since(t0);
    criterion(7, "radialization experiment",
              var < 1e-3 && mismatch < 1e-3 && dt7 < 300.0,
              std::max(var, mismatch), 1e-3);
    std::printf("              (sweeps %d, %.1f s, angular %.2e, "
                "radial mismatch %.2e)\n",
                sol.iterations, dt7, var, mismatch);
  }

  // ---- 8: isoperimetric deficit ----------------------------------------
  {
    double worst = 0.0;
    for (const RadialProfile* p : {&pinch, &bennett_solve, &tf_solve}) {
      const double sumM = p->mass[0] + p->mass[1];
      worst = std::max(worst,
                       std::fabs(isoperimetric_deficit(*p)) / sumM);
    }
    criterion(8, "isoperimetric deficit", worst < 1e-5, worst, 1e-5);
  }

  // ---- 9: rearrangement property suite ----------------------------------
  {
    const int n = 97;
    PlanarField f = make_disk_field(n, 4.0);
    std::mt19937 rng(0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        if (f.in_disk(ix, iy)) f.at(ix, iy) = uni(rng);
    const PlanarField r = decreasing_rearrangement(f);

    const double ring = 2.0 * kPi * f.radius * f.h + 4.0 * f.h * f.h;
    double worst_eq = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double xi = (i + 0.5) / 64.0;
      worst_eq = std::max(
          worst_eq, std::fabs(level_measure(f, xi) - level_measure(r, xi)));
    }
    const double mass_err =
        std::fabs(disk_integral(r) / disk_integral(f) - 1.0);
    const bool idem = decreasing_rearrangement(r).values == r.values;

    PlanarField pf = make_disk_field(129, 6.0);
    const PinchParams pin{1.0, 0.0, 0.0, 0.0};
    for (int iy = 0; iy < 129; ++iy)
      for (int ix = 0; ix < 129; ++ix)
        if (pf.in_disk(ix, iy))
          pf.at(ix, iy) =
              pinch_density(pin, 1.0, pf.coord(ix), pf.coord(iy));
    const double floor = 1e-6;  // grid floor for a strictly radial field
    const double asym = asymmetry_index(pf);
    criterion(9, "rearrangement suite",
              worst_eq < ring && mass_err < 1e-12 && idem && asym < floor,
              std::max({worst_eq / ring, mass_err * 1e6, asym / floor}),
              1.0);
  }

  // ---- 10: species-physics micro-suite ----------------------------------
  {
    SpeciesParams s{1.0, 1.0, 1.0, 0.5, 2.0};
    const double beta = s.beta();
    // g' = G by central differences
    double worst_fd = 0.0;
    for (double w : {-0.5, 0.8}) {
      const double h = 1e-4;
      const double fd = (primitive(Model::thomas_fermi, s, w + h) -
                         primitive(Model::thomas_fermi, s, w - h)) /
                        (2 * h);
      worst_fd = std::max(
          worst_fd,
          std::fabs(fd / density(Model::thomas_fermi, s, w) - 1.0));
    }
    // Phi(0) = pi^2/12
    const double phi0_err =
        std::fabs(softplus_primitive(0.0) - kPi * kPi / 12.0);
    // Boltzmann fugacity scaling exact via the closed form
    const SpeciesDensity gb(Model::bennett, s);
    const double scale_err = std::fabs(
        gb.density(1.3) / (std::exp(beta * 0.9) * gb.density(0.4)) - 1.0);
    // F(A, b) against the brute-force trapezoid
    double kern_err = 0.0;
    for (auto [A, b] : {std::pair{1.0, 2.0}, {-3.0, 0.7}, {0.2, 5.0}}) {
      const int N = 1000000;
      double acc = 0.0;
      const double hh = 2.0 / N;
      auto fm = [&](double mu) {
        return 1.0 / (1.0 + std::exp(-(A + b * mu)));
      };
      for (int i = 1; i < N; ++i) acc += fm(-1.0 + i * hh);
      acc = hh * (acc + 0.5 * (fm(-1.0) + fm(1.0)));
      kern_err =
          std::max(kern_err, std::fabs(fermi_angular_kernel(A, b) - acc));
    }
    criterion(10, "species micro-suite",
              worst_fd < 1e-6 && phi0_err < 1e-12 && scale_err < 1e-13 &&
                  kern_err < 1e-10,
              std::max({worst_fd, phi0_err, scale_err, kern_err}), 1e-6);
  }

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED"
                                    : "SOME CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
