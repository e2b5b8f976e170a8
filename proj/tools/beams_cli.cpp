// Command-line front end: solve-radial, solve-planar, pinch, verify,
// rearrange, limit-check. Every command reads a `section.key = value`
// config, writes bit-stable CSV/JSON into --out, and (with --verify)
// exits nonzero if any identity residual exceeds its acceptance threshold.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beams/analytic.hpp"
#include "beams/config.hpp"
#include "beams/diagnostics.hpp"
#include "beams/errors.hpp"
#include "beams/io.hpp"
#include "beams/planar.hpp"
#include "beams/radial.hpp"
#include "beams/rearrangement.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  double rmax = 0.0;    // 0 = keep config value
  int grid = 0;         // 0 = keep config value
  double tol = 0.0;     // 0 = keep config value
  bool verify = false;
  unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_config = true) {
  auto* c = cmd->add_option("--config", a.config_path, "config file path");
  if (needs_config) c->required();
  cmd->add_option("--out", a.out_dir, "output directory");
  cmd->add_option("--rmax", a.rmax, "override solver.r_max / disk radius");
  cmd->add_option("--grid", a.grid, "override planar grid size");
  cmd->add_option("--tol", a.tol, "override Newton / Picard tolerance");
  cmd->add_flag("--verify", a.verify,
                "exit nonzero if any residual exceeds its threshold");
  cmd->add_option("--seed", a.seed, "RNG seed for generated test fields");
}

beams::BeamConfig load(const CommonArgs& a, bool rmax_is_disk = false) {
  std::error_code ec;
  std::filesystem::create_directories(a.out_dir, ec);
  if (ec)
    throw beams::IoError("cannot create output directory '" + a.out_dir +
                         "': " + ec.message());
  beams::BeamConfig cfg = beams::load_config(a.config_path);
  if (a.rmax > 0.0) {
    if (rmax_is_disk && cfg.planar)
      cfg.planar->radius = a.rmax;
    else
      cfg.solver.r_max = a.rmax;
  }
  if (a.tol > 0.0) cfg.solver.newton_tol = a.tol;
  if (a.grid > 0 && cfg.planar) cfg.planar->grid = a.grid;
  for (const auto& w : cfg.warnings)
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  return cfg;
}

// residual thresholds used by --verify (the acceptance values)
int verify_report(const beams::DiagnosticsReport& rep,
                  const beams::RadialProfile& prof) {
  int bad = 0;
  auto check = [&](const char* what, double value, double limit) {
    const bool ok = std::fabs(value) < limit;
    std::printf("%-24s % .3e  (limit %.0e)  %s\n", what, value, limit,
                ok ? "ok" : "FAIL");
    if (!ok) ++bad;
  };
  check("virial_residual", rep.virial_residual, 1e-6);
  if (rep.model == beams::Model::bennett)
    check("bennett_residual", rep.bennett_residual, 1e-6);
  check("deficit / sum(M)", rep.isoperimetric_deficit / rep.J, 1e-5);
  for (int s = 0; s < 2; ++s)
    check(s ? "asymptote error (-)" : "asymptote error (+)",
          rep.asymptote_error[s], 1e-2);
  const beams::CouplingMatrix g = beams::coupling_matrix(prof.species);
  for (int s = 0; s < 2; ++s) {
    const double alpha_pred =
        2.0 * prof.species[s].beta() *
        (g.entry[s][0] * prof.line_density[0] +
         g.entry[s][1] * prof.line_density[1]);
    check(s ? "tail exponent (-)" : "tail exponent (+)",
          prof.density_tail[s].exponent / alpha_pred - 1.0, 0.02);
  }
  return bad;
}

beams::RadialProfile solve_from(const beams::BeamConfig& cfg,
                                double pinch_k) {
  if (cfg.conformal && cfg.model == beams::Model::bennett) {
    std::fprintf(stderr,
                 "conformal configuration: constructing the pinch family "
                 "at k = %g\n", pinch_k);
    return beams::solve_equilibrium_conformal(cfg.model, cfg.species,
                                              pinch_k, cfg.solver);
  }
  return beams::solve_equilibrium(cfg.model, cfg.species, cfg.solver);
}

int cmd_solve_radial(const CommonArgs& a, double pinch_k) {
  const beams::BeamConfig cfg = load(a);
  const beams::RadialProfile prof = solve_from(cfg, pinch_k);
  const beams::DiagnosticsReport rep = beams::build_report(prof);
  beams::emit_profile(prof, a.out_dir + "/profile.csv");
  beams::emit_report(rep, a.out_dir + "/report.json");
  std::printf("N~ = (%.12g, %.12g), %zu grid nodes\n", prof.line_density[0],
              prof.line_density[1], prof.r.size());
  const int bad = a.verify ? verify_report(rep, prof) : 0;
  return bad ? 1 : 0;
}

int cmd_pinch(const CommonArgs& a, double pinch_k) {
  const beams::BeamConfig cfg = load(a);
  const beams::RadialProfile prof = beams::solve_equilibrium_conformal(
      cfg.model, cfg.species, pinch_k, cfg.solver);
  const beams::DiagnosticsReport rep = beams::build_report(prof);
  beams::emit_profile(prof, a.out_dir + "/profile.csv");
  beams::emit_report(rep, a.out_dir + "/report.json");
  std::printf("pinch at k = %g: rho_+(0) = %.12g, alpha = (%.4f, %.4f)\n",
              pinch_k, prof.rho[0][0], prof.density_tail[0].exponent,
              prof.density_tail[1].exponent);
  const int bad = a.verify ? verify_report(rep, prof) : 0;
  return bad ? 1 : 0;
}

int cmd_verify(const CommonArgs& a, double pinch_k) {
  const beams::BeamConfig cfg = load(a);
  const beams::RadialProfile prof = solve_from(cfg, pinch_k);
  const beams::DiagnosticsReport rep = beams::build_report(prof);
  beams::emit_report(rep, a.out_dir + "/report.json");
  return verify_report(rep, prof) ? 1 : 0;
}

int cmd_solve_planar(const CommonArgs& a, double perturb) {
  beams::BeamConfig cfg = load(a, /*rmax_is_disk=*/true);
  if (!cfg.planar)
    throw beams::ValidationError("config has no [planar] section");
  const int n = cfg.planar->grid;
  const double R = cfg.planar->radius;
  if (a.tol > 0.0) cfg.planar->options.tol = a.tol;

  const beams::RadialProfile radial = solve_from(cfg, 1.0);

  std::array<std::function<double(double)>, 2> boundary;
  std::array<beams::PlanarField, 2> init;
  std::array<double, 2> target;
  for (int s = 0; s < 2; ++s) {
    boundary[s] = [&radial, s](double r) {
      return beams::eval_u(radial, s, r);
    };
    init[s] = beams::make_disk_field(n, R);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double x = init[s].coord(ix), y = init[s].coord(iy);
        const double r = std::hypot(x, y);
        double v = beams::eval_u(radial, s, r);
        if (perturb != 0.0 && r < R) {
          // quadrupole (l = 2) perturbation, vanishing on the boundary
          const double c2 = (r > 0) ? (x * x - y * y) / (r * r) : 0.0;
          v += perturb * std::fabs(v) * c2 * (1.0 - r / R);
        }
        init[s].at(ix, iy) = v;
      }
    // renormalization target: particles inside the disk only. The ODE
    // grid is adaptive, so interpolate the inner line density at exactly
    // r = R (cubic Hermite; the integrand 2 pi r rho is known at nodes).
    std::size_t i = 0;
    while (i + 2 < radial.r.size() && radial.r[i + 1] < R) ++i;
    const double r0 = radial.r[i], r1 = radial.r[i + 1];
    const double hseg = r1 - r0;
    const double t = std::clamp((R - r0) / hseg, 0.0, 1.0);
    const double L0 = radial.line_density_inner[s][i];
    const double L1 = radial.line_density_inner[s][i + 1];
    const double d0 = 2.0 * kPi * r0 * radial.rho[s][i];
    const double d1 = 2.0 * kPi * r1 * radial.rho[s][i + 1];
    const double t2 = t * t, t3 = t2 * t;
    target[s] = (2 * t3 - 3 * t2 + 1) * L0 + (t3 - 2 * t2 + t) * hseg * d0 +
                (-2 * t3 + 3 * t2) * L1 + (t3 - t2) * hseg * d1;
  }

  const beams::PlanarSolution sol = beams::solve_planar(
      cfg.model, cfg.species, n, R, boundary, target, init,
      cfg.planar->options);

  double var = 0.0, mismatch = 0.0;
  for (int s = 0; s < 2; ++s)
    var = std::max(var, beams::angular_variation(sol.rho[s]));
  // compare against the radial solution away from the mask edge
  const beams::SpeciesDensity gs0(cfg.model, cfg.species[0]);
  const beams::SpeciesDensity gs1(cfg.model, cfg.species[1]);
  const beams::SpeciesDensity* gs[2] = {&gs0, &gs1};
  const beams::CouplingMatrix gam = beams::coupling_matrix(cfg.species);
  for (int s = 0; s < 2; ++s)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double x = sol.rho[s].coord(ix), y = sol.rho[s].coord(iy);
        const double r = std::hypot(x, y);
        if (r >= R - 3.0 * sol.rho[s].h) continue;
        const double w = radial.central_w[s] +
                         gam.entry[s][0] * beams::eval_u(radial, 0, r) +
                         gam.entry[s][1] * beams::eval_u(radial, 1, r);
        const double ref = gs[s]->density(w);
        mismatch = std::max(mismatch,
                            std::fabs(sol.rho[s].at(ix, iy) / ref - 1.0));
      }

  std::printf("planar: %d sweeps, update %.3e, angular variation %.3e, "
              "radial mismatch %.3e\n",
              sol.iterations, sol.final_update_norm, var, mismatch);
  if (a.verify && (var > 1e-3 || mismatch > 1e-3)) return 1;
  return 0;
}

int cmd_rearrange(const CommonArgs& a, int grid, double radius,
                  double noise) {
  beams::PlanarField f = beams::make_disk_field(grid, radius);
  const beams::PinchParams pin{1.0, 0.0, 0.0, 0.0};
  std::mt19937 rng(a.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int iy = 0; iy < grid; ++iy)
    for (int ix = 0; ix < grid; ++ix) {
      if (!f.in_disk(ix, iy)) continue;
      double v = beams::pinch_density(pin, 1.0, f.coord(ix), f.coord(iy));
      if (noise != 0.0) v *= 1.0 + noise * uni(rng);
      f.at(ix, iy) = std::max(v, 0.0);
    }
  const double before = beams::asymmetry_index(f);
  const beams::PlanarField g = beams::decreasing_rearrangement(f);
  const double after = beams::asymmetry_index(g);
  const double mass_err =
      std::fabs(beams::disk_integral(g) / beams::disk_integral(f) - 1.0);
  std::printf("asymmetry before %.3e after %.3e, mass error %.3e\n",
              before, after, mass_err);
  if (a.verify && (mass_err > 1e-12 || after > before + 1e-15)) return 1;
  return 0;
}

int cmd_limit_check(const CommonArgs& a) {
  const beams::BeamConfig cfg = load(a);
  std::printf("fugacity   max|rho_TF/rho_B - 1|   max(M beta/N - 1)\n");
  int bad = 0;
  for (double z : {1e-2, 1e-3, 1e-4, 1e-5}) {
    std::array<double, 2> cw;
    for (int s = 0; s < 2; ++s)
      cw[s] = cfg.species[s].min_energy() +
              std::log(z) / cfg.species[s].beta();
    const beams::RadialProfile tf = beams::integrate_profile(
        beams::Model::thomas_fermi, cfg.species, cw, cfg.solver);
    const beams::RadialProfile bz = beams::integrate_profile(
        beams::Model::bennett, cfg.species, cw, cfg.solver);
    double drho = 0.0;
    // compare densities on the TF grid via the Bennett closed form
    const beams::SpeciesDensity gb0(beams::Model::bennett, cfg.species[0]);
    const beams::SpeciesDensity gb1(beams::Model::bennett, cfg.species[1]);
    const beams::SpeciesDensity* gb[2] = {&gb0, &gb1};
    const beams::CouplingMatrix gam = beams::coupling_matrix(cfg.species);
    for (std::size_t i = 0; i < tf.r.size(); i += 5)
      for (int s = 0; s < 2; ++s) {
        const double w = cw[s] +
                         gam.entry[s][0] * beams::eval_u(bz, 0, tf.r[i]) +
                         gam.entry[s][1] * beams::eval_u(bz, 1, tf.r[i]);
        const double ref = gb[s]->density(w);
        drho = std::max(drho, std::fabs(tf.rho[s][i] / ref - 1.0));
      }
    double dm = 0.0;
    for (int s = 0; s < 2; ++s)
      dm = std::max(dm, tf.mass[s] * cfg.species[s].beta() /
                            tf.line_density[s] - 1.0);
    std::printf("%8.0e   %.6e           %.6e\n", z, drho, dm);
    if (dm <= 0.0) ++bad;  // TF strictness must hold at every fugacity
    if (z <= 1e-5 && (drho > 1e-3 || dm > 1e-4)) ++bad;
  }
  return (a.verify && bad) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-species relativistic beam equilibria"};
  app.require_subcommand(1);

  CommonArgs a;
  double pinch_k = 1.0;
  double perturb = 0.0;
  int re_grid = 129;
  double re_radius = 8.0;
  double re_noise = 0.0;

  auto* sr = app.add_subcommand("solve-radial",
                                "inverse-mode radial equilibrium");
  add_common(sr, a);
  sr->add_option("--k", pinch_k, "pinch scale for conformal configs");

  auto* pi = app.add_subcommand("pinch", "conformal pinch construction");
  add_common(pi, a);
  pi->add_option("--k", pinch_k, "pinch scale");

  auto* ve = app.add_subcommand("verify", "solve and run identity suite");
  add_common(ve, a);
  ve->add_option("--k", pinch_k, "pinch scale for conformal configs");

  auto* sp = app.add_subcommand("solve-planar",
                                "disk solve with radial boundary trace");
  add_common(sp, a);
  sp->add_option("--perturb", perturb,
                 "relative amplitude of an l=2 initial perturbation");

  auto* re = app.add_subcommand("rearrange",
                                "rearrangement demo on a pinch field");
  add_common(re, a, /*needs_config=*/false);
  re->add_option("--re-grid", re_grid, "field grid nodes per side");
  re->add_option("--re-radius", re_radius, "field disk radius");
  re->add_option("--noise", re_noise, "relative seeded noise amplitude");

  auto* lc = app.add_subcommand("limit-check",
                                "Thomas-Fermi -> Bennett fugacity sweep");
  add_common(lc, a);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sr->parsed()) return cmd_solve_radial(a, pinch_k);
    if (pi->parsed()) return cmd_pinch(a, pinch_k);
    if (ve->parsed()) return cmd_verify(a, pinch_k);
    if (sp->parsed()) return cmd_solve_planar(a, perturb);
    if (re->parsed()) return cmd_rearrange(a, re_grid, re_radius, re_noise);
    if (lc->parsed()) return cmd_limit_check(a);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
