#include "beams/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "beams/errors.hpp"

namespace beams {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Dormand-Prince 5(4) coefficients
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = b1 - 5179.0 / 57600.0, e3 = b3 - 7571.0 / 16695.0,
                 e4 = b4 - 393.0 / 640.0, e5 = b5 + 92097.0 / 339200.0,
                 e6 = b6 - 187.0 / 2100.0, e7 = -1.0 / 40.0;

// state layout: y = [u+, u-, u+', u-', N+, N-, M+, M-]
struct OdeSystem {
  const SpeciesDensity* gs[2];
  double gamma[2][2];
  double mu[2];
  double beta[2];
  double w_cap[2];      // blow-up guard on the effective potential
  double density_cap;   // blow-up guard on the running line density

  void rhs(double r, const double y[8], double dy[8], double rho_out[2],
           double g_out[2]) const {
    for (int s = 0; s < 2; ++s) {
      const double w = mu[s] + gamma[s][0] * y[0] + gamma[s][1] * y[1];
      if (!(w < w_cap[s]))
        throw BlowUp(
            "effective potential increasing beyond the blow-up guard; "
            "central data are not confined");
      const double rho = gs[s]->density(w);
      const double g = gs[s]->primitive(w);
      if (!std::isfinite(rho) || !std::isfinite(g))
        throw BlowUp("non-finite density during radial integration");
      rho_out[s] = rho;
      g_out[s] = g;
      dy[s] = y[2 + s];
      dy[2 + s] = -y[2 + s] / r - 4.0 * kPi * rho;
      dy[4 + s] = 2.0 * kPi * r * rho;
      dy[6 + s] = 2.0 * kPi * r * g;
    }
  }

  double w_of(int s, const double y[8]) const {
    return mu[s] + gamma[s][0] * y[0] + gamma[s][1] * y[1];
  }
};

// Integrate outward and record every accepted node; tails are fitted
// afterwards by tail_extend.
RadialProfile integrate_with(Model model, const SpeciesPair& sp,
                             const std::array<SpeciesDensity, 2>& gs,
                             const std::array<double, 2>& central_w,
                             const SolverOptions& opts) {
  const CouplingMatrix gamma = coupling_matrix(sp);

  OdeSystem sys;
  for (int s = 0; s < 2; ++s) {
    sys.gs[s] = &gs[s];
    sys.mu[s] = central_w[s];
    sys.beta[s] = sp[s].beta();
    sys.w_cap[s] = central_w[s] + 50.0 / sys.beta[s];
    for (int t = 0; t < 2; ++t) sys.gamma[s][t] = gamma.entry[s][t];
  }
  sys.density_cap =
      1e6 * (sp[0].line_density + sp[1].line_density + 1.0);

  double rho0[2], g0[2];
  for (int s = 0; s < 2; ++s) {
    rho0[s] = gs[s].density(central_w[s]);
    g0[s] = gs[s].primitive(central_w[s]);
    if (!std::isfinite(rho0[s]) || !(rho0[s] > 0.0))
      throw BlowUp("central density not finite and positive");
  }

  // curvature length scale of the core: 1/L^2 ~ beta |gamma| 4 pi rho
  double inv_L2 = 0.0;
  for (int s = 0; s < 2; ++s) {
    double a = 0.0;
    for (int t = 0; t < 2; ++t)
      a += std::fabs(sys.gamma[s][t]) * 4.0 * kPi * rho0[t];
    inv_L2 = std::max(inv_L2, sys.beta[s] * a);
  }
  const double L = 1.0 / std::sqrt(inv_L2);

  RadialProfile prof;
  prof.model = model;
  prof.species = sp;
  prof.central_w = central_w;

  auto record = [&](double r, const double y[8], const double rho[2],
                    const double g[2]) {
    prof.r.push_back(r);
    for (int s = 0; s < 2; ++s) {
      prof.u[s].push_back(y[s]);
      prof.du[s].push_back(y[2 + s]);
      const double U = sys.gamma[s][0] * y[0] + sys.gamma[s][1] * y[1];
      prof.U[s].push_back(U);
      prof.w[s].push_back(central_w[s] + U);
      prof.rho[s].push_back(rho[s]);
      prof.g[s].push_back(g[s]);
      prof.line_density_inner[s].push_back(y[4 + s]);
      prof.mass_inner[s].push_back(y[6 + s]);
    }
  };

  // origin node, then a second-order series step to r0 that removes the
  // 1/r coordinate singularity: u_s = -pi rho_s(0) r^2 + O(r^4)
  {
    const double y0[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    record(0.0, y0, rho0, g0);
  }
  const double r0 = 1e-3 * L;
  double y[8];
  for (int s = 0; s < 2; ++s) {
    y[s] = -kPi * rho0[s] * r0 * r0;
    y[2 + s] = -2.0 * kPi * rho0[s] * r0;
    y[4 + s] = kPi * r0 * r0 * rho0[s];
    y[6 + s] = kPi * r0 * r0 * g0[s];
  }
  double r = r0;
  double k1[8], rho_c[2], g_c[2];
  sys.rhs(r, y, k1, rho_c, g_c);
  record(r, y, rho_c, g_c);

  double h = 0.5 * r0;
  const double rtol = opts.ode_rel_tol, atol = opts.ode_abs_tol;
  long steps = 0;
  while (r < opts.r_max) {
    if (++steps > 2000000)
      throw NoConvergence("radial ODE exceeded the step limit");
    const double h_max = 0.1 * r + 0.05 * L;
    h = std::min({h, h_max, opts.r_max - r});
    if (h < 1e-14 * (r + 1.0))
      throw NoConvergence("radial ODE step size underflow");

    double k2[8], k3[8], k4[8], k5[8], k6[8], k7[8], yt[8], y5[8];
    double rd[2], gd[2];
    auto stage = [&](double c, const double* w1, double w1c,
                     const double* w2, double w2c, const double* w3,
                     double w3c, const double* w4, double w4c,
                     const double* w5, double w5c, double* k) {
      for (int i = 0; i < 8; ++i) {
        double acc = w1 ? w1c * w1[i] : 0.0;
        if (w2) acc += w2c * w2[i];
        if (w3) acc += w3c * w3[i];
        if (w4) acc += w4c * w4[i];
        if (w5) acc += w5c * w5[i];
        yt[i] = y[i] + h * acc;
      }
      sys.rhs(r + c * h, yt, k, rd, gd);
    };
    try {
      stage(a21, k1, a21, nullptr, 0, nullptr, 0, nullptr, 0, nullptr, 0,
            k2);
      stage(3.0 / 10.0, k1, a31, k2, a32, nullptr, 0, nullptr, 0, nullptr,
            0, k3);
      stage(4.0 / 5.0, k1, a41, k2, a42, k3, a43, nullptr, 0, nullptr, 0,
            k4);
      stage(8.0 / 9.0, k1, a51, k2, a52, k3, a53, k4, a54, nullptr, 0, k5);
      stage(1.0, k1, a61, k2, a62, k3, a63, k4, a64, k5, a65, k6);
      for (int i = 0; i < 8; ++i)
        y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                            b5 * k5[i] + b6 * k6[i]);
      sys.rhs(r + h, y5, k7, rho_c, g_c);
    } catch (const BlowUp&) {
      // a trial stage left the admissible region; retry with a smaller
      // step, and give up only when the step underflows
      if (h > 64.0 * 1e-14 * (r + 1.0)) {
        h *= 0.25;
        continue;
      }
      throw;
    }

    double err = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                            e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::fabs(y[i]),
                                               std::fabs(y5[i]));
      err = std::max(err, std::fabs(e) / sc);
    }

    if (err <= 1.0) {
      r += h;
      for (int i = 0; i < 8; ++i) y[i] = y5[i];
      for (int i = 0; i < 8; ++i) k1[i] = k7[i];  // FSAL
      record(r, y, rho_c, g_c);
      if (y[4] + y[5] > sys.density_cap)
        throw BlowUp("running line density diverging; central data are "
                     "not confined");
    }
    const double fac =
        std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
    h *= fac;
  }

  tail_extend(prof, opts);
  return prof;
}

std::array<SpeciesDensity, 2> make_evaluators(Model model,
                                              const SpeciesPair& sp) {
  return {SpeciesDensity(model, sp[0]), SpeciesDensity(model, sp[1])};
}

}  // namespace

void SolverOptions::validate() const {
  if (!(r_max > 0.0) || !(ode_rel_tol > 0.0) || !(ode_abs_tol > 0.0) ||
      !(newton_tol > 0.0) || max_newton_iter <= 0 || !(min_damping > 0.0) ||
      !(tail_window > 1.0) || !(confinement_margin > 0.0))
    throw ValidationError("solver options must be positive "
                          "(tail_window > 1)");
}

ConfinementReport validate_confinement(const SpeciesPair& sp,
                                       double margin) {
  const auto kappa = kappa_matrix(sp);
  ConfinementReport rep;
  rep.pass = true;
  std::ostringstream msg;
  const char* name[2] = {"+", "-"};
  for (int s = 0; s < 2; ++s) {
    rep.exponent[s] = kappa[s][0] + kappa[s][1];
    if (rep.exponent[s] < 1.0 + margin) {
      rep.pass = false;
      if (std::fabs(rep.exponent[s] - 1.0) < 1e-12) {
        msg << "species " << name[s]
            << " has marginal decay exponent e = 1 (density tail ~ r^-2, "
               "non-integrable truncation error); excluded by policy; ";
      } else {
        msg << "species " << name[s] << " unconfined: e = "
            << rep.exponent[s] << " < 1 + " << margin
            << " (power-law tail too shallow); ";
      }
    }
  }
  rep.message = rep.pass ? "confined: e_+ >= 1 + margin and e_- >= 1 + "
                           "margin"
                         : msg.str();
  return rep;
}

RadialProfile integrate_profile(Model model, const SpeciesPair& sp,
                                const std::array<double, 2>& central_w,
                                const SolverOptions& opts) {
  opts.validate();
  for (const auto& s : sp) s.validate();
  const auto gs = make_evaluators(model, sp);
  return integrate_with(model, sp, gs, central_w, opts);
}

std::array<PowerTail, 2> tail_extend(RadialProfile& prof,
                                     const SolverOptions& opts) {
  const double r_last = prof.r.back();
  const double r_cut = r_last / opts.tail_window;
  std::size_t first = prof.r.size();
  while (first > 0 && prof.r[first - 1] >= r_cut) --first;

  std::vector<double> rw(prof.r.begin() + first, prof.r.end());
  for (int s = 0; s < 2; ++s) {
    std::vector<double> fw(prof.rho[s].begin() + first, prof.rho[s].end());
    std::vector<double> gw(prof.g[s].begin() + first, prof.g[s].end());
    PowerTail rho_tail, g_tail;
    try {
      rho_tail = fit_power_tail(rw, fw);
      g_tail = fit_power_tail(rw, gw);
    } catch (const NonIntegrable& e) {
      throw TailNotAsymptotic(e.what());
    }
    if (rho_tail.max_log_misfit > 0.05)
      throw TailNotAsymptotic(
          "density tail is not a clean power law over the fit window; "
          "increase r_max");
    if (!(rho_tail.exponent > 2.05) || !(g_tail.exponent > 2.05))
      throw TailNotAsymptotic(
          "fitted tail exponent <= 2: tail integral divergent "
          "(unconfined or marginal configuration)");
    prof.density_tail[s] = rho_tail;
    prof.primitive_tail[s] = g_tail;
    prof.line_density[s] = prof.line_density_inner[s].back() +
                           rho_tail.plane_integral_beyond(r_last);
    prof.mass[s] = prof.mass_inner[s].back() +
                   g_tail.plane_integral_beyond(r_last);
  }
  for (int s = 0; s < 2; ++s)
    prof.asymptote_error[s] = std::fabs(
        r_last * prof.du[s].back() / (-2.0 * prof.line_density[s]) - 1.0);
  return prof.density_tail;
}

RadialProfile solve_equilibrium(Model model, const SpeciesPair& sp,
                                const SolverOptions& opts) {
  opts.validate();
  for (const auto& s : sp) s.validate();
  const ConfinementReport conf =
      validate_confinement(sp, opts.confinement_margin);
  if (!conf.pass) throw ValidationError(conf.message);

  const auto gs = make_evaluators(model, sp);

  // initial guess: central densities of a pinch at unit scale
  std::array<double, 2> c;
  if (opts.central_guess) {
    c = *opts.central_guess;
  } else {
    for (int s = 0; s < 2; ++s)
      c[s] = gs[s].inverse_density(sp[s].line_density / kPi);
  }

  if (model == Model::bennett) {
    // The Bennett map is scale invariant: shifting the central data along
    // the direction (2/beta_+, 2/beta_-) rescales the profile and leaves
    // (N~_+, N~_-) unchanged, so the 2x2 Newton Jacobian is exactly
    // singular.  The conformal case has to be constructed analytically;
    // otherwise only the density *ratio* is a free function of the
    // transverse direction, and matching it determines everything.
    const FieldPair res = conformal_residual(sp);
    if (std::fabs(res[0]) < 1e-8 && std::fabs(res[1]) < 1e-8)
      throw JacobianSingular(
          "conformal configuration: the Newton map is singular along the "
          "scaling direction; use solve_equilibrium_conformal");

    // Start from the conformal pinch central data when no guess is given:
    // the confined family is a narrow arc through the conformal point, and
    // central densities matching the raw targets usually sit outside it.
    if (!opts.central_guess) {
      try {
        const FieldPair nc = solve_conformal_line_densities(sp);
        for (int s = 0; s < 2; ++s)
          c[s] = gs[s].inverse_density(nc[s] / kPi);
      } catch (const NoPositiveSolution&) {
        // like charges: keep the target-based guess
      } catch (const DegenerateCoupling&) {
        // like charges or degenerate drifts: keep the target-based guess
      }
    }

    const double d[2] = {1.0 / sp[0].beta(), -1.0 / sp[1].beta()};
    const double target = std::log(sp[0].line_density / sp[1].line_density);
    auto ratio_gap = [&](double t) {
      const std::array<double, 2> ct = {c[0] + t * d[0], c[1] + t * d[1]};
      RadialProfile p = integrate_with(model, sp, gs, ct, opts);
      return std::make_pair(
          std::log(p.line_density[0] / p.line_density[1]) - target,
          std::move(p));
    };

    // The realized line densities are only piecewise smooth in the central
    // data: the set of nodes entering the tail fit changes discretely, which
    // puts a noise floor of order 1e-7 (relative) under any descent. A
    // stalled iteration below 100x the Newton tolerance is accepted.
    std::ostringstream trace;
    double t = 0.0;
    int slow = 0;
    auto [f, prof] = ratio_gap(t);
    for (int it = 0; it < opts.max_newton_iter; ++it) {
      if (std::fabs(f) < opts.newton_tol ||
          (slow >= 3 && std::fabs(f) < 100.0 * opts.newton_tol)) {
        // matched the ratio; scale invariance pins the magnitudes iff the
        // targets sit on the Bennett conic
        double mismatch = 0.0;
        for (int s = 0; s < 2; ++s)
          mismatch = std::max(
              mismatch, std::fabs(prof.line_density[s] / sp[s].line_density -
                                  1.0));
        if (mismatch > std::max(1e4 * opts.newton_tol, 1e-5))
          throw NoConvergence(
              "density ratio matched but magnitudes disagree: the targets "
              "violate the Bennett virial identity (no solution with these "
              "line densities exists)");
        return prof;
      }
      double dt = 1e-5 * (1.0 + std::fabs(t));
      double fp;
      try {
        auto [f1, p1] = ratio_gap(t + dt);
        fp = (f1 - f) / dt;
      } catch (const BlowUp&) {
        // forward point fell off the confined arc; difference backwards
        dt = -dt;
        auto [f1, p1] = ratio_gap(t + dt);
        fp = (f1 - f) / dt;
      }
      if (!(std::fabs(fp) > 0.0) || !std::isfinite(fp))
        throw JacobianSingular("flat density-ratio response in Newton");
      const double step = -f / fp;
      double lam = 1.0;
      bool accepted = false;
      const double f_before = std::fabs(f);
      while (lam >= opts.min_damping) {
        try {
          auto [ft, pt] = ratio_gap(t + lam * step);
          if (std::fabs(ft) < std::fabs(f)) {
            t += lam * step;
            f = ft;
            prof = std::move(pt);
            accepted = true;
            break;
          }
        } catch (const BlowUp&) {
        } catch (const TailNotAsymptotic&) {
        }
        lam *= 0.5;
      }
      slow = (!accepted || std::fabs(f) > 0.9 * f_before) ? slow + 1 : 0;
      trace << "iter " << it << ": t=" << t << " |f|=" << std::fabs(f)
            << (accepted ? "" : " (no step accepted)") << "; ";
      if (!accepted && std::fabs(f) >= 100.0 * opts.newton_tol)
        throw NoConvergence("Bennett ratio Newton stalled: " + trace.str());
    }
    if (std::fabs(f) < 100.0 * opts.newton_tol) {
      double mismatch = 0.0;
      for (int s = 0; s < 2; ++s)
        mismatch = std::max(mismatch,
                            std::fabs(prof.line_density[s] /
                                          sp[s].line_density - 1.0));
      if (mismatch <= std::max(1e4 * opts.newton_tol, 1e-5)) return prof;
    }
    throw NoConvergence("Bennett ratio Newton did not converge: " +
                        trace.str());
  }

  // Thomas-Fermi: plain damped 2x2 Newton on the central data
  auto residual = [&](const std::array<double, 2>& ct) {
    RadialProfile p = integrate_with(model, sp, gs, ct, opts);
    std::array<double, 2> f = {
        p.line_density[0] / sp[0].line_density - 1.0,
        p.line_density[1] / sp[1].line_density - 1.0};
    return std::make_pair(f, std::move(p));
  };
  auto norm2 = [](const std::array<double, 2>& f) {
    return std::sqrt(f[0] * f[0] + f[1] * f[1]);
  };

  // Same stall rule as the Bennett branch: the tail-fit window makes the
  // realized densities piecewise smooth in c, so descent bottoms out near
  // 1e-7 relative; accept a stalled iterate below 100x the tolerance.
  std::ostringstream trace;
  int slow = 0;
  auto [f, prof] = residual(c);

  // Near the classical limit the map c -> N~ degenerates: the Bennett
  // limit is scale invariant, so the residual goes flat along the scaling
  // direction and Newton crawls. If the density-based guess lands in that
  // regime, also try a moderate-degeneracy start (central fugacity 1/2),
  // where the line-density response to the central data is O(1), and keep
  // whichever starting point has the smaller residual.
  if (!opts.central_guess) {
    std::array<double, 2> c2;
    for (int s = 0; s < 2; ++s)
      c2[s] = std::max(
          c[s], sp[s].min_energy() + std::log(0.5) / sp[s].beta());
    if (c2 != c) {
      try {
        auto [f2, prof2] = residual(c2);
        if (norm2(f2) < norm2(f)) {
          c = c2;
          f = f2;
          prof = std::move(prof2);
        }
      } catch (const BlowUp&) {
      } catch (const TailNotAsymptotic&) {
      }
    }
  }
  for (int it = 0; it < opts.max_newton_iter; ++it) {
    const double fmax = std::max(std::fabs(f[0]), std::fabs(f[1]));
    if (fmax < opts.newton_tol ||
        (slow >= 3 && fmax < 100.0 * opts.newton_tol))
      return prof;

    double J[2][2];
    for (int t = 0; t < 2; ++t) {
      const double dw = 1e-5 / sp[t].beta();
      std::array<double, 2> cp = c;
      cp[t] += dw;
      auto [fp, pp] = residual(cp);
      J[0][t] = (fp[0] - f[0]) / dw;
      J[1][t] = (fp[1] - f[1]) / dw;
    }
    // condition number from the singular values of the 2x2 Jacobian
    const double g11 = J[0][0] * J[0][0] + J[1][0] * J[1][0];
    const double g22 = J[0][1] * J[0][1] + J[1][1] * J[1][1];
    const double g12 = J[0][0] * J[0][1] + J[1][0] * J[1][1];
    const double tr = g11 + g22;
    const double disc =
        std::sqrt(std::max(0.0, (g11 - g22) * (g11 - g22) + 4 * g12 * g12));
    const double smin2 = 0.5 * (tr - disc);
    if (!(smin2 > 0.0) || (tr + disc) / smin2 > 1e16)
      throw JacobianSingular(
          "inverse-mode Jacobian condition number exceeds 1e8 "
          "(degenerate line-density response)");
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const double step[2] = {(-f[0] * J[1][1] + f[1] * J[0][1]) / det,
                            (-f[1] * J[0][0] + f[0] * J[1][0]) / det};

    double lam = 1.0;
    bool accepted = false;
    const double f_before = norm2(f);
    while (lam >= opts.min_damping) {
      std::array<double, 2> ct = {c[0] + lam * step[0],
                                  c[1] + lam * step[1]};
      try {
        auto [ft, pt] = residual(ct);
        if (norm2(ft) < norm2(f)) {
          c = ct;
          f = ft;
          prof = std::move(pt);
          accepted = true;
          break;
        }
      } catch (const BlowUp&) {
      } catch (const TailNotAsymptotic&) {
      }
      lam *= 0.5;
    }
    slow = (!accepted || norm2(f) > 0.9 * f_before) ? slow + 1 : 0;
    trace << "iter " << it << ": c=(" << c[0] << "," << c[1]
          << ") |f|=" << norm2(f)
          << (accepted ? "" : " (no step accepted)") << "; ";
    if (!accepted &&
        std::max(std::fabs(f[0]), std::fabs(f[1])) >= 100.0 * opts.newton_tol)
      throw NoConvergence("Thomas-Fermi Newton stalled: " + trace.str());
  }
  if (std::max(std::fabs(f[0]), std::fabs(f[1])) < 100.0 * opts.newton_tol)
    return prof;
  throw NoConvergence("Thomas-Fermi Newton did not converge: " +
                      trace.str());
}

RadialProfile solve_equilibrium_conformal(Model model, const SpeciesPair& sp,
                                          double scale_k,
                                          const SolverOptions& opts) {
  opts.validate();
  for (const auto& s : sp) s.validate();
  if (!(scale_k > 0.0)) throw ValidationError("pinch scale k must be > 0");
  if (model != Model::bennett)
    throw NotConformal(
        "the conformal construction applies to the Bennett model only");
  const FieldPair res = conformal_residual(sp);
  if (!(std::fabs(res[0]) < 1e-8 && std::fabs(res[1]) < 1e-8))
    throw NotConformal("configuration is not conformal: beta_s q_s (nu_s I "
                       "- Q) != 2");

  const CouplingMatrix gamma = coupling_matrix(sp);
  const auto gs = make_evaluators(model, sp);
  const double k2 = scale_k * scale_k;
  const double N[2] = {sp[0].line_density, sp[1].line_density};

  RadialProfile prof;
  prof.model = model;
  prof.species = sp;
  for (int s = 0; s < 2; ++s)
    prof.central_w[s] = gs[s].inverse_density(N[s] * k2 / kPi);

  // logarithmic grid; the pinch is smooth so a fixed ratio suffices
  std::vector<double> grid;
  grid.push_back(0.0);
  for (double r = 1e-4 / scale_k; r < opts.r_max; r *= 1.02)
    grid.push_back(r);
  grid.push_back(opts.r_max);

  double worst = 0.0;
  for (double r : grid) {
    const double q = 1.0 + k2 * r * r;
    const double lq = std::log1p(k2 * r * r);
    prof.r.push_back(r);
    const double uval[2] = {-N[0] * lq, -N[1] * lq};
    for (int s = 0; s < 2; ++s) {
      prof.u[s].push_back(uval[s]);
      prof.du[s].push_back(-2.0 * N[s] * k2 * r / q);
      const double U =
          gamma.entry[s][0] * uval[0] + gamma.entry[s][1] * uval[1];
      prof.U[s].push_back(U);
      const double w = prof.central_w[s] + U;
      prof.w[s].push_back(w);
      const double rho = gs[s].density(w);
      prof.rho[s].push_back(rho);
      prof.g[s].push_back(gs[s].primitive(w));
      prof.line_density_inner[s].push_back(N[s] * k2 * r * r / q);
      prof.mass_inner[s].push_back(N[s] * k2 * r * r / q / sp[s].beta());
      // the constructed profile must reproduce the pinch density, which
      // is equivalent to the full system being solved
      const double pinch = N[s] * k2 / (kPi * q * q);
      worst = std::max(worst, std::fabs(rho / pinch - 1.0));
    }
  }
  if (worst > 1e-6)
    throw NotConformal(
        "constructed profile deviates from the pinch density; conformal "
        "conditions hold only approximately");

  tail_extend(prof, opts);
  return prof;
}

double eval_u(const RadialProfile& prof, int s, double r) {
  const auto& rg = prof.r;
  if (r <= 0.0) return prof.u[s][0];
  if (r >= rg.back())
    return prof.u[s].back() -
           2.0 * prof.line_density[s] * std::log(r / rg.back());
  const auto it = std::upper_bound(rg.begin(), rg.end(), r);
  const int i = int(it - rg.begin()) - 1;
  const double h = rg[i + 1] - rg[i];
  const double t = (r - rg[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  return h00 * prof.u[s][i] + h * h10 * prof.du[s][i] +
         h01 * prof.u[s][i + 1] + h * h11 * prof.du[s][i + 1];
}

std::array<std::vector<double>, 2> ode_defect(const RadialProfile& prof) {
  const auto& r = prof.r;
  const int n = int(r.size());
  std::array<std::vector<double>, 2> out;
  for (int s = 0; s < 2; ++s) {
    const double norm = 4.0 * kPi * prof.rho[s][0];
    out[s].resize(n - 2);
    for (int i = 1; i + 1 < n; ++i) {
      const double hm = r[i] - r[i - 1], hp = r[i + 1] - r[i];
      // nonuniform central difference of the recorded u' (exact for
      // quadratics in r)
      const double vp = (hm * hm * prof.du[s][i + 1] +
                         (hp * hp - hm * hm) * prof.du[s][i] -
                         hp * hp * prof.du[s][i - 1]) /
                        (hm * hp * (hm + hp));
      out[s][i - 1] =
          (-(vp + prof.du[s][i] / r[i]) - 4.0 * kPi * prof.rho[s][i]) /
          norm;
    }
  }
  return out;
}

}  // namespace beams
