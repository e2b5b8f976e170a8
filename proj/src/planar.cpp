#include "beams/planar.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "beams/errors.hpp"

namespace beams {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPi = 4.0 * kPi;
}  // namespace

double PlanarField::interpolate(double x, double y) const {
  const double half = 0.5 * (n - 1);
  double fx = std::clamp(x / h + half, 0.0, double(n - 1));
  double fy = std::clamp(y / h + half, 0.0, double(n - 1));
  int ix = std::min(int(fx), n - 2);
  int iy = std::min(int(fy), n - 2);
  const double tx = fx - ix, ty = fy - iy;
  return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) +
         (1 - tx) * ty * at(ix, iy + 1) + tx * ty * at(ix + 1, iy + 1);
}

PlanarField make_disk_field(int n, double radius) {
  if (n < 9) throw ValidationError("planar grid too small");
  PlanarField f;
  f.n = n;
  f.radius = radius;
  f.h = 2.0 * radius / (n - 5);  // two node layers outside the disk
  f.values.assign(size_t(n) * n, 0.0);
  return f;
}

double disk_integral(const PlanarField& f) {
  double s = 0.0;
  for (int iy = 0; iy < f.n; ++iy)
    for (int ix = 0; ix < f.n; ++ix)
      if (f.in_disk(ix, iy)) s += f.at(ix, iy);
  return s * f.h * f.h;
}

struct DiskPoissonSolver::Impl {
  int n;
  double h, radius;
  std::vector<int> index;  // node -> interior unknown index, or -1
  std::vector<std::pair<int, int>> interior;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
};

DiskPoissonSolver::DiskPoissonSolver(int n, double radius)
    : impl_(std::make_unique<Impl>()) {
  PlanarField proto = make_disk_field(n, radius);
  impl_->n = n;
  impl_->h = proto.h;
  impl_->radius = radius;
  impl_->index.assign(size_t(n) * n, -1);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      if (proto.in_disk(ix, iy)) {
        impl_->index[iy * n + ix] = int(impl_->interior.size());
        impl_->interior.emplace_back(ix, iy);
      }
  const int m = int(impl_->interior.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(size_t(m) * 5);
  for (int k = 0; k < m; ++k) {
    auto [ix, iy] = impl_->interior[k];
    trip.emplace_back(k, k, 4.0);
    const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1},
                           {ix, iy + 1}};
    for (auto& nb : nbr) {
      const int j = impl_->index[nb[1] * n + nb[0]];
      if (j >= 0) trip.emplace_back(k, j, -1.0);
    }
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(trip.begin(), trip.end());
  impl_->solver.compute(a);
  if (impl_->solver.info() != Eigen::Success)
    throw InnerSolveFailure("disk Laplacian factorization failed");
}

DiskPoissonSolver::~DiskPoissonSolver() = default;
int DiskPoissonSolver::n() const { return impl_->n; }
double DiskPoissonSolver::h() const { return impl_->h; }

PlanarField DiskPoissonSolver::solve(
    const PlanarField& source,
    const std::function<double(double)>& boundary) const {
  const int n = impl_->n;
  const double h = impl_->h;
  const int m = int(impl_->interior.size());
  PlanarField out = make_disk_field(n, impl_->radius);
  // fill Dirichlet nodes first so the rhs can read them
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      if (!out.in_disk(ix, iy)) {
        const double x = out.coord(ix), y = out.coord(iy);
        out.at(ix, iy) = boundary(std::hypot(x, y));
      }
  Eigen::VectorXd rhs(m);
  for (int k = 0; k < m; ++k) {
    auto [ix, iy] = impl_->interior[k];
    double b = source.at(ix, iy) * h * h;
    const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1},
                           {ix, iy + 1}};
    for (auto& nb : nbr)
      if (impl_->index[nb[1] * n + nb[0]] < 0) b += out.at(nb[0], nb[1]);
    rhs[k] = b;
  }
  Eigen::VectorXd sol = impl_->solver.solve(rhs);
  if (impl_->solver.info() != Eigen::Success)
    throw InnerSolveFailure("disk Poisson back-substitution failed");
  for (int k = 0; k < m; ++k) {
    auto [ix, iy] = impl_->interior[k];
    out.at(ix, iy) = sol[k];
  }
  return out;
}

PlanarField DiskPoissonSolver::solve(const PlanarField& source,
                                     double boundary_value) const {
  return solve(source, [boundary_value](double) { return boundary_value; });
}

namespace {

// Renormalized density rho_s = G_s(mu + U_s) with mu chosen so the in-disk
// integral equals `target`. The Bennett case is exponential and explicit;
// the Thomas-Fermi case solves the monotone 1-d equation by bisection.
void renormalized_density(const SpeciesDensity& gs, const PlanarField& U,
                          double target, PlanarField* rho) {
  const double beta = gs.params().beta();
  *rho = U;
  if (gs.model() == Model::bennett) {
    double umax = -1e300;
    for (int iy = 0; iy < U.n; ++iy)
      for (int ix = 0; ix < U.n; ++ix)
        if (U.in_disk(ix, iy)) umax = std::max(umax, U.at(ix, iy));
    double z = 0.0;
    for (int iy = 0; iy < U.n; ++iy)
      for (int ix = 0; ix < U.n; ++ix) {
        double v = 0.0;
        if (U.in_disk(ix, iy)) {
          v = std::exp(beta * (U.at(ix, iy) - umax));
          z += v;
        }
        rho->at(ix, iy) = v;
      }
    const double scale = target / (z * U.h * U.h);
    for (double& v : rho->values) v *= scale;
    return;
  }
  auto total = [&](double mu) {
    double s = 0.0;
    for (int iy = 0; iy < U.n; ++iy)
      for (int ix = 0; ix < U.n; ++ix)
        if (U.in_disk(ix, iy)) s += gs.density(mu + U.at(ix, iy));
    return s * U.h * U.h;
  };
  double umax = -1e300;
  for (int iy = 0; iy < U.n; ++iy)
    for (int ix = 0; ix < U.n; ++ix)
      if (U.in_disk(ix, iy)) umax = std::max(umax, U.at(ix, iy));
  // Boltzmann-limit initial bracket, then expand.
  const double area = kPi * U.radius * U.radius;
  double lo = gs.inverse_density(target / area) - umax - 60.0 / beta;
  double hi = lo;
  double step = 4.0 / beta;
  for (int i = 0; i < 200 && total(hi) < target; ++i) {
    lo = hi;
    hi += step;
    step *= 1.5;
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (total(mid) < target ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  for (int iy = 0; iy < U.n; ++iy)
    for (int ix = 0; ix < U.n; ++ix)
      rho->at(ix, iy) =
          U.in_disk(ix, iy) ? gs.density(mu + U.at(ix, iy)) : 0.0;
  // exact renormalization of the residual bisection error
  const double scale = target / disk_integral(*rho);
  for (double& v : rho->values) v *= scale;
}

}  // namespace

PlanarSolution solve_planar(
    Model model, const SpeciesPair& sp, int n, double radius,
    const std::array<std::function<double(double)>, 2>& boundary,
    const std::array<double, 2>& disk_target,
    const std::array<PlanarField, 2>& init, const PlanarOptions& opts) {
  if (!(opts.omega > 0.0) || opts.omega > 1.0)
    throw NoConvergence("picard damping omega must lie in (0, 1]");
  const CouplingMatrix gamma = coupling_matrix(sp);
  const std::array<SpeciesDensity, 2> gs = {
      SpeciesDensity(model, sp[0]), SpeciesDensity(model, sp[1])};
  DiskPoissonSolver poisson(n, radius);

  PlanarSolution out;
  out.u = init;
  PlanarField U = make_disk_field(n, radius);
  PlanarField src = make_disk_field(n, radius);
  out.rho = {U, U};

  // The Picard map contracts slowly (rate ~0.95 on core-resolved grids),
  // so pure damping cannot reach tight tolerances in a reasonable sweep
  // count. A one-deep Anderson (secant) extrapolation removes the dominant
  // error mode; it falls back to the plain damped step whenever the
  // extrapolation misbehaves.
  const size_t m = U.values.size();
  constexpr int kAndersonDepth = 5;
  std::vector<double> d(2 * m), d_prev, du_prev;
  std::deque<std::vector<double>> dd_hist, du_hist;
  double omega = opts.omega;
  double prev_norm = 1e300;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    for (int s = 0; s < 2; ++s) {
      for (size_t i = 0; i < m; ++i)
        U.values[i] = gamma.entry[s][0] * out.u[0].values[i] +
                      gamma.entry[s][1] * out.u[1].values[i];
      renormalized_density(gs[s], U, disk_target[s], &out.rho[s]);
    }
    double norm = 0.0, umag = 0.0;
    for (int s = 0; s < 2; ++s) {
      for (size_t i = 0; i < m; ++i)
        src.values[i] = kFourPi * out.rho[s].values[i];
      PlanarField fresh = poisson.solve(src, boundary[s]);
      for (size_t i = 0; i < m; ++i) {
        d[s * m + i] = fresh.values[i] - out.u[s].values[i];
        norm = std::max(norm, std::fabs(d[s * m + i]));
        umag = std::max(umag, std::fabs(out.u[s].values[i]));
      }
    }

    if (!d_prev.empty()) {
      std::vector<double> dd(2 * m);
      for (size_t i = 0; i < 2 * m; ++i) dd[i] = d[i] - d_prev[i];
      dd_hist.push_front(std::move(dd));
      du_hist.push_front(du_prev);
      if (int(dd_hist.size()) > kAndersonDepth) {
        dd_hist.pop_back();
        du_hist.pop_back();
      }
    }

    // Anderson coefficients: least squares of d against the stored
    // residual differences, with a small ridge for near-collinearity
    const int depth = int(dd_hist.size());
    std::vector<double> coef(depth, 0.0);
    if (depth > 0) {
      std::vector<std::vector<double>> A(depth,
                                         std::vector<double>(depth + 1));
      double trace = 0.0;
      for (int a = 0; a < depth; ++a) {
        for (int b = a; b < depth; ++b) {
          double s2 = 0.0;
          for (size_t i = 0; i < 2 * m; ++i)
            s2 += dd_hist[a][i] * dd_hist[b][i];
          A[a][b] = A[b][a] = s2;
        }
        trace += A[a][a];
        double rhs = 0.0;
        for (size_t i = 0; i < 2 * m; ++i) rhs += dd_hist[a][i] * d[i];
        A[a][depth] = rhs;
      }
      for (int a = 0; a < depth; ++a) A[a][a] += 1e-12 * trace + 1e-300;
      // Gaussian elimination with partial pivoting on the small system
      bool ok = true;
      for (int col = 0; col < depth && ok; ++col) {
        int piv = col;
        for (int rr = col + 1; rr < depth; ++rr)
          if (std::fabs(A[rr][col]) > std::fabs(A[piv][col])) piv = rr;
        std::swap(A[piv], A[col]);
        if (A[col][col] == 0.0) { ok = false; break; }
        for (int rr = col + 1; rr < depth; ++rr) {
          const double fct = A[rr][col] / A[col][col];
          for (int cc = col; cc <= depth; ++cc) A[rr][cc] -= fct * A[col][cc];
        }
      }
      if (ok)
        for (int a = depth - 1; a >= 0; --a) {
          double v = A[a][depth];
          for (int b = a + 1; b < depth; ++b) v -= A[a][b] * coef[b];
          coef[a] = v / A[a][a];
          if (!std::isfinite(coef[a]) || std::fabs(coef[a]) > 1e3) {
            ok = false;
            break;
          }
        }
      if (!ok) coef.assign(depth, 0.0);
    }

    std::vector<double> du(2 * m);
    bool mixed = false;
    for (double cj : coef) mixed = mixed || cj != 0.0;
    if (mixed) {
      for (size_t i = 0; i < 2 * m; ++i) {
        double v = d[i];
        for (int a = 0; a < depth; ++a)
          v -= coef[a] * (du_hist[a][i] + dd_hist[a][i]);
        du[i] = v;
      }
    } else {
      for (size_t i = 0; i < 2 * m; ++i) du[i] = omega * d[i];
    }
    for (int s = 0; s < 2; ++s)
      for (size_t i = 0; i < m; ++i) out.u[s].values[i] += du[s * m + i];
    d_prev = d;
    du_prev = std::move(du);

    out.update_history.push_back(norm);
    out.iterations = sweep + 1;
    out.final_update_norm = norm;
    if (norm > prev_norm * 1.05) {
      if (omega > 0.05) omega *= 0.5;
      d_prev.clear();  // restart the extrapolation after an overshoot
      dd_hist.clear();
      du_hist.clear();
    }
    prev_norm = norm;
    if (norm <= opts.tol * (1.0 + umag)) {
      for (int s = 0; s < 2; ++s)
        out.disk_line_density[s] = disk_integral(out.rho[s]);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "planar fixed point did not converge in " << opts.max_sweeps
      << " sweeps; last update norms:";
  const size_t k = out.update_history.size();
  for (size_t i = (k > 8 ? k - 8 : 0); i < k; ++i)
    msg << " " << out.update_history[i];
  throw NoConvergence(msg.str());
}

namespace {

double catmull(double p0, double p1, double p2, double p3, double t) {
  return p1 + 0.5 * t * (p2 - p0 +
                         t * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                              t * (3 * (p1 - p2) + p3 - p0)));
}

// Bicubic sampling for the angular-variation metric: the bilinear floor
// (~h^2 |f''| / 8) would mask genuine anisotropy on coarse grids.
double interpolate_bicubic(const PlanarField& f, double x, double y) {
  const double half = 0.5 * (f.n - 1);
  const double fx = std::clamp(x / f.h + half, 1.0, double(f.n - 3));
  const double fy = std::clamp(y / f.h + half, 1.0, double(f.n - 3));
  const int ix = std::min(int(fx), f.n - 3);
  const int iy = std::min(int(fy), f.n - 3);
  const double tx = fx - ix, ty = fy - iy;
  double col[4];
  for (int j = 0; j < 4; ++j)
    col[j] = catmull(f.at(ix - 1, iy - 1 + j), f.at(ix, iy - 1 + j),
                     f.at(ix + 1, iy - 1 + j), f.at(ix + 2, iy - 1 + j), tx);
  return catmull(col[0], col[1], col[2], col[3], ty);
}

}  // namespace

double angular_variation(const PlanarField& f, double cx, double cy) {
  const int n_theta = 256;
  const int n_radii = 48;
  // sample only circles that stay inside the disk and away from the rim
  const double r_hi = f.radius - 2.0 * f.h - std::hypot(cx, cy);
  double worst = 0.0;
  for (int j = 1; j <= n_radii; ++j) {
    const double r = r_hi * j / n_radii;
    if (r <= 0.0) continue;
    double s = 0.0, s2 = 0.0;
    for (int t = 0; t < n_theta; ++t) {
      const double a = 2.0 * kPi * t / n_theta;
      const double v = interpolate_bicubic(f, cx + r * std::cos(a),
                                           cy + r * std::sin(a));
      s += v;
      s2 += v * v;
    }
    const double mean = s / n_theta;
    const double var = std::max(0.0, s2 / n_theta - mean * mean);
    if (mean != 0.0) worst = std::max(worst, std::sqrt(var) / std::fabs(mean));
  }
  return worst;
}

}  // namespace beams
