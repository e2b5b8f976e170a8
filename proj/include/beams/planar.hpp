#ifndef BEAMS_PLANAR_HPP
#define BEAMS_PLANAR_HPP

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "beams/coupling.hpp"
#include "beams/species.hpp"

// Two-dimensional solve of the full system on a disk with Dirichlet data,
// by damped Picard iteration with per-sweep line-density renormalization.
// The disk of radius R is embedded in a uniform Cartesian grid; every node
// with |x| >= R carries the Dirichlet value, nodes with |x| < R are
// unknowns of the 5-point discrete Laplacian.

namespace beams {

struct PlanarField {
  int n = 0;           // nodes per side (square grid)
  double h = 0.0;      // grid spacing
  double radius = 0.0; // disk mask radius
  std::vector<double> values;  // row-major, n*n

  double coord(int i) const { return (i - 0.5 * (n - 1)) * h; }
  double& at(int ix, int iy) { return values[iy * n + ix]; }
  double at(int ix, int iy) const { return values[iy * n + ix]; }
  bool in_disk(int ix, int iy) const {
    const double x = coord(ix), y = coord(iy);
    return x * x + y * y < radius * radius;
  }
  /// Bilinear interpolation at (x, y); clamped to the grid box.
  double interpolate(double x, double y) const;
};

/// Grid sized so that at least two node layers lie outside the disk.
PlanarField make_disk_field(int n, double radius);

/// h^2 sum of values over in-disk nodes.
double disk_integral(const PlanarField& f);

/// Solves -Lap u = source on the disk interior with u = boundary(|x|) on
/// all nodes outside; the factorization is reused across solves.
class DiskPoissonSolver {
 public:
  DiskPoissonSolver(int n, double radius);
  ~DiskPoissonSolver();

  PlanarField solve(const PlanarField& source,
                    const std::function<double(double)>& boundary) const;
  PlanarField solve(const PlanarField& source, double boundary_value) const;

  int n() const;
  double h() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct PlanarOptions {
  double omega = 0.5;   // Picard damping, in (0, 1]; halved on overshoot
  double tol = 1e-11;   // update-norm convergence threshold
  int max_sweeps = 500;
};

struct PlanarSolution {
  std::array<PlanarField, 2> u;    // density potentials
  std::array<PlanarField, 2> rho;  // species densities
  int iterations = 0;
  double final_update_norm = 0.0;
  std::array<double, 2> disk_line_density{};  // realized in-disk integrals
  std::vector<double> update_history;
};

/// boundary[s] gives the Dirichlet trace of u_s as a function of radius;
/// disk_target[s] is the in-disk particle number per unit length to which
/// rho_s is renormalized every sweep. Throws NoConvergence (message
/// carries the update-norm trace) or InnerSolveFailure.
PlanarSolution solve_planar(
    Model model, const SpeciesPair& sp, int n, double radius,
    const std::array<std::function<double(double)>, 2>& boundary,
    const std::array<double, 2>& disk_target,
    const std::array<PlanarField, 2>& init, const PlanarOptions& opts = {});

/// Max over sampled radii of (circumferential std-dev / |mean|) of the
/// field about (cx, cy). The floor set by bilinear interpolation on smooth
/// radial fields is ~1e-5 at n = 257.
double angular_variation(const PlanarField& f, double cx = 0.0,
                         double cy = 0.0);

}  // namespace beams

#endif
