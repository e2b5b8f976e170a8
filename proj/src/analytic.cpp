#include "beams/analytic.hpp"

#include <cmath>

#include "beams/errors.hpp"
#include "beams/tail_fit.hpp"

namespace beams {

namespace {
constexpr double kPi = 3.14159265358979323846;
}  // namespace

double pinch_potential(const PinchParams& p, double x, double y) {
  const double dx = x - p.x0, dy = y - p.y0;
  return p.v0 - std::log1p(p.k * p.k * (dx * dx + dy * dy));
}

double pinch_potential_radial(const PinchParams& p, double r) {
  return p.v0 - std::log1p(p.k * p.k * r * r);
}

double pinch_density(const PinchParams& p, double weight, double x,
                     double y) {
  const double dx = x - p.x0, dy = y - p.y0;
  const double q = 1.0 + p.k * p.k * (dx * dx + dy * dy);
  return weight * p.k * p.k / (kPi * q * q);
}

double pinch_density_radial(const PinchParams& p, double weight, double r) {
  const double q = 1.0 + p.k * p.k * r * r;
  return weight * p.k * p.k / (kPi * q * q);
}

double radial_plane_integral(const std::vector<double>& f, double h) {
  const int n = int(f.size());
  if (n < 16) throw NonIntegrable("radial grid too short");
  // composite Simpson on 2 pi r f(r)
  auto g = [&](int i) { return 2.0 * kPi * (i * h) * f[i]; };
  double s = 0.0;
  int last_even = (n % 2 == 1) ? n - 1 : n - 2;
  for (int i = 0; i + 2 <= last_even; i += 2)
    s += h / 3.0 * (g(i) + 4.0 * g(i + 1) + g(i + 2));
  if (last_even == n - 2)  // odd interval count: 2nd-order end correction
    s += h / 12.0 * (5.0 * g(n - 1) + 8.0 * g(n - 2) - g(n - 3));
  // fit the outer half of the samples to a power-law tail and add the
  // integral beyond the grid edge
  const int first = std::max(2, n / 2);
  std::vector<double> rw(f.begin() + first, f.end());
  std::vector<double> fw = rw;
  for (int i = first; i < n; ++i) rw[i - first] = i * h;
  const PowerTail tail = fit_power_tail(rw, fw);
  if (!(tail.exponent > 2.05))
    throw NonIntegrable("tail exponent <= 2, plane integral diverges");
  s += tail.plane_integral_beyond((n - 1) * h);
  return s;
}

std::vector<double> liouville_residual_radial(const std::vector<double>& v,
                                              double h,
                                              double exp_integral) {
  if (!(exp_integral > 0.0))
    throw NonIntegrable("exp(2v) integral must be positive");
  const int n = int(v.size());
  std::vector<double> res(n);
  const double h2 = h * h;
  for (int i = 0; i < n; ++i) {
    double lap;
    if (i == 0) {
      lap = 4.0 * (v[1] - v[0]) / h2;  // regularity: v'(0) = 0
    } else if (i == n - 1) {
      lap = (v[n - 1] - 2.0 * v[n - 2] + v[n - 3]) / h2 +
            (v[n - 1] - v[n - 2]) / (i * h2);
    } else {
      lap = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2 +
            (v[i + 1] - v[i - 1]) / (2.0 * i * h2);
    }
    res[i] = -lap - 4.0 * kPi * std::exp(2.0 * v[i]) / exp_integral;
  }
  return res;
}

PlanarField liouville_residual(const PlanarField& v) {
  double s = 0.0;
  for (int iy = 0; iy < v.n; ++iy)
    for (int ix = 0; ix < v.n; ++ix)
      if (v.in_disk(ix, iy)) s += std::exp(2.0 * v.at(ix, iy));
  s *= v.h * v.h;
  if (!(s > 0.0) || !std::isfinite(s))
    throw NonIntegrable("exp(2v) not integrable on the mask");
  PlanarField res = make_disk_field(v.n, v.radius);
  const double h2 = v.h * v.h;
  for (int iy = 1; iy < v.n - 1; ++iy)
    for (int ix = 1; ix < v.n - 1; ++ix) {
      if (!v.in_disk(ix, iy)) continue;
      const double lap = (v.at(ix + 1, iy) + v.at(ix - 1, iy) +
                          v.at(ix, iy + 1) + v.at(ix, iy - 1) -
                          4.0 * v.at(ix, iy)) /
                         h2;
      res.at(ix, iy) = -lap - 4.0 * kPi * std::exp(2.0 * v.at(ix, iy)) / s;
    }
  return res;
}

}  // namespace beams
