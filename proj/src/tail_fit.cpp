#include "beams/tail_fit.hpp"

#include <cmath>

#include "beams/errors.hpp"

namespace beams {

double PowerTail::value(double r) const {
  return amplitude * std::pow(r, -exponent) * (1.0 + curvature / (r * r));
}

double PowerTail::plane_integral_beyond(double R) const {
  constexpr double kPi = 3.14159265358979323846;
  if (!(exponent > 2.0))
    throw NonIntegrableTail("tail exponent <= 2, plane integral diverges");
  return 2.0 * kPi * amplitude *
         (std::pow(R, 2.0 - exponent) / (exponent - 2.0) +
          curvature * std::pow(R, -exponent) / exponent);
}

PowerTail fit_power_tail(const std::vector<double>& r,
                         const std::vector<double>& f) {
  // linear least squares for ln f = c0 - alpha ln r + c2 / r^2
  const int n = int(f.size());
  double a[3][3] = {};
  double b[3] = {};
  int used = 0;
  for (int i = 0; i < n; ++i) {
    if (!(f[i] > 0.0) || !(r[i] > 0.0)) continue;
    const double phi[3] = {1.0, std::log(r[i]), 1.0 / (r[i] * r[i])};
    const double y = std::log(f[i]);
    for (int p = 0; p < 3; ++p) {
      b[p] += phi[p] * y;
      for (int q = 0; q < 3; ++q) a[p][q] += phi[p] * phi[q];
    }
    ++used;
  }
  if (used < 8) throw NonIntegrable("too few positive samples for tail fit");
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det3(a);
  if (d == 0.0) throw NonIntegrable("degenerate tail fit");
  double c[3];
  for (int p = 0; p < 3; ++p) {
    double m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = (j == p) ? b[i] : a[i][j];
    c[p] = det3(m) / d;
  }
  PowerTail out;
  out.amplitude = std::exp(c[0]);
  out.exponent = -c[1];
  out.curvature = c[2];
  for (int i = 0; i < n; ++i) {
    if (!(f[i] > 0.0) || !(r[i] > 0.0)) continue;
    const double pred = c[0] + c[1] * std::log(r[i]) + c[2] / (r[i] * r[i]);
    out.max_log_misfit =
        std::max(out.max_log_misfit, std::fabs(std::log(f[i]) - pred));
  }
  return out;
}

}  // namespace beams
