#include "beams/special_functions.hpp"

#include <cmath>

namespace beams {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2Over6 = kPi * kPi / 6.0;

// Li2(w) for w in [0, 1/2], by direct series; ratio <= 1/2 so ~50 terms
// suffice for full double accuracy.
double dilog_small(double w) {
  double term = w;
  double sum = w;
  for (int n = 2; n < 80; ++n) {
    term *= w;
    double add = term / (static_cast<double>(n) * n);
    sum += add;
    if (add < 1e-18 * sum) break;
  }
  return sum;
}
}  // namespace

double softplus(double x) {
  if (x > 40.0) return x + std::exp(-x);
  if (x < -40.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus_primitive(double x) {
  if (x > 0.0) return 0.5 * x * x + kPi2Over6 - softplus_primitive(-x);
  // x <= 0: -Li2(-e^x) = Li2(sigma(x)) + softplus(x)^2 / 2, with
  // sigma(x) in (0, 1/2] so the series converges rapidly.
  double sp = softplus(x);
  return dilog_small(logistic(x)) + 0.5 * sp * sp;
}

namespace detail {

double fermi_angular_exact(double A, double b) {
  return (softplus(A + b) - softplus(A - b)) / b;
}

double fermi_angular_taylor(double A, double b) {
  double s = logistic(A);
  double sp = s * (1.0 - s);
  double b2 = b * b;
  // (f(A+b)-f(A-b))/b = 2 [f' + f''' b^2/6 + f^(5) b^4/120], f = softplus
  double f3 = sp * (1.0 - 2.0 * s);
  double f5 = sp * (1.0 - 2.0 * s) * (1.0 - 12.0 * s + 12.0 * s * s);
  return 2.0 * (s + f3 * b2 / 6.0 + f5 * b2 * b2 / 120.0);
}

double fermi_primitive_exact(double A, double b) {
  return (softplus_primitive(A + b) - softplus_primitive(A - b)) / b;
}

double fermi_primitive_taylor(double A, double b) {
  double s = logistic(A);
  double sp = s * (1.0 - s);
  double b2 = b * b;
  double f3 = sp;
  double f5 = sp * (1.0 - 6.0 * s + 6.0 * s * s);
  return 2.0 * (softplus(A) + f3 * b2 / 6.0 + f5 * b2 * b2 / 120.0);
}

}  // namespace detail

double fermi_angular_kernel(double A, double b) {
  b = std::fabs(b);
  // F/2 is an average of logistic values, so F lies in (0, 2); the Taylor
  // branch can graze the bounds by rounding at extreme A, hence the clamp
  const double v = b < detail::kSmallB ? detail::fermi_angular_taylor(A, b)
                                       : detail::fermi_angular_exact(A, b);
  return std::min(2.0, std::max(0.0, v));
}

double fermi_angular_primitive_kernel(double A, double b) {
  b = std::fabs(b);
  if (b < detail::kSmallB) return detail::fermi_primitive_taylor(A, b);
  return detail::fermi_primitive_exact(A, b);
}

double boltzmann_angular_kernel(double A, double b) {
  b = std::fabs(b);
  if (b < detail::kSmallB) {
    double b2 = b * b;
    return 2.0 * std::exp(A) * (1.0 + b2 / 6.0 + b2 * b2 / 120.0);
  }
  // e^A 2 sinh(b)/b; expm1 keeps accuracy when b is moderate and A large
  // and negative.
  return std::exp(A + b) * (-std::expm1(-2.0 * b)) / b;
}

}  // namespace beams
