#ifndef BEAMS_SPECIAL_FUNCTIONS_HPP
#define BEAMS_SPECIAL_FUNCTIONS_HPP

// Scalar kernels for the momentum-space integrals. The angular part of every
// 3-d momentum integral is done in closed form, which reduces each density
// and primitive to a single radial quadrature over |p|. All functions here
// are overflow-safe for arguments up to |A|, b ~ 1e4.

namespace beams {

/// ln(1 + e^x), stable for large |x|.
double softplus(double x);

/// 1 / (1 + e^{-x}), stable for large |x|.
double logistic(double x);

/// Phi(x) = integral of softplus from -infinity to x  (= -Li2(-e^x)).
/// Phi(x) -> e^x as x -> -inf, Phi(x) -> x^2/2 + pi^2/6 as x -> +inf,
/// Phi(0) = pi^2/12. Accurate to ~1e-15 relative everywhere.
double softplus_primitive(double x);

/// F(A, b) = int_{-1}^{1} dmu 1/(1 + e^{-(A + b mu)})
///         = (softplus(A+b) - softplus(A-b)) / b,   value in (0, 2).
/// Even in b; continuous at b = 0 with limit 2 logistic(A).
double fermi_angular_kernel(double A, double b);

/// P(A, b) = int_{-1}^{1} dmu softplus(A + b mu)
///         = (Phi(A+b) - Phi(A-b)) / b.
/// The kernel of the Thomas-Fermi primitive.
double fermi_angular_primitive_kernel(double A, double b);

/// int_{-1}^{1} dmu e^{A + b mu} = e^A 2 sinh(b)/b, computed without
/// intermediate overflow of the two exponentials relative to e^A.
double boltzmann_angular_kernel(double A, double b);

namespace detail {
// The two branches of fermi_angular_kernel, exposed so the switch-over can
// be tested: both must agree near the threshold.
double fermi_angular_exact(double A, double b);
double fermi_angular_taylor(double A, double b);
double fermi_primitive_exact(double A, double b);
double fermi_primitive_taylor(double A, double b);
// b below this uses the 4th-order Taylor branch.
inline constexpr double kSmallB = 1e-4;
}  // namespace detail

}  // namespace beams

#endif
