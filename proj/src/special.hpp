#pragma once

#include <complex>

namespace pmclt {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438187;

/// Standard normal density.
inline double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

/// Standard normal CDF, accurate to a few ulp across the real line
/// (implemented through erfc to avoid cancellation in the tails).
double normal_cdf(double x);

/// n! as a double; requires 0 <= n <= 170.
double factorial(int n);

/// Gamma function on (0, inf). Integer and half-integer arguments (the only
/// ones the bound constants ever produce) are computed exactly by upward
/// recursion; everything else goes through a Lanczos approximation with
/// relative error well under 1e-13.
double gamma_fn(double x);

/// sin(u)/u with a series fallback near zero.
double sinc(double u);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), valid for all complex z.
/// Accuracy ~1e-13 relative in the upper half plane; the lower half plane is
/// reached through w(z) = 2 exp(-z^2) - w(-z) and may overflow when
/// Im(z)^2 - Re(z)^2 is large (callers below keep prefactors bounded).
std::complex<double> faddeeva_w(std::complex<double> z);

/// Incomplete Gaussian Fourier integral G(x, t) = int_x^inf phi(u) e^{itu} du.
/// Closed form via the Faddeeva function; absolute accuracy ~1e-13.
std::complex<double> incomplete_gauss_fourier(double x, double t);

}  // namespace pmclt
