#include "special.hpp"

#include <array>
#include <cmath>

#include "errors.hpp"

namespace pmclt {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

namespace {

constexpr int kFactMax = 170;

const std::array<double, kFactMax + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kFactMax + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kFactMax; ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table;
}

// Gamma(k + 1/2) for k = 0..170, built once from Gamma(1/2) = sqrt(pi).
const std::array<double, kFactMax + 1>& half_gamma_table() {
  static const auto table = [] {
    std::array<double, kFactMax + 1> t{};
    t[0] = 1.77245385090551602729816748334114518;  // sqrt(pi)
    for (int i = 1; i <= kFactMax; ++i) t[i] = t[i - 1] * (static_cast<double>(i) - 0.5);
    return t;
  }();
  return table;
}

// Lanczos g = 607/128, 15 terms (Godfrey coefficients).
double gamma_lanczos(double x) {
  static const double g = 607.0 / 128.0;
  static const double coeff[15] = {
      0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
      14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
      0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
      -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
      0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
  };
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_lanczos(1.0 - x));
  x -= 1.0;
  double sum = coeff[0];
  for (int i = 1; i < 15; ++i) sum += coeff[i] / (x + static_cast<double>(i));
  double t = x + g + 0.5;
  return kSqrt2Pi * std::pow(t, x + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double factorial(int n) {
  require(n >= 0 && n <= kFactMax, errc::overflow,
          "factorial argument out of double range: " + std::to_string(n));
  return factorial_table()[static_cast<size_t>(n)];
}

double gamma_fn(double x) {
  require(x > 0.0, errc::invalid_argument, "gamma_fn requires a positive argument");
  double twice = 2.0 * x;
  if (twice == std::floor(twice) && x <= kFactMax + 0.5) {
    long k = static_cast<long>(std::floor(x));
    if (x == std::floor(x)) return factorial_table()[static_cast<size_t>(k - 1)];
    return half_gamma_table()[static_cast<size_t>(k)];
  }
  require(x <= 170.6, errc::overflow, "gamma_fn argument too large for double");
  return gamma_lanczos(x);
}

double sinc(double u) {
  double a = std::abs(u);
  if (a < 1e-4) {
    double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

namespace {

constexpr int kWeidemanN = 64;

// Weideman rational-approximation coefficients; the setup cost is a one-time
// O(N^2) discrete Fourier sum so no FFT dependency is needed here.
const std::array<double, kWeidemanN>& weideman_coeffs() {
  static const auto coeffs = [] {
    constexpr int N = kWeidemanN;
    constexpr int M = 2 * N;
    constexpr int M2 = 4 * N;
    const double L = std::sqrt(N / kSqrt2);
    std::array<double, M2> x{};
    x[0] = 0.0;
    for (int j = 1; j < M2; ++j) {
      int k = j - M;
      double theta = kPi * static_cast<double>(k) / static_cast<double>(M);
      double t = L * std::tan(0.5 * theta);
      x[static_cast<size_t>(j)] = std::exp(-t * t) * (L * L + t * t);
    }
    std::array<double, N> a{};
    for (int q = 1; q <= N; ++q) {
      double re = 0.0;
      for (int j = 1; j < M2; ++j) {
        re += x[static_cast<size_t>(j)] *
              std::cos(2.0 * kPi * static_cast<double>(j) * static_cast<double>(q) /
                       static_cast<double>(M2));
      }
      double sign = (q % 2 == 0) ? 1.0 : -1.0;
      a[static_cast<size_t>(q - 1)] = sign * re / static_cast<double>(M2);
    }
    return a;
  }();
  return coeffs;
}

std::complex<double> faddeeva_weideman(std::complex<double> z) {
  const std::complex<double> i(0.0, 1.0);
  const auto& a = weideman_coeffs();
  const double L = std::sqrt(kWeidemanN / kSqrt2);
  std::complex<double> iz = i * z;
  std::complex<double> Z = (L + iz) / (L - iz);
  std::complex<double> p(0.0, 0.0);
  for (int q = kWeidemanN; q >= 1; --q) p = p * Z + a[static_cast<size_t>(q - 1)];
  std::complex<double> d = L - iz;
  return 2.0 * p / (d * d) + (1.0 / std::sqrt(kPi)) / d;
}

// Close to the real axis the rational form only delivers absolute accuracy,
// which wipes out the exponentially small real part Re w(x) = e^{-x^2}.
// Rebuild from the on-axis values (real part exact, imaginary part O(1) so
// the rational form keeps full relative accuracy) and shift upward with the
// Taylor series in iy, using w^{(k+1)}(x) = -2x w^{(k)} - 2k w^{(k-1)}.
std::complex<double> faddeeva_near_axis(double x, double y) {
  const std::complex<double> w0(std::exp(-x * x), faddeeva_weideman({x, 0.0}).imag());
  if (y == 0.0) return w0;
  std::complex<double> dprev = w0;
  std::complex<double> dcur = -2.0 * x * w0 + std::complex<double>(0.0, 2.0 / std::sqrt(kPi));
  std::complex<double> sum = w0;
  std::complex<double> coef(0.0, y);
  for (int k = 1; k <= 24; ++k) {
    sum += coef * dcur;
    const std::complex<double> dnext = -2.0 * x * dcur - (2.0 * k) * dprev;
    dprev = dcur;
    dcur = dnext;
    coef *= std::complex<double>(0.0, y / (k + 1));
  }
  return sum;
}

std::complex<double> faddeeva_upper(std::complex<double> z) {
  const std::complex<double> i(0.0, 1.0);
  const double x = z.real();
  const double y = z.imag();
  if (std::norm(z) >= 144.0) {
    // Laplace continued fraction, ample depth for |z| >= 12. Complex
    // division keeps both parts relatively accurate off the axis, but the
    // asymptotic form cannot see the e^{-x^2} component on the axis itself.
    std::complex<double> r(0.0, 0.0);
    for (int k = 14; k >= 1; --k) r = (0.5 * k) / (z - r);
    std::complex<double> w = i / std::sqrt(kPi) / (z - r);
    if (y == 0.0) w.real(std::exp(-x * x));
    return w;
  }
  if (y <= 0.05 && 2.0 * std::abs(x) * y <= 0.5) return faddeeva_near_axis(x, y);
  return faddeeva_weideman(z);
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

std::complex<double> incomplete_gauss_fourier(double x, double t) {
  if (t < 0.0) return std::conj(incomplete_gauss_fourier(x, -t));
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> phase = std::exp(i * (x * t));
  if (x >= 0.0) {
    std::complex<double> z((t) / kSqrt2, x / kSqrt2);
    return 0.5 * std::exp(-0.5 * x * x) * phase * faddeeva_upper(z);
  }
  // Reflect into the upper half plane; the leading term is the full integral.
  std::complex<double> z(-t / kSqrt2, -x / kSqrt2);
  return std::exp(-0.5 * t * t) - 0.5 * std::exp(-0.5 * x * x) * phase * faddeeva_upper(z);
}

}  // namespace pmclt
