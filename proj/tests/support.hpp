// Shared fixtures and slow-but-independent oracles for the test suite.
//
// The fixture family deliberately spans the regimes the library has to
// handle: a pure jump density (uniform), a continuous piecewise-polynomial
// density (triangular), two small perturbations of the normal with compactly
// supported discrepancy (repaint, staircase), a purely atomic law, and the
// normal itself. Every oracle here recomputes its target through a different
// code path than the library (single adaptive quadratures over explicit
// panels), so agreement is evidence, not tautology.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dist.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace pmclt::testsupport {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline DensityPiece gauss_piece(double a, double b, double weight = 1.0) {
  DensityPiece p;
  p.family = PieceFamily::gaussian_restriction;
  p.a = a;
  p.b = b;
  p.weight = weight;
  return p;
}

inline DensityPiece uniform_piece(double a, double b, double height) {
  DensityPiece p;
  p.family = PieceFamily::uniform;
  p.a = a;
  p.b = b;
  p.weight = height;
  return p;
}

inline DensityPiece poly_piece(double a, double b, std::vector<double> coeffs) {
  DensityPiece p;
  p.family = PieceFamily::polynomial;
  p.a = a;
  p.b = b;
  p.weight = 1.0;
  p.coefficients = std::move(coeffs);
  return p;
}

inline DistributionSpec gaussian_spec() {
  DistributionSpec s;
  s.sigma = 1.0;
  s.pieces.push_back(gauss_piece(-kInf, kInf));
  return s;
}

/// U(-sqrt3, sqrt3): unit variance, densest jump spectrum in the family.
inline DistributionSpec uniform_spec() {
  DistributionSpec s;
  s.sigma = 1.0;
  const double r = std::sqrt(3.0);
  s.pieces.push_back(uniform_piece(-r, r, 1.0 / (2.0 * r)));
  return s;
}

/// U(-3, 3) has variance 3; exercises the sigma != 1 standardization.
inline DistributionSpec scaled_uniform_spec() {
  DistributionSpec s;
  s.sigma = std::sqrt(3.0);
  s.pieces.push_back(uniform_piece(-3.0, 3.0, 1.0 / 6.0));
  return s;
}

/// Law of (xi_1 + xi_2)/sqrt(2) for xi ~ U(-sqrt3, sqrt3): the triangle
/// (sqrt6 - |x|)/6 on [-sqrt6, sqrt6]. Continuous, so its cf is integrable.
inline DistributionSpec triangular_spec() {
  DistributionSpec s;
  s.sigma = 1.0;
  const double r = std::sqrt(6.0);
  s.pieces.push_back(poly_piece(-r, 0.0, {r / 6.0, 1.0 / 6.0}));
  s.pieces.push_back(poly_piece(0.0, r, {r / 6.0, -1.0 / 6.0}));
  return s;
}

/// Normal outside [-a, a]; inside, an even quadratic alpha + beta x^2 chosen
/// to match the removed mass and second moment. H is supported in [-a, a].
inline DistributionSpec repaint_spec(double a = 0.5) {
  const double mass = 2.0 * (normal_cdf(a) - 0.5);
  const double second = 2.0 * (normal_cdf(a) - 0.5 - a * normal_pdf(a));
  // [ 2a      (2/3)a^3 ] [alpha]   [mass  ]
  // [ (2/3)a^3 (2/5)a^5 ] [beta ] = [second]
  const double a3 = a * a * a, a5 = a3 * a * a;
  const double det = 2.0 * a * 0.4 * a5 - (2.0 / 3.0) * a3 * (2.0 / 3.0) * a3;
  const double alpha = (mass * 0.4 * a5 - (2.0 / 3.0) * a3 * second) / det;
  const double beta = (2.0 * a * second - (2.0 / 3.0) * a3 * mass) / det;
  DistributionSpec s;
  s.sigma = 1.0;
  s.pieces.push_back(gauss_piece(-kInf, -a));
  s.pieces.push_back(poly_piece(-a, a, {alpha, 0.0, beta}));
  s.pieces.push_back(gauss_piece(a, kInf));
  return s;
}

/// Normal outside [-a, a]; inside, two stacked uniform layers h2 on [-a, a]
/// plus h1 on [-g, g], again matching mass and second moment.
inline DistributionSpec staircase_spec(double a = 0.6, double g = 0.25) {
  const double mass = 2.0 * (normal_cdf(a) - 0.5);
  const double second = 2.0 * (normal_cdf(a) - 0.5 - a * normal_pdf(a));
  // [ 2g      2a      ] [h1]   [mass  ]
  // [ (2/3)g^3 (2/3)a^3 ] [h2] = [second]
  const double g3 = g * g * g, a3 = a * a * a;
  const double det = 2.0 * g * (2.0 / 3.0) * a3 - 2.0 * a * (2.0 / 3.0) * g3;
  const double h1 = (mass * (2.0 / 3.0) * a3 - 2.0 * a * second) / det;
  const double h2 = (2.0 * g * second - (2.0 / 3.0) * g3 * mass) / det;
  DistributionSpec s;
  s.sigma = 1.0;
  s.pieces.push_back(gauss_piece(-kInf, -a));
  s.pieces.push_back(uniform_piece(-a, a, h2));
  s.pieces.push_back(uniform_piece(-g, g, h1));
  s.pieces.push_back(gauss_piece(a, kInf));
  return s;
}

/// Fair coin on {-1, +1}: mean 0, variance 1, no density at all.
inline DistributionSpec atom_pair_spec() {
  DistributionSpec s;
  s.sigma = 1.0;
  s.atoms.push_back({-1.0, 0.5});
  s.atoms.push_back({+1.0, 0.5});
  return s;
}

/// Irwin-Hall density of U_1 + ... + U_n, U ~ U(0,1), on [0, n].
inline double irwin_hall_pdf(int n, double s) {
  if (s <= 0.0 || s >= n) return 0.0;
  double acc = 0.0, binom = 1.0, fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;  // (n-1)!
  for (int k = 0; k <= static_cast<int>(s); ++k) {
    acc += (k % 2 ? -1.0 : 1.0) * binom * std::pow(s - k, n - 1);
    binom *= static_cast<double>(n - k) / (k + 1);
  }
  return acc / fact;
}

inline double irwin_hall_cdf(int n, double s) {
  if (s <= 0.0) return 0.0;
  if (s >= n) return 1.0;
  double acc = 0.0, binom = 1.0, fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;  // n!
  for (int k = 0; k <= static_cast<int>(s); ++k) {
    acc += (k % 2 ? -1.0 : 1.0) * binom * std::pow(s - k, n);
    binom *= static_cast<double>(n - k) / (k + 1);
  }
  return acc / fact;
}

/// CDF/density of S_n = (xi_1+...+xi_n)/sqrt(n) for xi ~ U(-sqrt3, sqrt3),
/// via xi = 2 sqrt3 (U - 1/2).
inline double uniform_sum_cdf(int n, double z) {
  const double s = 0.5 * n + z * std::sqrt(static_cast<double>(n)) / (2.0 * std::sqrt(3.0));
  return irwin_hall_cdf(n, s);
}

inline double uniform_sum_pdf(int n, double z) {
  const double jac = std::sqrt(static_cast<double>(n)) / (2.0 * std::sqrt(3.0));
  return irwin_hall_pdf(n, 0.5 * n + z * jac) * jac;
}

/// Direct quadrature of int e^{itx} dF: one adaptive pass per inter-break
/// segment plus the atom sum. Slow; exists to cross-check DensityPiece::cf.
inline std::complex<double> cf_brute(const DistributionSpec& spec, double t) {
  std::vector<double> edges = spec.breakpoints();
  double lo = -42.0, hi = 42.0;
  if (!edges.empty()) {
    lo = std::min(lo, edges.front() - 42.0);
    hi = std::max(hi, edges.back() + 42.0);
  }
  edges.insert(edges.begin(), lo);
  edges.push_back(hi);
  std::complex<double> acc{0.0, 0.0};
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    acc += integrate_gk_complex(
               [&](double x) {
                 return std::polar(1.0, t * x) * pdf(spec, x);
               },
               edges[i], edges[i + 1], 1e-13, 1e-12)
               .value;
  }
  for (const auto& at : spec.atoms) acc += at.mass * std::polar(1.0, t * at.location);
  return acc;
}

/// Truncated pseudomoments by panel quadrature of |x|^p |sigma p(sigma x) -
/// phi(x)| dx; panels small enough that the |.| kinks cost accuracy, not
/// correctness. Atom jumps enter by direct summation.
inline double nu_brute_on(const DistributionSpec& spec, int power, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const int kPanels = 600;
  double acc = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double a = lo + (hi - lo) * i / kPanels;
    const double b = lo + (hi - lo) * (i + 1) / kPanels;
    acc += integrate_gk(
               [&](double x) {
                 const double delta = spec.sigma * pdf(spec, spec.sigma * x) - normal_pdf(x);
                 return std::pow(std::abs(x), power) * std::abs(delta);
               },
               a, b, 1e-14, 1e-10, 60)
               .value;
  }
  return acc;
}

inline double nu1_brute(const DistributionSpec& spec, int m, long n) {
  const double cut = spec.sigma * std::sqrt(static_cast<double>(n));
  double acc = nu_brute_on(spec, m + 1, -cut, cut);
  for (const auto& at : spec.atoms) {
    const double x = at.location / spec.sigma;
    if (std::abs(x) <= cut) acc += std::abs(at.mass) * std::pow(std::abs(x), m + 1);
  }
  return acc;
}

inline double nu2_brute(const DistributionSpec& spec, int m, long n) {
  const double cut = spec.sigma * std::sqrt(static_cast<double>(n));
  double reach = 45.0;
  for (double b : spec.breakpoints()) reach = std::max(reach, std::abs(b) / spec.sigma + 45.0);
  double acc = nu_brute_on(spec, m, -reach, -cut) + nu_brute_on(spec, m, cut, reach);
  for (const auto& at : spec.atoms) {
    const double x = at.location / spec.sigma;
    if (std::abs(x) > cut) acc += std::abs(at.mass) * std::pow(std::abs(x), m);
  }
  return acc;
}

}  // namespace pmclt::testsupport
