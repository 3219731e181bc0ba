#pragma once

#include <string>
#include <vector>

namespace pmclt {

inline constexpr int kMinBoundOrder = 3;
inline constexpr int kMaxBoundOrder = 150;

/// Condition-(ii) ceiling for nu: (1/2) e^{-3/2}.
double half_e_threshold();

struct BoundConstants {
  int m = 0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
};

/// The four m-dependent constants in the main convergence terms:
///   c1 = 12^{(m+1)/2} Gamma((m+1)/2) / (pi (m+1)!)        c2 = 2 c1(m-1)
///   c3 = 12^{(m+2)/2} Gamma(m/2 + 1) / (4 pi (m+1)!)       c4 = 2 c3(m-1)
/// m outside [3, 150] raises (Overflow above, InvalidArgument below).
BoundConstants bound_constants(int m);

/// sqrt(-2 ln(2 e nu)); +inf when nu == 0, NuOutOfRange when 2 e nu >= 1.
double t1_threshold(double nu);

struct Thresholds {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double c1mn = 0.0;
  double c2mn = 0.0;
};

/// Integration-split thresholds: c1mn = 12^{(m-1)/2} Gamma((m+1)/2) /
/// (2 n^{(m-1)/2} (m+1)!), c2mn = 2 c1(m-1, n), t2 = 1/(sqrt(2 pi)
/// (c1mn nu1 + c2mn nu2)), t3 = min(t1 sqrt(n), t2).
Thresholds thresholds(int m, long n, double nu1, double nu2, double nu);

/// Lemma-1 modulus bound: |t|^{m+1}/(m+1)! nu1 + 2 |t|^m / m! nu2.
double lemma1_omega_bound(int m, double nu1, double nu2, double t);

/// Lemma-2 characteristic-function envelope: exp(-t^2/6) for |t| <= t1(nu),
/// (2e + 3/8) nu |t|^{m+1} beyond. Requires nu < half_e_threshold().
double lemma2_envelope(int m, double nu, double t);

/// Bounded-density cf decay: exp(-t^2 / (96 d^2 (2 sigma |t| + pi)^2)) with
/// d the density sup. Monotone decreasing in |t|; its value at |t| = 1/sigma
/// is b1.
double statulevicius_bound(double density_sup, double sigma, double t);

/// Sup of any density whose cf has L1 norm A: inversion gives p <= A / (2 pi).
double derived_density_bound(double cf_l1);

/// b  = exp(-pi^2 / (24 A^2  sigma^2 (2+pi)^2)) from the cf L1 norm A.
double geometric_base_b(double cf_l1, double sigma);
/// b1 = exp(-1 / (96 A1^2 sigma^2 (2+pi)^2)) from the density sup A1.
double geometric_base_b1(double density_sup, double sigma);

struct BoundInputs {
  int m = 3;
  long n = 1;
  double nu1 = 0.0, nu2 = 0.0, nu = 0.0;
  bool condition_ii_ok = false;
  double cf_l1 = 0.0;               // A
  double cf_l1_truncation = 0.0;    // residual reported by validate()
  double density_sup = 0.0;         // A1
  double sigma = 1.0;
  bool atoms_present = false;       // disqualifies every n >= 2 bound family
};

struct BoundReport {
  std::string kind;
  int m = 0;
  long n = 0;
  double nu1 = 0.0, nu2 = 0.0, nu = 0.0;
  // a is the cf L1 norm actually used: the scanned value padded by its
  // truncation residual (the geometric term grows with A, so the padded
  // value keeps the total an upper bound).
  double a = 0.0, a1 = 0.0, sigma = 1.0, b = 0.0, b1 = 0.0;
  double total = 0.0;
  double main_nu1_term = 0.0;
  double main_nu2_term = 0.0;
  double geometric_term = 0.0;
  double exponential_term = 0.0;
  // theorem2 only: the proof of the statement supports e^{-n/2}/sqrt(n)
  // where the statement prints e^{-n/2}/n; both are reported.
  double exponential_term_proof_variant = 0.0;
  double total_proof_variant = 0.0;
  // remark1 only: leading constant, and the variant using the smaller
  // printed coefficient 2/(pi sqrt(2 pi)) in place of 24/(pi sqrt(2 pi)).
  double constant = 0.0;
  double constant_stated_variant = 0.0;
  double total_stated_variant = 0.0;
  bool has_proof_variant = false;
  bool has_remark_constants = false;
  bool valid = false;
  std::vector<std::string> validity_notes;
};

/// Kolmogorov-distance bound for n >= 2:
///   2 c1 nu1 / n^{(m-1)/2} + 2 c2 nu2 / n^{(m-2)/2}
///   + (sigma A / pi) b^{n-1} + nu (4 e^{3/2}/pi) e^{-n/2} / n.
BoundReport theorem1_bound(const BoundInputs& in);

/// Same main and exponential terms, geometric term 2 sigma A1 b1^{n-2};
/// needs n >= 3 and a finite density sup.
BoundReport corollary1_bound(const BoundInputs& in);

/// Density sup-distance bound for n >= 2:
///   c3 nu1 / n^{(m-1)/2} + c4 nu2 / n^{(m-2)/2}
///   + b^{n-1} (sigma sqrt(n) / 2 pi) A + nu (e^{3/2}/pi) e^{-n/2} / n.
BoundReport theorem2_bound(const BoundInputs& in);

/// n = 1 Kolmogorov bound: K(m) max(nu1, nu1^{1/(m+2)}) with
/// K = 6/(pi (m+1)!) + 24/(pi sqrt(2 pi)).
BoundReport remark1_bound(int m, double nu1, bool moments_zero_ok);

}  // namespace pmclt
