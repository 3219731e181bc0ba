#include "bounds.hpp"

#include <cmath>
#include <limits>

#include "dist.hpp"
#include "errors.hpp"
#include "special.hpp"

namespace pmclt {
namespace {

long double int_pow_l(long double base, int k) {
  long double v = 1.0L;
  for (int i = 0; i < k; ++i) v *= base;
  return v;
}

/// 12^{x} for x integer or half-integer, computed so integer exponents stay
/// exact products (c1(3) must come out as 6/pi to the last bit).
long double pow12_half(int twice_exponent) {
  const int k = twice_exponent / 2;
  long double v = int_pow_l(12.0L, k);
  if (twice_exponent % 2 != 0) v *= sqrtl(12.0L);
  return v;
}

long double factorial_l(int n) {
  long double v = 1.0L;
  for (int i = 2; i <= n; ++i) v *= i;
  return v;
}

/// Gamma(j/2) exactly: integer args via factorial, half-integer via the
/// double-factorial identity Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!).
long double gamma_half_l(int twice_arg) {
  if (twice_arg % 2 == 0) return factorial_l(twice_arg / 2 - 1);
  const int k = (twice_arg - 1) / 2;
  return factorial_l(2 * k) * sqrtl(3.14159265358979323846264338327950288L) /
         (int_pow_l(4.0L, k) * factorial_l(k));
}

const long double kPiL = 3.14159265358979323846264338327950288L;

long double c1_l(int m) {
  // 12^{(m+1)/2} Gamma((m+1)/2) / (pi (m+1)!)
  return pow12_half(m + 1) * gamma_half_l(m + 1) / (kPiL * factorial_l(m + 1));
}

long double c3_l(int m) {
  // 12^{(m+2)/2} Gamma(m/2 + 1) / (4 pi (m+1)!)
  return pow12_half(m + 2) * gamma_half_l(m + 2) / (4.0L * kPiL * factorial_l(m + 1));
}

void check_order(int m) {
  require(m >= kMinBoundOrder, errc::invalid_argument, "pseudomoment order m must be at least 3");
  require(m <= kMaxBoundOrder, errc::overflow,
          "pseudomoment order m exceeds " + std::to_string(kMaxBoundOrder) +
              "; intermediate factorials would overflow");
}

double half_power(double base, int twice_exponent) {
  return std::pow(base, 0.5 * twice_exponent);
}

void fill_common(BoundReport& rep, const BoundInputs& in, bool uses_cf_l1) {
  rep.m = in.m;
  rep.n = in.n;
  rep.nu1 = in.nu1;
  rep.nu2 = in.nu2;
  rep.nu = in.nu;
  // The geometric term grows with A, so evaluating it at the scanned norm
  // plus the truncation residual keeps the total an upper bound even when
  // the scan stopped short of full convergence.
  rep.a = std::isfinite(in.cf_l1) ? in.cf_l1 + in.cf_l1_truncation : in.cf_l1;
  rep.a1 = in.density_sup;
  rep.sigma = in.sigma;
  rep.b = (std::isfinite(rep.a) && rep.a > 0.0) ? geometric_base_b(rep.a, in.sigma)
                                                : std::numeric_limits<double>::quiet_NaN();
  rep.b1 = (std::isfinite(in.density_sup) && in.density_sup > 0.0)
               ? geometric_base_b1(in.density_sup, in.sigma)
               : std::numeric_limits<double>::quiet_NaN();
  rep.valid = in.condition_ii_ok;
  if (!in.condition_ii_ok)
    rep.validity_notes.push_back("condition (ii) does not hold for this spec; the bound formula is "
                                 "evaluated but carries no guarantee");
  // A residual comparable to the norm itself means |f| shows no sign of
  // integrability within the scan window; the padded A is then a guess, not
  // a certificate.
  if (uses_cf_l1 && in.cf_l1_truncation > 0.1 * std::max(in.cf_l1, 1.0)) {
    rep.valid = false;
    rep.validity_notes.push_back("cf L1 scan did not converge within its cutoff; the geometric "
                                 "term is evaluated at the norm padded by the residual");
  }
}

void check_nu_inputs(const BoundInputs& in) {
  require(in.nu1 >= 0.0 && in.nu2 >= 0.0 && in.nu >= 0.0 && std::isfinite(in.nu1) &&
              std::isfinite(in.nu2) && std::isfinite(in.nu),
          errc::invalid_argument, "pseudomoment inputs must be finite and nonnegative");
  require(std::isfinite(in.sigma) && in.sigma > 0.0, errc::invalid_argument,
          "sigma must be finite and positive");
}

constexpr double kTwoPlusPiSq = (2.0 + kPi) * (2.0 + kPi);

}  // namespace

double half_e_threshold() { return 0.5 * std::exp(-1.5); }

BoundConstants bound_constants(int m) {
  check_order(m);
  BoundConstants c;
  c.m = m;
  c.c1 = static_cast<double>(c1_l(m));
  c.c2 = static_cast<double>(2.0L * c1_l(m - 1));
  c.c3 = static_cast<double>(c3_l(m));
  c.c4 = static_cast<double>(2.0L * c3_l(m - 1));
  return c;
}

double t1_threshold(double nu) {
  require(std::isfinite(nu) && nu >= 0.0, errc::invalid_argument, "nu must be finite and nonnegative");
  if (nu == 0.0) return kInf;
  const double arg = 2.0 * std::exp(1.0) * nu;
  require(arg < 1.0, errc::nu_out_of_range,
          "t1 threshold undefined: 2 e nu >= 1 (nu = " + std::to_string(nu) + ")");
  return std::sqrt(-2.0 * std::log(arg));
}

Thresholds thresholds(int m, long n, double nu1, double nu2, double nu) {
  check_order(m);
  require(n >= 1, errc::n_out_of_range, "n must be at least 1");
  Thresholds th;
  th.t1 = t1_threshold(nu);
  const long double npow1 = powl(static_cast<long double>(n), 0.5L * (m - 1));
  const long double npow2 = powl(static_cast<long double>(n), 0.5L * (m - 2));
  th.c1mn = static_cast<double>(pow12_half(m - 1) * gamma_half_l(m + 1) /
                                (2.0L * npow1 * factorial_l(m + 1)));
  th.c2mn = static_cast<double>(pow12_half(m - 2) * gamma_half_l(m) / (npow2 * factorial_l(m)));
  const double denom = kSqrt2Pi * (th.c1mn * nu1 + th.c2mn * nu2);
  th.t2 = denom > 0.0 ? 1.0 / denom : kInf;
  th.t3 = std::min(th.t1 * std::sqrt(static_cast<double>(n)), th.t2);
  return th;
}

double lemma1_omega_bound(int m, double nu1, double nu2, double t) {
  check_order(m);
  const double at = std::abs(t);
  return std::pow(at, m + 1) / factorial(m + 1) * nu1 + 2.0 * std::pow(at, m) / factorial(m) * nu2;
}

double lemma2_envelope(int m, double nu, double t) {
  check_order(m);
  require(std::isfinite(nu) && nu >= 0.0 && nu < half_e_threshold(), errc::nu_out_of_range,
          "lemma-2 envelope requires nu < (1/2) e^{-3/2}");
  const double at = std::abs(t);
  if (nu == 0.0 || at <= t1_threshold(nu)) return std::exp(-t * t / 6.0);
  return (2.0 * std::exp(1.0) + 0.375) * nu * std::pow(at, m + 1);
}

double statulevicius_bound(double density_sup, double sigma, double t) {
  require(std::isfinite(density_sup) && density_sup > 0.0, errc::invalid_argument,
          "density sup must be finite and positive");
  require(std::isfinite(sigma) && sigma > 0.0, errc::invalid_argument, "sigma must be positive");
  const double den = 2.0 * sigma * std::abs(t) + kPi;
  return std::exp(-t * t / (96.0 * density_sup * density_sup * den * den));
}

double derived_density_bound(double cf_l1) {
  require(std::isfinite(cf_l1) && cf_l1 > 0.0, errc::invalid_argument,
          "cf L1 norm must be finite and positive");
  return cf_l1 / (2.0 * kPi);
}

double geometric_base_b(double cf_l1, double sigma) {
  require(std::isfinite(cf_l1) && cf_l1 > 0.0, errc::invalid_argument,
          "cf L1 norm must be finite and positive");
  return std::exp(-kPi * kPi / (24.0 * cf_l1 * cf_l1 * sigma * sigma * kTwoPlusPiSq));
}

double geometric_base_b1(double density_sup, double sigma) {
  require(std::isfinite(density_sup) && density_sup > 0.0, errc::invalid_argument,
          "density sup must be finite and positive");
  return std::exp(-1.0 / (96.0 * density_sup * density_sup * sigma * sigma * kTwoPlusPiSq));
}

BoundReport theorem1_bound(const BoundInputs& in) {
  const auto c = bound_constants(in.m);
  check_nu_inputs(in);
  require(in.n >= 2, errc::n_out_of_range, "theorem-1 bound requires n >= 2");
  require(!in.atoms_present, errc::atoms_present,
          "theorem-1 bound requires an integrable cf; the spec carries atoms");
  require(std::isfinite(in.cf_l1) && in.cf_l1 > 0.0, errc::invalid_argument,
          "theorem-1 bound needs a finite positive cf L1 norm");
  BoundReport rep;
  rep.kind = "theorem1";
  fill_common(rep, in, /*uses_cf_l1=*/true);
  const double nd = static_cast<double>(in.n);
  rep.main_nu1_term = 2.0 * c.c1 * in.nu1 / half_power(nd, in.m - 1);
  rep.main_nu2_term = 2.0 * c.c2 * in.nu2 / half_power(nd, in.m - 2);
  rep.geometric_term = in.sigma * rep.a / kPi * std::pow(rep.b, static_cast<double>(in.n - 1));
  rep.exponential_term = in.nu * (4.0 * std::exp(1.5) / kPi) * std::exp(-0.5 * nd) / nd;
  rep.total = rep.main_nu1_term + rep.main_nu2_term + rep.geometric_term + rep.exponential_term;
  return rep;
}

BoundReport corollary1_bound(const BoundInputs& in) {
  const auto c = bound_constants(in.m);
  check_nu_inputs(in);
  require(in.n >= 3, errc::n_out_of_range, "corollary-1 bound requires n >= 3");
  require(!in.atoms_present, errc::atoms_present,
          "corollary-1 bound requires a bounded density; the spec carries atoms");
  require(std::isfinite(in.density_sup) && in.density_sup > 0.0, errc::invalid_argument,
          "corollary-1 bound needs a finite positive density sup");
  BoundReport rep;
  rep.kind = "corollary1";
  fill_common(rep, in, /*uses_cf_l1=*/false);
  const double nd = static_cast<double>(in.n);
  rep.main_nu1_term = 2.0 * c.c1 * in.nu1 / half_power(nd, in.m - 1);
  rep.main_nu2_term = 2.0 * c.c2 * in.nu2 / half_power(nd, in.m - 2);
  rep.geometric_term = 2.0 * in.sigma * in.density_sup * std::pow(rep.b1, static_cast<double>(in.n - 2));
  rep.exponential_term = in.nu * (4.0 * std::exp(1.5) / kPi) * std::exp(-0.5 * nd) / nd;
  rep.total = rep.main_nu1_term + rep.main_nu2_term + rep.geometric_term + rep.exponential_term;
  return rep;
}

BoundReport theorem2_bound(const BoundInputs& in) {
  const auto c = bound_constants(in.m);
  check_nu_inputs(in);
  require(in.n >= 2, errc::n_out_of_range, "theorem-2 bound requires n >= 2");
  require(!in.atoms_present, errc::atoms_present,
          "theorem-2 bound requires an integrable cf; the spec carries atoms");
  require(std::isfinite(in.cf_l1) && in.cf_l1 > 0.0, errc::invalid_argument,
          "theorem-2 bound needs a finite positive cf L1 norm");
  BoundReport rep;
  rep.kind = "theorem2";
  fill_common(rep, in, /*uses_cf_l1=*/true);
  const double nd = static_cast<double>(in.n);
  rep.main_nu1_term = c.c3 * in.nu1 / half_power(nd, in.m - 1);
  rep.main_nu2_term = c.c4 * in.nu2 / half_power(nd, in.m - 2);
  rep.geometric_term = std::pow(rep.b, static_cast<double>(in.n - 1)) *
                       (in.sigma * std::sqrt(nd) / (2.0 * kPi)) * rep.a;
  const double e32 = std::exp(1.5) / kPi;
  rep.exponential_term = in.nu * e32 * std::exp(-0.5 * nd) / nd;
  rep.exponential_term_proof_variant = in.nu * e32 * std::exp(-0.5 * nd) / std::sqrt(nd);
  rep.total = rep.main_nu1_term + rep.main_nu2_term + rep.geometric_term + rep.exponential_term;
  rep.total_proof_variant = rep.main_nu1_term + rep.main_nu2_term + rep.geometric_term +
                            rep.exponential_term_proof_variant;
  rep.has_proof_variant = true;
  return rep;
}

BoundReport remark1_bound(int m, double nu1, bool moments_zero_ok) {
  check_order(m);
  require(std::isfinite(nu1) && nu1 >= 0.0, errc::invalid_argument,
          "nu1 must be finite and nonnegative");
  BoundReport rep;
  rep.kind = "remark1";
  rep.m = m;
  rep.n = 1;
  rep.nu1 = nu1;
  rep.nu = nu1;
  rep.sigma = 1.0;
  rep.constant = 6.0 / (kPi * factorial(m + 1)) + 24.0 / (kPi * kSqrt2Pi);
  rep.constant_stated_variant = 6.0 / (kPi * factorial(m + 1)) + 2.0 / (kPi * kSqrt2Pi);
  const double arg = std::max(nu1, std::pow(nu1, 1.0 / (m + 2)));
  rep.main_nu1_term = rep.constant * arg;
  rep.total = rep.main_nu1_term;
  rep.total_stated_variant = rep.constant_stated_variant * arg;
  rep.has_remark_constants = true;
  rep.valid = moments_zero_ok;
  if (!moments_zero_ok)
    rep.validity_notes.push_back("pseudomoments mu_3..mu_m are not all zero; the n = 1 bound "
                                 "carries no guarantee");
  if (rep.total > 1.0)
    rep.validity_notes.push_back("bound exceeds 1 and is trivially true");
  return rep;
}

}  // namespace pmclt
