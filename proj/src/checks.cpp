#include "checks.hpp"

#include <cmath>
#include <complex>

#include "bounds.hpp"
#include "errors.hpp"

namespace pmclt {
namespace {

LemmaCheckRow make_row(const DistributionSpec& spec, const PseudomomentReport& pm, double t1,
                       double t) {
  LemmaCheckRow row;
  row.t = t;
  const std::complex<double> fy = cf(spec, t / spec.sigma);
  row.abs_f = std::abs(fy);
  row.branch = (pm.nu == 0.0 || t <= t1) ? 1 : 2;
  row.envelope = lemma2_envelope(pm.m, pm.nu, t);
  row.omega_abs = std::abs(fy - std::exp(-0.5 * t * t));
  row.omega_bound = lemma1_omega_bound(pm.m, pm.nu1, pm.nu2, t);
  const auto dominated = [](double v, double bound) {
    return v <= bound * (1.0 + 1e-12) + 1e-15;
  };
  row.ok = dominated(row.abs_f, row.envelope) && dominated(row.omega_abs, row.omega_bound);
  return row;
}

}  // namespace

LemmaCheckReport lemma_check_with(const DistributionSpec& spec, const PseudomomentReport& pm,
                                  int points_per_branch) {
  require(points_per_branch >= 1, errc::invalid_argument, "need at least one point per branch");
  require(pm.condition_ii_ok, errc::nu_out_of_range,
          "lemma check requires condition (ii): vanishing mu_3..mu_m and nu < (1/2) e^{-3/2}");
  LemmaCheckReport rep;
  rep.m = pm.m;
  rep.n = pm.n;
  rep.pseudomoments = pm;
  rep.t1 = t1_threshold(pm.nu);

  const double branch1_end = std::isfinite(rep.t1) ? rep.t1 : 20.0;
  for (int i = 1; i <= points_per_branch; ++i)
    rep.rows.push_back(make_row(spec, pm, rep.t1, branch1_end * i / points_per_branch));
  if (std::isfinite(rep.t1)) {
    for (int i = 1; i <= points_per_branch; ++i)
      rep.rows.push_back(
          make_row(spec, pm, rep.t1, rep.t1 + 3.0 * rep.t1 * i / points_per_branch));
  }

  for (const auto& row : rep.rows)
    if (!row.ok) ++rep.violations;
  rep.ok = rep.violations == 0;
  return rep;
}

LemmaCheckReport lemma_check(const DistributionSpec& spec, int m, long n, int points_per_branch) {
  const auto h = build_h(spec);
  return lemma_check_with(spec, pseudomoment_report(h, m, n), points_per_branch);
}

}  // namespace pmclt
