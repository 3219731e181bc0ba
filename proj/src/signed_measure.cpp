#include "signed_measure.hpp"

#include <algorithm>
#include <cmath>

#include "bounds.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "rootfind.hpp"
#include "special.hpp"

namespace pmclt {
namespace {

constexpr int kMaxSignChanges = 64;

/// Integrates g over [lo, hi] split at the given interior cut points; each
/// open cell is handled by adaptive Gauss-Kronrod. Cut points are assumed
/// sorted within [lo, hi] after clipping.
template <typename F>
double integrate_cells(F&& g, double lo, double hi, const std::vector<double>& cuts,
                       bool take_abs_per_cell) {
  std::vector<double> edges;
  edges.push_back(lo);
  for (double c : cuts)
    if (c > lo && c < hi) edges.push_back(c);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    const auto r = integrate_gk(g, edges[i], edges[i + 1], 1e-15, 1e-12, 3000);
    require(r.converged, errc::quadrature_failure,
            "pseudomoment integral failed to converge on a subinterval");
    total += take_abs_per_cell ? std::abs(r.value) : r.value;
  }
  return total;
}

double sign_of(double v) {
  if (v > 1e-300) return 1.0;
  if (v < -1e-300) return -1.0;
  return 0.0;
}

}  // namespace

double SignedMeasureH::density_delta(double x) const {
  return spec.sigma * pdf(spec, spec.sigma * x) - normal_pdf(x);
}

SignedMeasureH build_h(const DistributionSpec& spec) {
  SignedMeasureH h;
  h.spec = spec;
  for (const auto& at : spec.atoms) h.atoms.push_back({at.location / spec.sigma, at.mass});
  for (double bp : spec.breakpoints()) h.breakpoints.push_back(bp / spec.sigma);

  const double bp_reach = h.breakpoints.empty()
                              ? 0.0
                              : std::max(std::abs(h.breakpoints.front()), std::abs(h.breakpoints.back()));
  // phi and any standardized gaussian tail are gone long before this radius,
  // and so is any crossing between them when sigma != 1.
  h.scan_radius = std::max(12.0, bp_reach + 12.0 / std::min(1.0, spec.sigma));

  auto delta = [&](double x) { return h.density_delta(x); };
  std::vector<double> edges;
  edges.push_back(-h.scan_radius);
  for (double bp : h.breakpoints)
    if (std::abs(bp) < h.scan_radius) edges.push_back(bp);
  edges.push_back(h.scan_radius);
  std::sort(edges.begin(), edges.end());

  std::vector<double> changes;
  const double off = 1e-9;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    const double l = edges[i], r = edges[i + 1];
    if (!(r - l > 4.0 * off)) continue;
    auto roots = locate_sign_changes(delta, l + off, r - off, 128, 1e-12,
                                     kMaxSignChanges - static_cast<int>(changes.size()));
    changes.insert(changes.end(), roots.begin(), roots.end());
    // Jump crossings: delta can pass through zero discontinuously at a kink.
    if (i + 2 < edges.size()) {
      const double sl = sign_of(delta(r - off));
      const double sr = sign_of(delta(r + off));
      if (sl * sr < 0.0) changes.push_back(r);
    }
    require(changes.size() <= kMaxSignChanges, errc::sign_localization_failure,
            "delta has more sign changes than the localization cap");
  }
  std::sort(changes.begin(), changes.end());
  h.sign_change_points = std::move(changes);
  return h;
}

double pseudo_moment(const SignedMeasureH& h, int k) {
  require(k >= 0 && k <= kMaxBoundOrder + 1, errc::invalid_argument,
          "pseudomoment order out of range");
  auto g = [&](double x) {
    const double d = h.density_delta(x);
    if (d == 0.0) return 0.0;  // avoid inf * 0 when |x|^k overflows in dead tails
    return std::pow(x, k) * d;
  };
  std::vector<double> cuts = h.breakpoints;
  cuts.push_back(0.0);
  const double r = h.scan_radius + 36.0;
  double total = integrate_cells(g, -r, r, cuts, /*take_abs_per_cell=*/false);
  for (const auto& at : h.atoms) total += at.mass * std::pow(at.location, k);
  return total;
}

namespace {

/// Common core of nu1/nu2: integral of |x|^p |delta| over [lo, hi], split so
/// each cell has constant delta sign, plus matching atom contributions.
double abs_pseudo_integral(const SignedMeasureH& h, int p, double lo, double hi) {
  auto g = [&](double x) {
    const double d = h.density_delta(x);
    if (d == 0.0) return 0.0;
    return std::pow(std::abs(x), p) * d;
  };
  std::vector<double> cuts = h.breakpoints;
  cuts.insert(cuts.end(), h.sign_change_points.begin(), h.sign_change_points.end());
  cuts.push_back(0.0);
  return integrate_cells(g, lo, hi, cuts, /*take_abs_per_cell=*/true);
}

}  // namespace

double nu_inner(const SignedMeasureH& h, int m, long n) {
  require(m >= kMinBoundOrder, errc::invalid_argument, "m must be at least 3");
  require(m <= kMaxBoundOrder, errc::overflow, "m exceeds the supported pseudomoment order");
  require(n >= 1, errc::n_out_of_range, "n must be at least 1");
  const double cut = h.spec.sigma * std::sqrt(static_cast<double>(n));
  const double lo = std::max(-cut, -(h.scan_radius + 36.0));
  const double hi = std::min(cut, h.scan_radius + 36.0);
  double total = hi > lo ? abs_pseudo_integral(h, m + 1, lo, hi) : 0.0;
  for (const auto& at : h.atoms)
    if (std::abs(at.location) <= cut) total += at.mass * std::pow(std::abs(at.location), m + 1);
  return total;
}

double nu_tail(const SignedMeasureH& h, int m, long n) {
  require(m >= kMinBoundOrder, errc::invalid_argument, "m must be at least 3");
  require(m <= kMaxBoundOrder, errc::overflow, "m exceeds the supported pseudomoment order");
  require(n >= 1, errc::n_out_of_range, "n must be at least 1");
  const double cut = h.spec.sigma * std::sqrt(static_cast<double>(n));
  // Extend outward in doubling blocks until a block stops mattering; wide
  // standardized tails (sigma < 1) genuinely push mass far out.
  double total = 0.0;
  double lo = cut;
  double hi = std::max(cut + 8.0, h.scan_radius + 36.0);
  for (int round = 0; round < 24; ++round) {
    const double block = abs_pseudo_integral(h, m, lo, hi) + abs_pseudo_integral(h, m, -hi, -lo);
    total += block;
    if (block <= 1e-14 * std::max(total, 1e-300)) break;
    lo = hi;
    hi *= 2.0;
    if (lo > 1e4) break;
  }
  for (const auto& at : h.atoms)
    if (std::abs(at.location) > cut) total += at.mass * std::pow(std::abs(at.location), m);
  return total;
}

PseudomomentReport pseudomoment_report(const SignedMeasureH& h, int m, long n) {
  require(m >= kMinBoundOrder, errc::invalid_argument, "m must be at least 3");
  require(m <= kMaxBoundOrder, errc::overflow, "m exceeds the supported pseudomoment order");
  require(n >= 1, errc::n_out_of_range, "n must be at least 1");
  PseudomomentReport rep;
  rep.m = m;
  rep.n = n;
  rep.moments_zero_ok = true;
  for (int k = 3; k <= m; ++k) {
    const double mu = pseudo_moment(h, k);
    rep.mu.push_back(mu);
    if (std::abs(mu) > kTauPseudo) rep.moments_zero_ok = false;
  }
  rep.nu1 = nu_inner(h, m, n);
  rep.nu2 = nu_tail(h, m, n);
  rep.nu = std::max(rep.nu1, rep.nu2);
  rep.condition_ii_ok = rep.moments_zero_ok && rep.nu < half_e_threshold();
  return rep;
}

}  // namespace pmclt
