#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "example.hpp"
#include "signed_measure.hpp"
#include "support.hpp"

using namespace pmclt;
using namespace pmclt::testsupport;

TEST_CASE("gaussian spec has an identically vanishing H") {
  const auto h = build_h(gaussian_spec());
  for (int k = 3; k <= 6; ++k) CHECK(std::abs(pseudo_moment(h, k)) < 1e-14);
  CHECK(nu_inner(h, 3, 1) < 1e-14);
  CHECK(nu_tail(h, 3, 1) < 1e-14);
  const auto rep = pseudomoment_report(h, 3, 4);
  CHECK(rep.condition_ii_ok);
  CHECK(rep.moments_zero_ok);
  CHECK(rep.nu == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("signed pseudomoments match closed forms for uniform laws") {
  // E X^4 = 9/5 for U(-sqrt3, sqrt3), so mu_4 = 9/5 - 3 = -6/5.
  const auto hu = build_h(uniform_spec());
  CHECK(std::abs(pseudo_moment(hu, 3)) < 1e-12);
  CHECK(rel_err(pseudo_moment(hu, 4), -1.2) < 1e-10);
  CHECK(std::abs(pseudo_moment(hu, 5)) < 1e-11);
  // Sum of two: E S^4 = (2 E X^4 + 6)/4 = 12/5, so mu_4 = -3/5.
  const auto ht = build_h(triangular_spec());
  CHECK(std::abs(pseudo_moment(ht, 3)) < 1e-12);
  CHECK(rel_err(pseudo_moment(ht, 4), -0.6) < 1e-10);
}

TEST_CASE("odd pseudomoments vanish on every symmetric fixture") {
  for (const auto& spec :
       {uniform_spec(), triangular_spec(), repaint_spec(), staircase_spec(), atom_pair_spec()}) {
    const auto h = build_h(spec);
    CHECK(std::abs(pseudo_moment(h, 3)) < 1e-11);
    CHECK(std::abs(pseudo_moment(h, 5)) < 1e-11);
  }
}

TEST_CASE("example eps = 0.5: frozen pseudomoment values") {
  const auto h = build_h(build_example(0.5));
  CHECK(rel_err(pseudo_moment(h, 4), -0.000085947936145360602613) < 1e-8);
  CHECK(rel_err(pseudo_moment(h, 6), -0.000035142578390870523458) < 1e-8);
  CHECK(std::abs(pseudo_moment(h, 3)) < 1e-12);
  CHECK(std::abs(pseudo_moment(h, 5)) < 1e-12);

  const auto rep = pseudomoment_report(h, 3, 1);
  CHECK(rel_err(rep.nu1, 0.00062341876740057238305) < 1e-9);
  CHECK(rep.nu2 == 0.0);
  CHECK(rep.nu == rep.nu1);
  CHECK(rep.condition_ii_ok);
  CHECK(rep.moments_zero_ok);
}

TEST_CASE("example H is supported in [-eps, eps]: nu2 = 0, nu1 flat in n") {
  const auto h = build_h(build_example(0.5));
  const double base = nu_inner(h, 3, 1);
  for (long n : {1L, 2L, 5L, 16L, 64L}) {
    CHECK(nu_tail(h, 3, n) == 0.0);
    CHECK(rel_err(nu_inner(h, 3, n), base) < 1e-12);
  }
}

TEST_CASE("example sign changes include the phi = h crossing") {
  const auto h = build_h(build_example(0.5));
  const double x_c = 0.22016142701204508086;  // phi(x) = plateau height
  double best = kInf;
  for (double s : h.sign_change_points) best = std::min(best, std::abs(s - x_c));
  CHECK(best < 1e-9);
  // Mirror image and the plateau edge must be localized too.
  const double edge = 0.5 * 0.98339709945155948743;  // theta * eps
  double best_neg = kInf, best_edge = kInf;
  for (double s : h.sign_change_points) {
    best_neg = std::min(best_neg, std::abs(s + x_c));
    best_edge = std::min(best_edge, std::abs(s - edge));
  }
  CHECK(best_neg < 1e-9);
  CHECK(best_edge < 1e-9);
}

TEST_CASE("truncated pseudomoments agree with a brute-force oracle") {
  for (const auto& spec : {repaint_spec(), staircase_spec(), uniform_spec()}) {
    const auto h = build_h(spec);
    for (long n : {1L, 4L}) {
      const double got1 = nu_inner(h, 3, n);
      const double want1 = nu1_brute(spec, 3, n);
      INFO("nu1 n = ", n, " got ", got1, " want ", want1);
      CHECK(std::abs(got1 - want1) < 2e-7 + 2e-6 * want1);
      const double got2 = nu_tail(h, 3, n);
      const double want2 = nu2_brute(spec, 3, n);
      INFO("nu2 n = ", n, " got ", got2, " want ", want2);
      CHECK(std::abs(got2 - want2) < 2e-7 + 2e-6 * want2);
    }
  }
  // Higher order on one fixture.
  const auto h = build_h(repaint_spec());
  CHECK(std::abs(nu_inner(h, 5, 2) - nu1_brute(repaint_spec(), 5, 2)) < 2e-7);
  CHECK(std::abs(nu_tail(h, 5, 2) - nu2_brute(repaint_spec(), 5, 2)) < 2e-7);
}

TEST_CASE("atoms land in the inner or tail part depending on the cut") {
  const auto spec = atom_pair_spec();
  const auto h = build_h(spec);
  // Standardized atoms sit at +-1; the n = 1 cut keeps them inside.
  const double got = nu_inner(h, 3, 1);
  const double want = nu1_brute(spec, 3, 1);
  CHECK(std::abs(got - want) < 1e-6);
  CHECK(got > 1.0);  // the atom mass alone contributes 1^4 * 1
  CHECK(std::abs(nu_tail(h, 3, 1) - nu2_brute(spec, 3, 1)) < 1e-6);
  // At n = 4 the atoms stay inside the cut (1 <= 2) and the tail is pure phi.
  CHECK(std::abs(nu_tail(h, 3, 4) - nu2_brute(spec, 3, 4)) < 1e-6);
  const auto rep = pseudomoment_report(h, 3, 1);
  CHECK_FALSE(rep.condition_ii_ok);  // nu is far above the threshold
  CHECK(rep.nu1 > 1.0);
}

TEST_CASE("condition (ii) flags respond to moments and to nu separately") {
  // Example at m = 4: mu_4 is ~ -8.6e-5, which is not zero at tolerance.
  const auto he = build_h(build_example(0.5));
  const auto r4 = pseudomoment_report(he, 4, 2);
  CHECK_FALSE(r4.moments_zero_ok);
  CHECK_FALSE(r4.condition_ii_ok);
  REQUIRE(r4.mu.size() == 2);
  CHECK(std::abs(r4.mu[0]) < 1e-12);
  CHECK(rel_err(r4.mu[1], -0.000085947936145360602613) < 1e-8);

  // Triangular: mu_3 vanishes but nu is large, so only the moment half holds.
  const auto ht = build_h(triangular_spec());
  const auto rt = pseudomoment_report(ht, 3, 2);
  CHECK(rt.moments_zero_ok);
  CHECK_FALSE(rt.condition_ii_ok);
  CHECK(rt.nu > 0.11156508007421491447);

  // Repaint and staircase were built to satisfy condition (ii) at m = 3.
  for (const auto& spec : {repaint_spec(), staircase_spec()}) {
    const auto rep = pseudomoment_report(build_h(spec), 3, 2);
    CHECK(rep.condition_ii_ok);
    CHECK(rep.nu < 0.11156508007421491447);
    CHECK(rep.nu == std::max(rep.nu1, rep.nu2));
  }
}

TEST_CASE("standardization: sigma-scaled uniform carries the same H measure") {
  // X_scaled = sqrt3 X_unit, so H is the same signed measure; only the cut
  // radius sigma*sqrt(n) differs. Moments agree outright, truncated ones at
  // matched radii: sqrt(n_unit) = sqrt(3 n_scaled).
  const auto ha = build_h(uniform_spec());
  const auto hb = build_h(scaled_uniform_spec());
  for (int k = 3; k <= 6; ++k)
    CHECK(std::abs(pseudo_moment(ha, k) - pseudo_moment(hb, k)) < 1e-10);
  for (long nb : {1L, 3L}) {
    const long na = 3 * nb;
    CHECK(std::abs(nu_inner(ha, 4, na) - nu_inner(hb, 4, nb)) < 1e-10);
    CHECK(std::abs(nu_tail(ha, 4, na) - nu_tail(hb, 4, nb)) < 1e-10);
  }
}
