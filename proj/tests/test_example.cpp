#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <string>

#include "doctest.h"
#include "bounds.hpp"
#include "dist.hpp"
#include "errors.hpp"
#include "example.hpp"
#include "quadrature.hpp"
#include "special.hpp"
#include "support.hpp"

using namespace pmclt;
using namespace pmclt::testsupport;

TEST_CASE("solved parameters match the closed forms") {
  // theta^2 = 3 (Phi(eps) - 1/2 - eps phi(eps)) / (eps^2 (Phi(eps) - 1/2)),
  // h = (Phi(eps) - 1/2) / (theta eps); frozen from an independent solver.
  const double table[5][3] = {
      {0.05, 0.99983333929001267355, 0.39884258815636455448},
      {0.1, 0.99933342884641893455, 0.39854403072460276071},
      {0.3, 0.99400791391922816128, 0.39540738907548903031},
      {0.5, 0.98339709945155948743, 0.38938992474310064285},
      {0.9, 0.94676455216775913611, 0.37078311008423241083},
  };
  for (const auto& row : table) {
    const auto p = solve_example(row[0]);
    INFO("eps = ", row[0]);
    CHECK(rel_err(p.theta, row[1]) < 1e-12);
    CHECK(rel_err(p.uniform_height, row[2]) < 1e-12);
    CHECK(p.epsilon == row[0]);
  }
  CHECK(solve_example(0.01).theta > 0.999);
}

TEST_CASE("epsilon domain is the open unit interval") {
  for (double eps : {1.5, 0.0, 1.0, -0.2, std::nan("")}) {
    try {
      (void)solve_example(eps);
      FAIL("expected a domain error for eps = ", eps);
    } catch (const Error& e) {
      CHECK(e.code() == errc::invalid_argument);
      CHECK(std::string(e.what()) == "epsilon out of (0,1)");
    }
  }
}

TEST_CASE("assembled spec: metadata, standardization, plateau sup") {
  const auto spec = build_example(0.5);
  CHECK(spec.sigma == 1.0);
  REQUIRE(spec.metadata.count("epsilon") == 1);
  REQUIRE(spec.metadata.count("theta") == 1);
  REQUIRE(spec.metadata.count("uniform_height") == 1);
  CHECK(spec.metadata.at("epsilon") == 0.5);
  CHECK(rel_err(spec.metadata.at("theta"), 0.98339709945155948743) < 1e-12);

  const auto rep = validate(spec);
  CHECK(std::abs(rep.mass_defect) < 1e-10);
  CHECK(std::abs(rep.mean) < 1e-9);
  CHECK(std::abs(rep.variance - 1.0) < 1e-9);
  // The density sup is the plateau height (it beats phi everywhere on it).
  CHECK(rel_err(rep.density_sup, 0.38938992474310064285) < 1e-11);
}

TEST_CASE("plateau height beats the clipped gaussian for every epsilon") {
  for (double eps : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto p = solve_example(eps);
    CHECK(p.uniform_height > normal_pdf(eps));
    CHECK(p.theta < 1.0);
    CHECK(p.theta > 0.9);
  }
}

TEST_CASE("cdf is continuous across the plateau and clip edges") {
  const auto spec = build_example(0.5);
  const double eps = 0.5, edge = 0.5 * 0.98339709945155948743;
  for (double x : {-eps, -edge, edge, eps}) {
    const double lo = cdf(spec, x - 1e-13);
    const double hi = cdf(spec, x + 1e-13);
    CHECK(std::abs(hi - lo) < 1e-12);
  }
  CHECK(std::abs(cdf(spec, 0.0) - 0.5) < 1e-13);
  // The gap (theta eps, eps) carries no mass.
  CHECK(std::abs(cdf(spec, eps - 1e-9) - cdf(spec, edge + 1e-9)) < 1e-11);
  CHECK(pdf(spec, 0.5 * (edge + eps)) == 0.0);
}

TEST_CASE("explicit cf formula agrees with the piecewise layer") {
  const auto p = solve_example(0.5);
  const auto spec = build_example(0.5);
  // Frozen values of the real part from an independent evaluation.
  const double table[7][2] = {
      {0.0, 1.0},
      {0.5, 0.88249667952342476791},
      {1.0, 0.6065271270862733595},
      {2.0, 0.13528103954762635396},
      {5.0, -0.0015702816177131548687},
      {12.0, -0.0053650257536616680196},
      {40.0, -0.0017748265450683782195},
  };
  for (const auto& row : table) {
    const double t = row[0];
    const auto via_formula = example_cf(p, t);
    const auto via_pieces = cf(spec, t);
    INFO("t = ", t);
    CHECK(std::abs(via_formula.real() - row[1]) < 1e-12);
    CHECK(std::abs(via_formula.imag()) < 1e-12);
    CHECK(std::abs(via_formula - via_pieces) < 1e-10);
  }
}

TEST_CASE("second-moment identity defining theta, and its admissibility") {
  for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto p = solve_example(eps);
    const double lhs =
        integrate_gk([](double x) { return x * x * normal_pdf(x); }, 0.0, eps, 1e-14, 1e-12)
            .value;
    // Root equation: theta^2 eps^2 (Phi(eps)-1/2) / 3 = int_0^eps x^2 phi.
    const double rhs = p.theta * p.theta * eps * eps * (normal_cdf(eps) - 0.5) / 3.0;
    INFO("eps = ", eps);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    // Admissibility (theta <= 1 solvable): int_0^eps x^2 phi <= eps^2/3 (Phi(eps)-1/2).
    CHECK(lhs <= eps * eps / 3.0 * (normal_cdf(eps) - 0.5) + 1e-15);
  }
  const double at_half =
      integrate_gk([](double x) { return x * x * normal_pdf(x); }, 0.0, 0.5, 1e-14, 1e-12).value;
  CHECK(rel_err(at_half, 0.01542979789186336475) < 1e-13);
}

TEST_CASE("nu1 ceiling and the geometric base frozen for eps = 0.5") {
  // 4 eps^4 (Phi(eps) - 1/2) at eps = 0.5.
  const double ceiling = 4.0 * std::pow(0.5, 4) * (normal_cdf(0.5) - 0.5);
  CHECK(rel_err(ceiling, 0.047865615318503275909) < 1e-13);
  CHECK(rel_err(geometric_base_b1(0.38938992474310064285, 1.0), 0.99740462674314551622) <
        1e-13);
}
