#include "example.hpp"

#include <cmath>

#include "errors.hpp"
#include "quadrature.hpp"
#include "rootfind.hpp"
#include "special.hpp"

namespace pmclt {

ExampleParams solve_example(double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < 1.0, errc::invalid_argument,
          "epsilon out of (0,1)");
  const double tail_mass_half = normal_cdf(epsilon) - 0.5;  // Phi(eps) - 1/2
  const auto central = integrate_gk([](double x) { return x * x * normal_pdf(x); }, 0.0, epsilon,
                                    1e-15, 1e-13, 2000);
  require(central.converged, errc::quadrature_failure, "central second-moment integral failed");

  // Variance matching: (theta eps)^2 (Phi(eps) - 1/2) / 3 = int_0^eps x^2 phi.
  auto g = [&](double th) { return th * th * epsilon * epsilon * tail_mass_half / 3.0 - central.value; };
  auto dg = [&](double th) { return 2.0 * th * epsilon * epsilon * tail_mass_half / 3.0; };
  const double theta = find_root(g, 1e-6, 1.0, 1e-15, 200, dg);

  ExampleParams p;
  p.epsilon = epsilon;
  p.theta = theta;
  p.uniform_height = tail_mass_half / (theta * epsilon);
  return p;
}

DistributionSpec build_example(double epsilon) {
  const ExampleParams p = solve_example(epsilon);
  const double a = p.theta * p.epsilon;
  DistributionSpec spec;
  spec.sigma = 1.0;
  spec.pieces.push_back({PieceFamily::gaussian_restriction, -kInf, -p.epsilon, 1.0, {}});
  spec.pieces.push_back({PieceFamily::uniform, -a, a, p.uniform_height, {}});
  spec.pieces.push_back({PieceFamily::gaussian_restriction, p.epsilon, kInf, 1.0, {}});
  spec.metadata["epsilon"] = p.epsilon;
  spec.metadata["theta"] = p.theta;
  spec.metadata["uniform_height"] = p.uniform_height;
  return spec;
}

std::complex<double> example_cf(const ExampleParams& params, double t) {
  const double eps = params.epsilon;
  const double a = params.theta * eps;
  // abs_tol must clear the rule's round-off floor (~50 eps * int |cos| phi).
  const auto mid = integrate_gk([&](double x) { return std::cos(t * x) * normal_pdf(x); }, 0.0, eps,
                                1e-14, 1e-13, 2000);
  require(mid.converged, errc::quadrature_failure, "example cf integral failed");
  const double uniform_part =
      t == 0.0 ? 2.0 * params.uniform_height * a
               : 2.0 * params.uniform_height * std::sin(a * t) / t;
  // Symmetric spec: the cf is real.
  return std::exp(-0.5 * t * t) - 2.0 * mid.value + uniform_part;
}

}  // namespace pmclt
