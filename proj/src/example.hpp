#pragma once

#include <complex>

#include "dist.hpp"

namespace pmclt {

/// Parameters of the built-in family: keep phi outside [-eps, eps], replace
/// the center by a uniform plateau on [-theta eps, theta eps] whose height
/// h restores total mass and whose half-width restores the variance.
struct ExampleParams {
  double epsilon = 0.0;
  double theta = 0.0;
  double uniform_height = 0.0;
};

/// Solves for theta by bracketed root-finding on the variance-matching
/// equation, with the central second moment evaluated by quadrature.
ExampleParams solve_example(double epsilon);

/// Assembles the three-piece spec (sigma = 1 by construction); the solved
/// parameters are recorded in the metadata block.
DistributionSpec build_example(double epsilon);

/// Characteristic function of the family, evaluated through the explicit
/// formula e^{-t^2/2} - int_{-eps}^{eps} cos(tx) phi(x) dx + 2 h sin(a t)/t
/// with the central integral done by quadrature. Deliberately independent
/// of the piecewise cf used by the distribution layer, so the two can be
/// cross-checked.
std::complex<double> example_cf(const ExampleParams& params, double t);

}  // namespace pmclt
