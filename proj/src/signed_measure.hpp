#pragma once

#include <vector>

#include "dist.hpp"

namespace pmclt {

/// The signed measure H = F(sigma .) - Phi on the standardized axis. Its
/// absolutely continuous part has density delta(x) = sigma p(sigma x) -
/// phi(x); its atoms are the spec's atoms with standardized locations (Phi
/// contributes none).
struct SignedMeasureH {
  DistributionSpec spec;
  std::vector<Atom> atoms;                 // location / sigma, mass unchanged
  std::vector<double> breakpoints;         // standardized kinks of delta
  std::vector<double> sign_change_points;  // zeros and jump crossings of delta
  double scan_radius = 0.0;

  double density_delta(double x) const;
};

SignedMeasureH build_h(const DistributionSpec& spec);

/// Signed pseudomoment integral x^k dH, domain split at breakpoints and 0.
double pseudo_moment(const SignedMeasureH& h, int k);

/// nu1: |x|^{m+1} |dH| over |x| <= sigma sqrt(n).
double nu_inner(const SignedMeasureH& h, int m, long n);
/// nu2: |x|^m |dH| over |x| > sigma sqrt(n).
double nu_tail(const SignedMeasureH& h, int m, long n);

struct PseudomomentReport {
  int m = 3;
  std::vector<double> mu;  // mu_3 .. mu_m
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu = 0.0;
  long n = 1;
  bool condition_ii_ok = false;
  bool moments_zero_ok = false;  // the mu part of condition (ii) alone
};

PseudomomentReport pseudomoment_report(const SignedMeasureH& h, int m, long n);

}  // namespace pmclt
