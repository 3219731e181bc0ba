#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace pmclt {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct QuadResultC {
  std::complex<double> value{0.0, 0.0};
  double abs_error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b]. Stops when the summed error
/// estimate drops below max(abs_tol, rel_tol * |integral|) or the interval
/// budget is exhausted (converged = false in that case; the caller decides
/// whether that is fatal).
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_intervals = 4000);

QuadResultC integrate_gk_complex(const std::function<std::complex<double>(double)>& f, double a,
                                 double b, double abs_tol, double rel_tol,
                                 int max_intervals = 4000);

/// Integrates across a sorted breakpoint partition, one adaptive pass per
/// segment, accumulating values and error estimates.
QuadResult integrate_segments(const std::function<double(double)>& f,
                              const std::vector<double>& breakpoints, double abs_tol,
                              double rel_tol, int max_intervals_per_segment = 4000);

}  // namespace pmclt
