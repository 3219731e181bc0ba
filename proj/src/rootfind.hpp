#pragma once

#include <functional>
#include <vector>

namespace pmclt {

/// Bracketing root finder: safeguarded secant/Newton steps that fall back to
/// bisection whenever a candidate leaves the bracket. Requires a sign change
/// on [lo, hi] (throws root_not_bracketed otherwise). `dfdx` is optional; when
/// present the candidate step is Newton instead of secant.
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12,
                 int max_iter = 200, const std::function<double(double)>& dfdx = nullptr);

/// Scans [a, b] with `scan_points` samples and bisects every sign change of f
/// to `tol`. Returns the refined crossing locations in increasing order.
/// Throws sign_localization_failure when more than `max_roots` crossings show up.
std::vector<double> locate_sign_changes(const std::function<double(double)>& f, double a, double b,
                                        int scan_points = 128, double tol = 1e-12,
                                        int max_roots = 64);

}  // namespace pmclt
