#include "rootfind.hpp"

#include <cmath>

#include "errors.hpp"

namespace pmclt {

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                 int max_iter, const std::function<double(double)>& dfdx) {
  require(lo < hi, errc::invalid_argument, "find_root: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  require(std::signbit(flo) != std::signbit(fhi), errc::root_not_bracketed,
          "find_root: no sign change on the given bracket");
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int it = 0; it < max_iter; ++it) {
    if (fx == 0.0) return x;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (hi - lo < tol * (1.0 + std::abs(lo))) return 0.5 * (lo + hi);
    double candidate;
    if (dfdx) {
      double d = dfdx(x);
      candidate = (d != 0.0) ? x - fx / d : lo - 1.0;
    } else {
      double denom = fhi - flo;
      candidate = (denom != 0.0) ? lo - flo * (hi - lo) / denom : lo - 1.0;
    }
    if (!(candidate > lo && candidate < hi)) candidate = 0.5 * (lo + hi);
    x = candidate;
    fx = f(x);
  }
  return 0.5 * (lo + hi);
}

std::vector<double> locate_sign_changes(const std::function<double(double)>& f, double a, double b,
                                        int scan_points, double tol, int max_roots) {
  std::vector<double> roots;
  if (!(a < b) || scan_points < 2) return roots;
  // A sign change needs strictly nonzero values on both sides; exact zeros
  // (identically vanishing stretches, dead tails) are bridged, not roots.
  double last_x = a;
  double last_f = f(a);
  for (int i = 1; i <= scan_points; ++i) {
    double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(scan_points);
    double fx = f(x);
    if (fx == 0.0) continue;
    if (last_f != 0.0 && std::signbit(fx) != std::signbit(last_f)) {
      double lo = last_x, hi = x, flo = last_f;
      while (hi - lo > tol * (1.0 + std::abs(lo))) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
      if (static_cast<int>(roots.size()) > max_roots)
        fail(errc::sign_localization_failure,
             "locate_sign_changes: more than " + std::to_string(max_roots) + " sign changes");
    }
    last_x = x;
    last_f = fx;
  }
  return roots;
}

}  // namespace pmclt
