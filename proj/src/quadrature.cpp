#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "errors.hpp"

namespace pmclt {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15 nodes).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename V>
struct Panel {
  double a, b;
  V value;
  double error;
};

template <typename V>
Panel<V> gk15(const std::function<V(double)>& f, double a, double b) {
  double hl = 0.5 * (b - a);
  double c = 0.5 * (a + b);
  V fc = f(c);
  V resg = kWg[3] * fc;
  V resk = kWgk[7] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  V fv[15];
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    double dx = hl * kXgk[j];
    V f1 = f(c - dx);
    V f2 = f(c + dx);
    fv[j] = f1;
    fv[14 - j] = f2;
    V s = f1 + f2;
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  V mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  resasc *= std::abs(hl);
  resabs *= std::abs(hl);
  double err = std::abs(resk - resg) * std::abs(hl);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  double eps = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (eps > 0.0) err = std::max(err, eps);
  return {a, b, resk * hl, err};
}

template <typename V, typename R>
R adaptive(const std::function<V(double)>& f, double a, double b, double abs_tol, double rel_tol,
           int max_intervals) {
  R out{};
  if (a == b) {
    out.converged = true;
    return out;
  }
  auto cmp = [](const Panel<V>& x, const Panel<V>& y) { return x.error < y.error; };
  std::priority_queue<Panel<V>, std::vector<Panel<V>>, decltype(cmp)> heap(cmp);
  Panel<V> first = gk15<V>(f, a, b);
  V total = first.value;
  double err = first.error;
  heap.push(first);
  long evals = 15;
  int intervals = 1;
  for (;;) {
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol || intervals >= max_intervals) {
      out.value = total;
      out.abs_error = err;
      out.evaluations = evals;
      out.converged = err <= tol;
      return out;
    }
    Panel<V> worst = heap.top();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Worst interval reached floating-point resolution; keep its estimate.
      out.value = total;
      out.abs_error = err;
      out.evaluations = evals;
      out.converged = false;
      return out;
    }
    heap.pop();
    Panel<V> left = gk15<V>(f, worst.a, mid);
    Panel<V> right = gk15<V>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    evals += 30;
    intervals += 1;
  }
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        double rel_tol, int max_intervals) {
  return adaptive<double, QuadResult>(f, a, b, abs_tol, rel_tol, max_intervals);
}

QuadResultC integrate_gk_complex(const std::function<std::complex<double>(double)>& f, double a,
                                 double b, double abs_tol, double rel_tol, int max_intervals) {
  return adaptive<std::complex<double>, QuadResultC>(f, a, b, abs_tol, rel_tol, max_intervals);
}

QuadResult integrate_segments(const std::function<double(double)>& f,
                              const std::vector<double>& breakpoints, double abs_tol,
                              double rel_tol, int max_intervals_per_segment) {
  QuadResult out;
  out.converged = true;
  if (breakpoints.size() < 2) return out;
  double seg_tol = abs_tol / static_cast<double>(breakpoints.size() - 1);
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    QuadResult r =
        integrate_gk(f, breakpoints[i], breakpoints[i + 1], seg_tol, rel_tol,
                     max_intervals_per_segment);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  return out;
}

}  // namespace pmclt
