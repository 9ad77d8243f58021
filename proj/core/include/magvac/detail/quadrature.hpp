#ifndef MAGVAC_DETAIL_QUADRATURE_HPP
#define MAGVAC_DETAIL_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace magvac::detail {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // absolute estimate
  bool converged = false;
  std::size_t intervals = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_intervals = 4000;
};

namespace gk15 {
// QUADPACK qk15 abscissae and weights
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel evaluate(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrod[j] * sum;
    if (j % 2 == 1) gauss += kGauss[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}
}  // namespace gk15

/// Global adaptive Gauss-Kronrod (7/15) on [a, b]: the panel with the
/// largest error estimate is bisected until the summed estimate drops below
/// max(abs_tol, rel_tol |I|).
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  std::priority_queue<gk15::Panel> heap;
  heap.push(gk15::evaluate(f, a, b));
  double value = heap.top().value;
  double error = heap.top().error;
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (error <= target) {
      r.converged = true;
      break;
    }
    if (heap.size() >= opt.max_intervals) break;
    const gk15::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const gk15::Panel left = gk15::evaluate(f, worst.a, mid);
    const gk15::Panel right = gk15::evaluate(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum to shed the drift of the running totals
  r.value = 0.0;
  r.error = 0.0;
  r.intervals = heap.size();
  std::vector<gk15::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    r.value += p.value;
    r.error += p.error;
  }
  if (!r.converged) {
    r.converged =
        r.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value));
  }
  return r;
}

}  // namespace magvac::detail

#endif  // MAGVAC_DETAIL_QUADRATURE_HPP
