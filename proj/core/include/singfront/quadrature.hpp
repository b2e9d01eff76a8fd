#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature in the QUADPACK QAG
// style: the interval with the largest error estimate is bisected until the
// summed estimate meets max(abs_tol, rel_tol * |I|).
//
// Nodes never touch the interval endpoints, so integrands with a removable
// 0/0 or integrable singularity at an endpoint are admissible.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "singfront/error.hpp"

namespace singfront::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 2000;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gk15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::fabs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    kronrod += kWgk[j] * (f1[j] + f2[j]);
    abs_sum += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  asc *= std::fabs(half);

  double err = std::fabs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double resabs = abs_sum * std::fabs(half);
  constexpr double kEps = 2.220446049250313e-16;
  if (resabs > 2.2250738585072014e-308 / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return Panel{a, b, kronrod * half, err};
}

}  // namespace detail

/// Integrates f over [a, b]. Throws QuadratureError when the interval budget
/// is exhausted before the tolerance is met.
template <class F>
Result integrate(const F& f, double a, double b, const Options& opt = {}) {
  if (a == b) return {};
  std::priority_queue<detail::Panel> heap;
  detail::Panel first = detail::gk15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int count = 1;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
    if (count >= opt.max_intervals) {
      throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "], error estimate " + std::to_string(total_err));
    }
    const detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) {
      // Interval cannot be split further in binary64; accept what we have.
      heap.push(worst);
      break;
    }
    const detail::Panel left = detail::gk15(f, worst.a, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum from the panels so the result does not carry the running
  // update's cancellation error.
  double sum = 0.0, err = 0.0;
  std::vector<detail::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    sum += p.value;
    err += p.error;
  }
  return {sum, err, count};
}

}  // namespace singfront::quad
