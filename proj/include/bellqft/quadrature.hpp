#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <queue>
#include <span>
#include <tuple>
#include <vector>

namespace bellqft::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;
  int max_intervals = 4000;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// One 15-point rule with the QUADPACK error heuristic.
template <class F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double resabs = std::fabs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    kronrod += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  }
  const double value = kronrod * half;
  resasc *= std::fabs(half);
  resabs *= std::fabs(half);
  double error = std::fabs((kronrod - gauss) * half);
  if (resasc != 0.0 && error != 0.0) {
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * resabs, error);
  }
  return {a, b, value, error};
}

}  // namespace detail

/// Integrates f over the consecutive intervals given by `points` (sorted,
/// at least two entries), bisecting the worst segment until the summed
/// error estimate meets max(tol.abs, tol.rel * |value|).
template <class F>
Result integrate(F&& f, std::span<const double> points, const Tolerance& tol = {}) {
  std::priority_queue<detail::Segment> heap;
  Result result;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    heap.push(detail::kronrod15(f, points[i], points[i + 1]));
    result.evaluations += 15;
  }
  auto totals = [&heap] {
    double value = 0.0, error = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };
  auto [value, error] = totals();
  int intervals = static_cast<int>(heap.size());
  while (!heap.empty() && error > std::max(tol.abs, tol.rel * std::fabs(value))) {
    if (intervals >= tol.max_intervals) break;
    const detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    result.evaluations += 30;
    ++intervals;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    // Running sums drift; refresh them every so often.
    if (intervals % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();
  result.value = value;
  result.abs_error = error;
  result.converged = error <= std::max(tol.abs, tol.rel * std::fabs(value));
  return result;
}

template <class F>
Result integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
  const std::array<double, 2> points{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(points), tol);
}

/// Sorts, clips to [lo, hi] and de-duplicates a list of interior breakpoints.
inline std::vector<double> breakpoints(double lo, double hi, std::initializer_list<double> interior) {
  std::vector<double> points{lo, hi};
  for (double p : interior) {
    if (std::isfinite(p) && p > lo && p < hi) points.push_back(p);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace bellqft::quad
