#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "oscbath/errors.hpp"

namespace oscbath {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const double fsum = f(c - dx) + f(c + dx);
    kronrod += kKronrodWeights[j] * fsum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fsum;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return {};
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gk15(f, a, b));
  double total = heap.top().value;
  double err = heap.top().error;
  int n = 1;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (n >= opt.max_intervals) {
      throw NumericError("integrate_adaptive: interval budget exhausted, error estimate " +
                         std::to_string(err));
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot split further
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++n;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
  }
  return {total, err, n};
}

/// P.V. int_{lower}^{upper} f(w) / (pole - w) dw for lower <= pole < upper.
///
/// The singular part is folded onto u in (0, h] as [f(pole - u) - f(pole + u)] / u,
/// which has a removable singularity, and the remaining pieces are regular.
QuadratureResult principal_value(const std::function<double(double)>& f, double pole,
                                 double lower, double upper, const QuadratureOptions& opt = {});

}  // namespace oscbath
