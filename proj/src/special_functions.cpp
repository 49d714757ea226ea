#include "oscbath/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "oscbath/errors.hpp"

namespace oscbath {

namespace {

constexpr double kSeriesSwitch = 40.0;

// gamma + ln x + sum_{k>=1} x^k / (k k!). All terms positive for x > 0.
double ei_series(double x) {
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 500; ++k) {
    term *= x / k;
    const double add = term / k;
    sum += add;
    if (add < std::numeric_limits<double>::epsilon() * sum) break;
  }
  return std::numbers::egamma + std::log(x) + sum;
}

// x e^{-x} Ei(x) ~ sum_k k! / x^k, truncated at the smallest term.
double ei_asymptotic_scaled(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * k / x;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < std::numeric_limits<double>::epsilon() * sum) break;
  }
  return sum / x;
}

}  // namespace

double expint_ei(double x) {
  if (!(x > 0)) throw DomainError("expint_ei: argument must be positive");
  if (x < kSeriesSwitch) return ei_series(x);
  return std::exp(x) * ei_asymptotic_scaled(x);
}

double expint_ei_scaled(double x) {
  if (!(x > 0)) throw DomainError("expint_ei_scaled: argument must be positive");
  if (x < kSeriesSwitch) return std::exp(-x) * ei_series(x);
  return ei_asymptotic_scaled(x);
}

std::complex<double> trigamma(std::complex<double> q) {
  if (!(q.real() > 0)) throw DomainError("trigamma: requires Re q > 0");
  std::complex<double> acc = 0.0;
  while (q.real() <= 10.0) {
    acc += 1.0 / (q * q);
    q += 1.0;
  }
  // psi'(z) ~ 1/z + 1/(2 z^2) + sum_k B_{2k} / z^{2k+1}
  static constexpr std::array<double, 8> kBernoulli = {
      1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};
  const std::complex<double> inv = 1.0 / q;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> pow = inv * inv2;
  std::complex<double> tail = 0.0;
  for (double b : kBernoulli) {
    tail += b * pow;
    pow *= inv2;
  }
  return acc + inv + 0.5 * inv2 + tail;
}

}  // namespace oscbath
