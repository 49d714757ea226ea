#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace oscbath::testing {

// Independent quadrature oracles (Boost Gauss-Kronrod, test-only).
inline double gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-13);
}

// Piecewise so each panel holds a few oscillation periods.
inline double gk_panels(const std::function<double(double)>& f, double a, double b, double width) {
  double total = 0;
  for (double x = a; x < b; x += width) total += gk(f, x, std::min(b, x + width));
  return total;
}

inline std::complex<double> fourier_oracle(const std::function<double(double)>& weight, double s, double upper) {
  const double width = s == 0 ? 1.0 : std::min(1.0, 2 / std::abs(s));
  const double re = gk_panels([&](double w) { return weight(w) * std::cos(w * s); }, 0, upper, width);
  const double im = gk_panels([&](double w) { return -weight(w) * std::sin(w * s); }, 0, upper, width);
  return {re, im};
}

// P.V. int_0^L g(w)/(nu - w) dw by subtracting the pole:
// int (g(w) - g(nu))/(nu - w) + g(nu) ln(nu / (L - nu)).
inline double pv_oracle(const std::function<double(double)>& g, double nu, double upper) {
  auto smooth = [&](double w) {
    const double d = nu - w;
    return std::abs(d) < 1e-9 ? 0.0 : (g(w) - g(nu)) / d;
  };
  return gk(smooth, 0, nu) + gk_panels(smooth, nu, upper, 2.0) + g(nu) * std::log(nu / (upper - nu));
}

}  // namespace oscbath::testing
