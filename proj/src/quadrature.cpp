#include "oscbath/quadrature.hpp"

namespace oscbath {

QuadratureResult principal_value(const std::function<double(double)>& f, double pole,
                                 double lower, double upper, const QuadratureOptions& opt) {
  if (!(pole > lower && pole < upper)) {
    throw DomainError("principal_value: pole must lie inside (lower, upper)");
  }
  const double h = std::min(pole - lower, upper - pole);
  QuadratureResult out;
  auto fold = [&](double u) { return (f(pole - u) - f(pole + u)) / u; };
  const auto mid = integrate_adaptive(fold, 0.0, h, opt);
  out.value += mid.value;
  out.error += mid.error;
  out.intervals += mid.intervals;
  auto plain = [&](double w) { return f(w) / (pole - w); };
  if (pole - h > lower) {
    const auto left = integrate_adaptive(plain, lower, pole - h, opt);
    out.value += left.value;
    out.error += left.error;
    out.intervals += left.intervals;
  }
  if (pole + h < upper) {
    const auto right = integrate_adaptive(plain, pole + h, upper, opt);
    out.value += right.value;
    out.error += right.error;
    out.intervals += right.intervals;
  }
  return out;
}

}  // namespace oscbath
