#include "oscbath/bath.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "oscbath/errors.hpp"
#include "oscbath/quadrature.hpp"
#include "oscbath/special_functions.hpp"

namespace oscbath {

OhmicSpectrum::OhmicSpectrum(double alpha, double omega_c) : alpha_(alpha), omega_c_(omega_c) {
  if (!(alpha >= 0)) throw DomainError("OhmicSpectrum: alpha must be >= 0");
  if (!(omega_c > 0)) throw DomainError("OhmicSpectrum: omega_c must be positive");
}

double OhmicSpectrum::operator()(double omega) const {
  if (omega < 0) throw DomainError("OhmicSpectrum: negative frequency");
  return alpha_ * omega * std::exp(-omega / omega_c_);
}

double BathCouplings::spacing() const {
  if (frequencies.size() < 2) return 0.0;
  return (frequencies.back() - frequencies.front()) / static_cast<double>(frequencies.size() - 1);
}

double j_of(const OhmicSpectrum& spectrum, double omega) { return spectrum(omega); }

namespace {

// Bisection for a decreasing g with g(lo) > 0; expands hi until g(hi) < 0.
double solve_decreasing(const std::function<double(double)>& g, double lo, double hi,
                        const char* what) {
  int expansions = 0;
  while (g(hi) > 0) {
    lo = hi;
    hi *= 2;
    if (++expansions > 60 || !std::isfinite(hi)) {
      std::ostringstream msg;
      msg << what << ": root not bracketed in [" << lo << ", " << hi << "]";
      throw NumericError(msg.str());
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> omega_range(const OhmicSpectrum& spectrum, RangeConvention mode,
                                      double c) {
  const double wc = spectrum.omega_c();
  if (!(c > 0)) throw DomainError("omega_range: lower frequency must be positive");
  if (mode == RangeConvention::Floor) {
    if (!(c < wc)) throw DomainError("omega_range: floor convention needs c < omega_c");
    const double target = c * std::exp(-c / wc);
    auto g = [&](double w) { return w * std::exp(-w / wc) - target; };
    return {c, solve_decreasing(g, wc, 2 * wc, "omega_range(floor)")};
  }
  // equal tails: omega_c (1 - e^{-x}(1 + x)) = (omega_max + omega_c) e^{-omega_max/omega_c}
  const double x = c / wc;
  const double left = wc * (-std::expm1(-x) - x * std::exp(-x));
  auto g = [&](double w) { return (w + wc) * std::exp(-w / wc) - left; };
  const double wmax = solve_decreasing(g, 0.0, 2 * wc, "omega_range(equal-tails)");
  if (!(wmax > c)) throw DomainError("omega_range: lower frequency too large for equal tails");
  return {c, wmax};
}

BathCouplings discretize(const SpectralDensity& spectrum, int modes,
                         std::pair<double, double> range) {
  const auto [w1, wmax] = range;
  if (modes < 2) throw DomainError("discretize: need at least two bath modes");
  if (!(w1 >= 0 && wmax > w1)) throw DomainError("discretize: invalid frequency range");
  BathCouplings bath;
  bath.frequencies.resize(static_cast<std::size_t>(modes));
  bath.couplings.resize(static_cast<std::size_t>(modes));
  const double dw = (wmax - w1) / (modes - 1);
  for (int j = 0; j < modes; ++j) {
    const double w = w1 + j * dw;
    bath.frequencies[static_cast<std::size_t>(j)] = w;
    bath.couplings[static_cast<std::size_t>(j)] = std::sqrt(spectrum(w) * dw);
  }
  return bath;
}

double bose_occupation(double omega, double temperature) {
  if (!(omega > 0)) throw DomainError("bose_occupation: frequency must be positive");
  if (temperature < 0) throw DomainError("bose_occupation: negative temperature");
  if (temperature == 0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double decay_rate(const SpectralDensity& spectrum, double nu) {
  if (!(nu > 0)) throw DomainError("decay_rate: frequency must be positive");
  return std::numbers::pi * spectrum(nu);
}

double lamb_shift(const OhmicSpectrum& spectrum, double nu) {
  if (!(nu > 0)) throw DomainError("lamb_shift: frequency must be positive");
  const double x = nu / spectrum.omega_c();
  return spectrum.alpha() * (nu * expint_ei_scaled(x) - spectrum.omega_c());
}

double lamb_shift_numeric(const SpectralDensity& spectrum, double nu) {
  if (!(nu > 0)) throw DomainError("lamb_shift_numeric: frequency must be positive");
  auto f = [&](double w) { return spectrum(w); };
  return principal_value(f, nu, 0.0, nu + spectrum.support_bound()).value;
}

double thermal_shift(const SpectralDensity& spectrum, double nu, double temperature) {
  if (!(nu > 0)) throw DomainError("thermal_shift: frequency must be positive");
  if (temperature < 0) throw DomainError("thermal_shift: negative temperature");
  if (temperature == 0) return 0.0;
  auto f = [&](double w) { return spectrum(w) / std::expm1(w / temperature); };
  return principal_value(f, nu, 0.0, nu + spectrum.support_bound()).value;
}

std::complex<double> corr_c0(const OhmicSpectrum& spectrum, double s) {
  const std::complex<double> d(1.0, s * spectrum.omega_c());
  return spectrum.total_weight() / (d * d);
}

std::complex<double> corr_ct(const OhmicSpectrum& spectrum, double s, double temperature) {
  if (!(temperature > 0)) throw DomainError("corr_ct: temperature must be positive");
  const std::complex<double> q(1.0 + temperature / spectrum.omega_c(), s * temperature);
  return spectrum.alpha() * temperature * temperature * hurwitz_zeta2(q);
}

std::complex<double> correlation_sum(const BathCouplings& bath, double s, double temperature) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < bath.size(); ++j) {
    const double w = bath.frequencies[j];
    const double g2 = bath.couplings[j] * bath.couplings[j];
    acc += g2 * std::polar(1.0, -w * s) * (bose_occupation(w, temperature) + 1.0);
  }
  return acc;
}

double fwhh(const std::function<double(double)>& f, double search_bound) {
  const double f0 = f(0.0);
  if (!(f0 > 0)) throw DomainError("fwhh: f(0) must be positive");
  if (!(search_bound > 0)) throw DomainError("fwhh: search bound must be positive");
  const double half = 0.5 * f0;
  auto g = [&](double s) { return std::abs(f(s)) - half; };
  // march outward so the first crossing is found even when |f| is not monotone
  double step = search_bound / 4096.0;
  double lo = 0.0;
  double hi = step;
  while (g(hi) > 0) {
    lo = hi;
    hi += step;
    if (hi > search_bound) {
      throw NumericError("fwhh: no half-height crossing within the search bound");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return lo + hi;  // 2 * midpoint
}

}  // namespace oscbath
