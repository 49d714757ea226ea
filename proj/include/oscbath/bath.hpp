#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace oscbath {

/// Pluggable spectral density J(w) on w >= 0.
class SpectralDensity {
 public:
  virtual ~SpectralDensity() = default;
  virtual double operator()(double omega) const = 0;
  /// Frequency beyond which J is negligible relative to its peak.
  virtual double support_bound() const = 0;
};

/// J(w) = alpha w exp(-w / omega_c).
class OhmicSpectrum final : public SpectralDensity {
 public:
  OhmicSpectrum(double alpha, double omega_c);

  double operator()(double omega) const override;
  double support_bound() const override { return 40.0 * omega_c_; }

  double alpha() const { return alpha_; }
  double omega_c() const { return omega_c_; }
  /// int_0^inf J = alpha omega_c^2.
  double total_weight() const { return alpha_ * omega_c_ * omega_c_; }

 private:
  double alpha_;
  double omega_c_;
};

/// Discretized bath: equally spaced frequencies with g_j^2 = J(w_j) dw.
struct BathCouplings {
  std::vector<double> frequencies;
  std::vector<double> couplings;

  std::size_t size() const { return frequencies.size(); }
  double spacing() const;
};

enum class RangeConvention { EqualTails, Floor };

double j_of(const OhmicSpectrum& spectrum, double omega);

/// (omega_1, omega_max) with omega_1 = c. EqualTails balances the truncated
/// spectral weight below omega_1 and above omega_max; Floor takes
/// J(omega_max) = J(c) with omega_max > omega_c.
std::pair<double, double> omega_range(const OhmicSpectrum& spectrum, RangeConvention mode,
                                      double c);

BathCouplings discretize(const SpectralDensity& spectrum, int modes,
                         std::pair<double, double> range);

/// Bose-Einstein occupation; T = 0 gives 0.
double bose_occupation(double omega, double temperature);

/// gamma(nu) = pi J(nu).
double decay_rate(const SpectralDensity& spectrum, double nu);

/// Lamb shift P.V. int J(w)/(nu - w) dw in closed form via Ei.
double lamb_shift(const OhmicSpectrum& spectrum, double nu);

/// Same integral by numerical principal-value quadrature, for any J.
double lamb_shift_numeric(const SpectralDensity& spectrum, double nu);

/// Thermal shift P.V. int J(w) nbar(w, T)/(nu - w) dw.
double thermal_shift(const SpectralDensity& spectrum, double nu, double temperature);

/// C0(s) = int J(w) e^{-i w s} dw = alpha omega_c^2 / (i s omega_c + 1)^2.
std::complex<double> corr_c0(const OhmicSpectrum& spectrum, double s);

/// C(s, T) = int J(w) e^{-i w s} nbar(w, T) dw = alpha T^2 zeta(2, 1 + T/omega_c + i s T).
std::complex<double> corr_ct(const OhmicSpectrum& spectrum, double s, double temperature);

/// sum_j g_j^2 e^{-i w_j s} (nbar_j + 1), the finite-bath counterpart of C0 + C.
std::complex<double> correlation_sum(const BathCouplings& bath, double s, double temperature);

/// Full width at half height: 2 s* where |f(s*)| first falls to f(0)/2.
double fwhh(const std::function<double(double)>& f, double search_bound);

/// System relaxation time scale 1/sqrt(alpha); diagnostic only.
inline double system_time_scale(const OhmicSpectrum& spectrum) {
  return 1.0 / std::sqrt(spectrum.alpha());
}

}  // namespace oscbath
