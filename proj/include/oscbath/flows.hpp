#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "oscbath/bath.hpp"
#include "oscbath/gaussian.hpp"

namespace oscbath {

/// Affine moment flow: d' = A d + c, C' = A C + C A^T + D.
struct MomentFlow {
  Eigen::MatrixXd drift;
  Eigen::MatrixXd diffusion;
  Eigen::VectorXd mean_drift;
  /// Frequency of the rotating frame the flow is written in (0 for the lab frame).
  double frame_frequency = 0.0;
  std::vector<std::string> warnings;

  Eigen::Index n_modes() const { return drift.rows() / 2; }
};

/// Quadratic Lindbladian on n modes:
///   H = sum_jk h_jk a_j^dag a_k + sum_j (f_j a_j^dag + conj(f_j) a_j)
///   + sum_jk KE_jk (a_j rho a_k^dag - {a_k^dag a_j, rho}/2)
///   + sum_jk KA_jk (a_j^dag rho a_k - {a_k a_j^dag, rho}/2)
/// h, KE and KA Hermitian; KE and KA positive semidefinite.
struct QuadraticGenerator {
  Eigen::MatrixXcd h;
  Eigen::VectorXcd f;
  Eigen::MatrixXcd k_emission;
  Eigen::MatrixXcd k_absorption;
};

/// Exact moment flow of a quadratic Lindbladian.
MomentFlow moment_flow(const QuadraticGenerator& g);

QuadraticGenerator generator_single(double omega_bar, double gamma, double nbar);
MomentFlow flow_single(double omega_bar, double gamma, double nbar);

/// Rate and occupation of one oscillator's own bath.
struct LocalDamping {
  double omega_bar = 0.0;
  double gamma = 0.0;
  double nbar = 0.0;
};

QuadraticGenerator generator_two_small_beta(const LocalDamping& mode1, const LocalDamping& mode2,
                                            double beta);
MomentFlow flow_two_small_beta(const LocalDamping& mode1, const LocalDamping& mode2, double beta);

/// One bath's rate, occupation and Lamb shift at the normal-mode frequencies.
struct BathRates {
  double gamma_plus = 0.0, gamma_minus = 0.0;
  double nbar_plus = 0.0, nbar_minus = 0.0;
  double delta_plus = 0.0, delta_minus = 0.0;
};

BathRates bath_rates(const OhmicSpectrum& spectrum, double temperature, double omega,
                     double beta);

struct TwoBathCoefficients {
  double omega = 0.0;
  double beta = 0.0;
  std::array<BathRates, 2> baths{};
  double omega_bar = 0.0;
  double beta_bar = 0.0;
  Eigen::Matrix2cd k_emission = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd k_absorption = Eigen::Matrix2cd::Zero();
  std::vector<std::string> warnings;
};

/// Coefficients of the normal-mode (large beta) equation for two resonant
/// oscillators of frequency omega. Requires omega > beta.
TwoBathCoefficients k_matrices(double omega, double beta, const BathRates& bath1,
                               const BathRates& bath2);

QuadraticGenerator generator_two_large_beta(const TwoBathCoefficients& coeffs);
MomentFlow flow_two_large_beta(const TwoBathCoefficients& coeffs);

enum class RabiVariant { Plain, OffResonant, NoSecular };

const char* to_string(RabiVariant v);

/// Renormalized Rabi frequency. Warnings (if given) collect validity notes.
std::complex<double> rabi_renormalization(const OhmicSpectrum& spectrum, double omega,
                                          double omega_L, double r, RabiVariant variant,
                                          std::vector<std::string>* warnings = nullptr);

/// Driven damped oscillator in the frame rotating at omega_L. The drive term
/// r_bar e^{i wL t} a + conj(r_bar) e^{-i wL t} a^dag becomes static there.
QuadraticGenerator generator_driven(double omega_bar, double gamma, double nbar,
                                    std::complex<double> r_bar, double omega_L);
MomentFlow flow_driven(double omega_bar, double gamma, double nbar, std::complex<double> r_bar,
                       double omega_L);

GaussianStated evolve_flow(const MomentFlow& flow, const GaussianStated& state0, double t);

/// Fixed point of a flow with Hurwitz drift.
GaussianStated steady_state(const MomentFlow& flow);

/// max |A C + C A^T + D|.
double lyapunov_residual(const MomentFlow& flow, const Eigen::MatrixXd& cov);

}  // namespace oscbath
