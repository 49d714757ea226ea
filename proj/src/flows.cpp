#include "oscbath/flows.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "oscbath/errors.hpp"

namespace oscbath {

namespace {

using cd = std::complex<double>;

void check_hermitian(const Eigen::MatrixXcd& m, const char* what) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError(std::string(what) + " is not Hermitian");
  }
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& g) {
  const Eigen::Index n = g.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out << g.real(), -g.imag(), g.imag(), g.real();
  return out;
}

}  // namespace

MomentFlow moment_flow(const QuadraticGenerator& g) {
  const Eigen::Index n = g.h.rows();
  if (n == 0 || g.h.cols() != n || g.f.size() != n || g.k_emission.rows() != n ||
      g.k_emission.cols() != n || g.k_absorption.rows() != n || g.k_absorption.cols() != n) {
    throw DomainError("moment_flow: inconsistent generator dimensions");
  }
  check_hermitian(g.h, "h");
  check_hermitian(g.k_emission, "emission matrix");
  check_hermitian(g.k_absorption, "absorption matrix");

  // d<a>/dt = G <a> - i f
  const Eigen::MatrixXcd gmat =
      cd(0, -1) * g.h - 0.5 * g.k_emission.transpose() + 0.5 * g.k_absorption;
  // source of <{a_m^dag, a_n}>
  const Eigen::MatrixXcd q = g.k_absorption.transpose() + g.k_emission;

  MomentFlow flow;
  flow.drift = realify(gmat);
  flow.diffusion.resize(2 * n, 2 * n);
  flow.diffusion << q.real(), q.imag(), -q.imag(), q.real();
  flow.diffusion = 0.5 * (flow.diffusion + flow.diffusion.transpose()).eval();
  flow.mean_drift.resize(2 * n);
  flow.mean_drift << std::numbers::sqrt2 * g.f.imag(), -std::numbers::sqrt2 * g.f.real();
  return flow;
}

QuadraticGenerator generator_single(double omega_bar, double gamma, double nbar) {
  if (!(gamma > 0)) throw DomainError("flow_single: gamma must be positive");
  if (nbar < 0) throw DomainError("flow_single: nbar must be >= 0");
  QuadraticGenerator g;
  g.h = Eigen::MatrixXcd::Constant(1, 1, omega_bar);
  g.f = Eigen::VectorXcd::Zero(1);
  g.k_emission = Eigen::MatrixXcd::Constant(1, 1, 2 * gamma * (nbar + 1));
  g.k_absorption = Eigen::MatrixXcd::Constant(1, 1, 2 * gamma * nbar);
  return g;
}

MomentFlow flow_single(double omega_bar, double gamma, double nbar) {
  return moment_flow(generator_single(omega_bar, gamma, nbar));
}

QuadraticGenerator generator_two_small_beta(const LocalDamping& mode1, const LocalDamping& mode2,
                                            double beta) {
  for (const auto* m : {&mode1, &mode2}) {
    if (!(m->gamma > 0)) throw DomainError("flow_two_small_beta: gamma must be positive");
    if (m->nbar < 0) throw DomainError("flow_two_small_beta: nbar must be >= 0");
  }
  QuadraticGenerator g;
  g.h.resize(2, 2);
  g.h << mode1.omega_bar, beta, beta, mode2.omega_bar;
  g.f = Eigen::VectorXcd::Zero(2);
  g.k_emission = Eigen::MatrixXcd::Zero(2, 2);
  g.k_absorption = Eigen::MatrixXcd::Zero(2, 2);
  g.k_emission(0, 0) = 2 * mode1.gamma * (mode1.nbar + 1);
  g.k_emission(1, 1) = 2 * mode2.gamma * (mode2.nbar + 1);
  g.k_absorption(0, 0) = 2 * mode1.gamma * mode1.nbar;
  g.k_absorption(1, 1) = 2 * mode2.gamma * mode2.nbar;
  return g;
}

MomentFlow flow_two_small_beta(const LocalDamping& mode1, const LocalDamping& mode2, double beta) {
  return moment_flow(generator_two_small_beta(mode1, mode2, beta));
}

BathRates bath_rates(const OhmicSpectrum& spectrum, double temperature, double omega,
                     double beta) {
  if (!(omega > beta)) {
    throw DomainError("bath_rates: omega <= beta makes the lower normal-mode frequency non-positive");
  }
  const double wp = omega + beta;
  const double wm = omega - beta;
  BathRates r;
  r.gamma_plus = decay_rate(spectrum, wp);
  r.gamma_minus = decay_rate(spectrum, wm);
  r.nbar_plus = bose_occupation(wp, temperature);
  r.nbar_minus = bose_occupation(wm, temperature);
  r.delta_plus = lamb_shift(spectrum, wp);
  r.delta_minus = lamb_shift(spectrum, wm);
  return r;
}

TwoBathCoefficients k_matrices(double omega, double beta, const BathRates& bath1,
                               const BathRates& bath2) {
  if (!(omega > beta)) {
    throw DomainError(
        "k_matrices: omega <= beta, the normal-mode frequency omega - beta is not positive "
        "(unstable normal mode)");
  }
  if (beta < 0) throw DomainError("k_matrices: beta must be >= 0");
  TwoBathCoefficients c;
  c.omega = omega;
  c.beta = beta;
  c.baths = {bath1, bath2};
  double ep = 0, em = 0, ap = 0, am = 0, dp = 0, dm = 0, rate = 0;
  for (const auto& b : c.baths) {
    ep += b.gamma_plus * (b.nbar_plus + 1);
    em += b.gamma_minus * (b.nbar_minus + 1);
    ap += b.gamma_plus * b.nbar_plus;
    am += b.gamma_minus * b.nbar_minus;
    dp += b.delta_plus;
    dm += b.delta_minus;
    rate = std::max({rate, b.gamma_plus, b.gamma_minus});
  }
  c.omega_bar = omega + (dp + dm) / 4;
  c.beta_bar = beta + (dp - dm) / 4;
  c.k_emission << (ep + em) / 2, (ep - em) / 2, (ep - em) / 2, (ep + em) / 2;
  c.k_absorption << (ap + am) / 2, (ap - am) / 2, (ap - am) / 2, (ap + am) / 2;
  if (beta < 10 * rate) {
    std::ostringstream msg;
    msg << "beta = " << beta << " is not large against the decay rates (max " << rate
        << "); the secular approximation behind the normal-mode equation is doubtful";
    c.warnings.push_back(msg.str());
  }
  return c;
}

QuadraticGenerator generator_two_large_beta(const TwoBathCoefficients& coeffs) {
  QuadraticGenerator g;
  g.h.resize(2, 2);
  g.h << coeffs.omega_bar, coeffs.beta_bar, coeffs.beta_bar, coeffs.omega_bar;
  g.f = Eigen::VectorXcd::Zero(2);
  g.k_emission = coeffs.k_emission;
  g.k_absorption = coeffs.k_absorption;
  return g;
}

MomentFlow flow_two_large_beta(const TwoBathCoefficients& coeffs) {
  MomentFlow flow = moment_flow(generator_two_large_beta(coeffs));
  flow.warnings = coeffs.warnings;
  return flow;
}

const char* to_string(RabiVariant v) {
  switch (v) {
    case RabiVariant::Plain: return "plain";
    case RabiVariant::OffResonant: return "off_resonant";
    case RabiVariant::NoSecular: return "no_secular";
  }
  return "?";
}

std::complex<double> rabi_renormalization(const OhmicSpectrum& spectrum, double omega,
                                          double omega_L, double r, RabiVariant variant,
                                          std::vector<std::string>* warnings) {
  if (variant == RabiVariant::Plain) return r;
  const double detuning = omega - omega_L;
  if (detuning == 0.0) {
    throw DomainError(std::string("rabi_renormalization: variant ") + to_string(variant) +
                      " is singular at exact resonance");
  }
  if (warnings != nullptr &&
      std::abs(detuning) < 10 * spectrum.alpha() * std::max(1.0, std::abs(r / detuning))) {
    std::ostringstream msg;
    msg << "detuning " << detuning << " is not large against the coupling; variant "
        << to_string(variant) << " is outside its perturbative range";
    warnings->push_back(msg.str());
  }
  cd corr(lamb_shift(spectrum, omega), decay_rate(spectrum, omega));
  if (variant == RabiVariant::NoSecular) {
    if (!(omega_L > 0)) throw DomainError("rabi_renormalization: omega_L must be positive");
    corr -= cd(lamb_shift(spectrum, omega_L), decay_rate(spectrum, omega_L));
  }
  return r * (1.0 + corr / detuning);
}

QuadraticGenerator generator_driven(double omega_bar, double gamma, double nbar,
                                    std::complex<double> r_bar, double omega_L) {
  QuadraticGenerator g = generator_single(omega_bar - omega_L, gamma, nbar);
  g.f(0) = std::conj(r_bar);
  return g;
}

MomentFlow flow_driven(double omega_bar, double gamma, double nbar, std::complex<double> r_bar,
                       double omega_L) {
  MomentFlow flow = moment_flow(generator_driven(omega_bar, gamma, nbar, r_bar, omega_L));
  flow.frame_frequency = omega_L;
  return flow;
}

GaussianStated evolve_flow(const MomentFlow& flow, const GaussianStated& state0, double t) {
  const Eigen::Index m = flow.drift.rows();
  if (state0.mean.size() != m) throw DomainError("evolve_flow: mode count mismatch");
  if (t < 0) throw DomainError("evolve_flow: negative time");
  if (t == 0) return state0;

  // Van Loan block exponential over sub-steps short enough that e^{-A h}
  // stays well scaled; the pieces then compose as an affine map.
  const double norm = std::max(flow.drift.lpNorm<Eigen::Infinity>(), 1e-300);
  const int steps = std::max(1, static_cast<int>(std::ceil(t * norm / 4.0)));
  const double h = t / steps;

  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  big.topLeftCorner(m, m) = -flow.drift;
  big.block(0, m, m, m) = flow.diffusion;
  big.block(m, m, m, m) = flow.drift.transpose();
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(m + 1, m + 1);
  aug.topLeftCorner(m, m) = flow.drift;
  aug.topRightCorner(m, 1) = flow.mean_drift;

  const Eigen::MatrixXd eb = (big * h).exp();
  const Eigen::MatrixXd ea = (aug * h).exp();
  const Eigen::MatrixXd phi = ea.topLeftCorner(m, m);
  const Eigen::VectorXd psi = ea.topRightCorner(m, 1);
  Eigen::MatrixXd q = eb.block(m, m, m, m).transpose() * eb.block(0, m, m, m);
  q = 0.5 * (q + q.transpose()).eval();

  Eigen::VectorXd d = state0.mean;
  Eigen::MatrixXd c = state0.cov;
  for (int k = 0; k < steps; ++k) {
    d = phi * d + psi;
    c = phi * c * phi.transpose() + q;
  }
  c = 0.5 * (c + c.transpose()).eval();
  return GaussianStated{d, c};
}

GaussianStated steady_state(const MomentFlow& flow) {
  const Eigen::Index m = flow.drift.rows();
  Eigen::EigenSolver<Eigen::MatrixXd> es(flow.drift, false);
  const double abscissa = es.eigenvalues().real().maxCoeff();
  if (!(abscissa < 0)) {
    std::ostringstream msg;
    msg << "steady_state: drift is not Hurwitz (max real part " << abscissa << ")";
    throw NumericError(msg.str());
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd kron(m * m, m * m);
  // vec(A C) = (I (x) A) vec C, vec(C A^T) = (A (x) I) vec C
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      kron.block(i * m, j * m, m, m) = id(i, j) * flow.drift + flow.drift(i, j) * id;
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(flow.diffusion.data(), m * m);
  const Eigen::VectorXd vec = kron.fullPivLu().solve(rhs);
  Eigen::MatrixXd c = Eigen::Map<const Eigen::MatrixXd>(vec.data(), m, m);
  c = 0.5 * (c + c.transpose()).eval();
  Eigen::VectorXd d = -flow.drift.fullPivLu().solve(flow.mean_drift);
  return GaussianStated{d, c};
}

double lyapunov_residual(const MomentFlow& flow, const Eigen::MatrixXd& cov) {
  return (flow.drift * cov + cov * flow.drift.transpose() + flow.diffusion)
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace oscbath
