#include "oscbath/exact.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscbath/errors.hpp"

namespace oscbath {

namespace {

void place_bath(Eigen::MatrixXd& w, Eigen::Index sys, const BathCouplings& bath) {
  for (std::size_t j = 0; j < bath.size(); ++j) {
    const auto k = sys + 1 + static_cast<Eigen::Index>(j);
    w(k, k) = bath.frequencies[j];
    w(sys, k) = w(k, sys) = bath.couplings[j];
  }
}

void check_bath(const BathCouplings& bath) {
  if (bath.frequencies.size() != bath.couplings.size()) {
    throw DomainError("bath: frequency and coupling lists differ in length");
  }
}

}  // namespace

CouplingMatrix build_single(double omega, const BathCouplings& bath) {
  check_bath(bath);
  const auto m = static_cast<Eigen::Index>(bath.size());
  CouplingMatrix cm;
  cm.w = Eigen::MatrixXd::Zero(m + 1, m + 1);
  cm.w(0, 0) = omega;
  place_bath(cm.w, 0, bath);
  cm.system_modes = {0};
  cm.baths = {{1, m}};
  return cm;
}

CouplingMatrix build_two(double omega1, double omega2, double beta, const BathCouplings& bath1,
                         const BathCouplings& bath2) {
  check_bath(bath1);
  check_bath(bath2);
  if (beta < 0) throw DomainError("build_two: beta must be >= 0");
  const auto m1 = static_cast<Eigen::Index>(bath1.size());
  const auto m2 = static_cast<Eigen::Index>(bath2.size());
  const Eigen::Index s2 = m1 + 1;
  CouplingMatrix cm;
  cm.w = Eigen::MatrixXd::Zero(m1 + m2 + 2, m1 + m2 + 2);
  cm.w(0, 0) = omega1;
  cm.w(s2, s2) = omega2;
  cm.w(0, s2) = cm.w(s2, 0) = beta;
  place_bath(cm.w, 0, bath1);
  place_bath(cm.w, s2, bath2);
  cm.system_modes = {0, s2};
  cm.baths = {{1, m1}, {s2 + 1, m2}};
  if (beta > std::min(omega1, omega2) / 5) {
    std::ostringstream msg;
    msg << "beta = " << beta << " is not small against the oscillator frequency; "
        << "the rotating-wave coupling is questionable";
    cm.warnings.push_back(msg.str());
  }
  return cm;
}

PropagatorCache::PropagatorCache(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols() || w.rows() == 0) throw DomainError("PropagatorCache: W must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
  if (es.info() != Eigen::Success) throw NumericError("PropagatorCache: eigensolver failed");
  lambda_ = es.eigenvalues();
  q_ = es.eigenvectors();
}

PropagatorCache PropagatorCache::shifted(double shift) const {
  return PropagatorCache(lambda_.array() - shift, q_);
}

Eigen::MatrixXd PropagatorCache::t_real(double t) const {
  const Eigen::VectorXd c = (lambda_ * t).array().cos();
  return q_ * c.asDiagonal() * q_.transpose();
}

Eigen::MatrixXd PropagatorCache::t_imag(double t) const {
  const Eigen::VectorXd s = (lambda_ * t).array().sin();
  return -(q_ * s.asDiagonal() * q_.transpose());
}

Eigen::MatrixXd PropagatorCache::propagator_rows(double t,
                                                 const std::vector<Eigen::Index>& idx) const {
  const Eigen::Index n = dim();
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd qr(k, n);
  for (Eigen::Index i = 0; i < k; ++i) qr.row(i) = q_.row(idx[static_cast<std::size_t>(i)]);
  const Eigen::ArrayXd ph = lambda_.array() * t;
  const Eigen::MatrixXd cr = (qr * ph.cos().matrix().asDiagonal()) * q_.transpose();
  const Eigen::MatrixXd sr = (qr * ph.sin().matrix().asDiagonal()) * q_.transpose();
  // T_R = cos, T_I = -sin
  Eigen::MatrixXd rows(2 * k, 2 * n);
  rows << cr, sr, -sr, cr;
  return rows;
}

Eigen::MatrixXd propagator(const PropagatorCache& cache, double t) {
  const Eigen::MatrixXd tr = cache.t_real(t);
  const Eigen::MatrixXd ti = cache.t_imag(t);
  const Eigen::Index n = cache.dim();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m << tr, -ti, ti, tr;
  return m;
}

Eigen::MatrixXd evolve_cov(const Eigen::MatrixXd& cov0, const Eigen::MatrixXd& m) {
  if (cov0.rows() != cov0.cols() || m.cols() != cov0.rows()) {
    throw DomainError("evolve_cov: shape mismatch");
  }
  return m * cov0 * m.transpose();
}

namespace {

double smallest_abs(const Eigen::VectorXd& v, Eigen::Index& where) {
  return v.cwiseAbs().minCoeff(&where);
}

void require_invertible(const PropagatorCache& cache0) {
  Eigen::Index where = 0;
  if (smallest_abs(cache0.eigenvalues(), where) < 1e-12) {
    std::ostringstream msg;
    msg << "driven evolution: W - omega_L I is singular (eigenvalue " << where << " = "
        << cache0.eigenvalues()(where) << "); perturb omega_L";
    throw NumericError(msg.str());
  }
}

}  // namespace

GaussianStated evolve_driven(const AffineDrive& drive, const PropagatorCache& cache0,
                             const GaussianStated& state0, double t, Eigen::Index driven_mode) {
  const Eigen::Index n = cache0.dim();
  if (state0.n_modes() != n) throw DomainError("evolve_driven: state size does not match W");
  const Eigen::MatrixXd m = propagator(cache0, t);
  GaussianStated out{m * state0.mean, evolve_cov(state0.cov, m)};
  if (drive.r != 0.0) {
    require_invertible(cache0);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(driven_mode) = drive.r;
    const Eigen::VectorXd bx = cache0.apply([t](double l) { return (std::cos(l * t) - 1) / l; }, b);
    const Eigen::VectorXd bp = cache0.apply([t](double l) { return -std::sin(l * t) / l; }, b);
    out.mean.head(n) += std::numbers::sqrt2 * bx;
    out.mean.tail(n) += std::numbers::sqrt2 * bp;
  }
  return out;
}

double recurrence_time_estimate(const BathCouplings& bath) {
  const double dw = bath.spacing();
  if (!(dw > 0)) throw DomainError("recurrence_time_estimate: need at least two bath modes");
  return 2 * std::numbers::pi / dw;
}

GaussianStated product_initial_state(const CouplingMatrix& cm, const GaussianStated& system,
                                     const std::vector<double>& bath_temperatures) {
  const Eigen::Index n = cm.dim();
  const auto k = static_cast<Eigen::Index>(cm.system_modes.size());
  if (system.n_modes() != k) throw DomainError("product_initial_state: system size mismatch");
  if (bath_temperatures.size() != cm.baths.size()) {
    throw DomainError("product_initial_state: one temperature per bath required");
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2 * n);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < 2 * k; ++a) {
    const Eigen::Index ga = cm.system_modes[static_cast<std::size_t>(a % k)] + (a / k) * n;
    mean(ga) = system.mean(a);
    for (Eigen::Index b = 0; b < 2 * k; ++b) {
      const Eigen::Index gb = cm.system_modes[static_cast<std::size_t>(b % k)] + (b / k) * n;
      cov(ga, gb) = system.cov(a, b);
    }
  }
  for (std::size_t blk = 0; blk < cm.baths.size(); ++blk) {
    const auto [first, size] = cm.baths[blk];
    for (Eigen::Index j = first; j < first + size; ++j) {
      const double v = thermal_variance(cm.w(j, j), bath_temperatures[blk]);
      cov(j, j) = v;
      cov(j + n, j + n) = v;
    }
  }
  return GaussianStated{mean, cov};
}

ExactSimulator::ExactSimulator(const CouplingMatrix& cm, GaussianStated global0)
    : system_modes_(cm.system_modes), global0_(std::move(global0)), cache_(cm.w) {
  if (global0_.n_modes() != cm.dim()) throw DomainError("ExactSimulator: state size mismatch");
}

ExactSimulator::ExactSimulator(const CouplingMatrix& cm, GaussianStated global0,
                               AffineDrive drive)
    : system_modes_(cm.system_modes),
      global0_(std::move(global0)),
      cache_(PropagatorCache(cm.w).shifted(drive.omega_L)),
      driven_(drive.r != 0.0) {
  if (global0_.n_modes() != cm.dim()) throw DomainError("ExactSimulator: state size mismatch");
  if (driven_) {
    require_invertible(cache_);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(cm.dim());
    b(system_modes_.front()) = drive.r;
    // keep Q^T b; offsets are rebuilt row by row
    u_ = cache_.eigenvectors().transpose() * b;
  }
}

Eigen::VectorXd ExactSimulator::drive_offset(double t,
                                             const std::vector<Eigen::Index>& rows) const {
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * k);
  if (!driven_) return out;
  const Eigen::ArrayXd& l = cache_.eigenvalues().array();
  const Eigen::VectorXd gx = (((l * t).cos() - 1) / l * u_.array()).matrix();
  const Eigen::VectorXd gp = (-(l * t).sin() / l * u_.array()).matrix();
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto q = cache_.eigenvectors().row(rows[static_cast<std::size_t>(i)]);
    out(i) = std::numbers::sqrt2 * q.dot(gx);
    out(i + k) = std::numbers::sqrt2 * q.dot(gp);
  }
  return out;
}

GaussianStated ExactSimulator::system_state(double t) const {
  const Eigen::MatrixXd mr = cache_.propagator_rows(t, system_modes_);
  Eigen::VectorXd mean = mr * global0_.mean + drive_offset(t, system_modes_);
  Eigen::MatrixXd cov = mr * global0_.cov * mr.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianStated{std::move(mean), std::move(cov)};
}

GaussianStated ExactSimulator::global_state(double t) const {
  const Eigen::MatrixXd m = propagator(cache_, t);
  Eigen::VectorXd mean = m * global0_.mean;
  if (driven_) {
    std::vector<Eigen::Index> all(static_cast<std::size_t>(cache_.dim()));
    for (Eigen::Index i = 0; i < cache_.dim(); ++i) all[static_cast<std::size_t>(i)] = i;
    const Eigen::VectorXd off = drive_offset(t, all);
    mean += off;
  }
  Eigen::MatrixXd cov = evolve_cov(global0_.cov, m);
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianStated{std::move(mean), std::move(cov)};
}

}  // namespace oscbath
