#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "oscbath/bath.hpp"
#include "oscbath/gaussian.hpp"

namespace oscbath {

/// Contiguous run of bath modes attached to one system oscillator.
struct BathBlock {
  Eigen::Index first = 0;
  Eigen::Index size = 0;
};

/// Symmetric single-excitation matrix W of H = sum_jk W_jk a_j^dag a_k.
/// Each oscillator is followed by its own bath modes.
struct CouplingMatrix {
  Eigen::MatrixXd w;
  std::vector<Eigen::Index> system_modes;
  std::vector<BathBlock> baths;
  std::vector<std::string> warnings;

  Eigen::Index dim() const { return w.rows(); }
};

CouplingMatrix build_single(double omega, const BathCouplings& bath);

/// Layout (a1, bath1..., a2, bath2...). Warns when beta > omega/5.
CouplingMatrix build_two(double omega1, double omega2, double beta, const BathCouplings& bath1,
                         const BathCouplings& bath2);

/// Spectral decomposition W = Q diag(lambda) Q^T.
class PropagatorCache {
 public:
  explicit PropagatorCache(const Eigen::MatrixXd& w);

  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  const Eigen::MatrixXd& eigenvectors() const { return q_; }
  Eigen::Index dim() const { return lambda_.size(); }

  /// Same eigenvectors, eigenvalues lambda - shift (W - shift I).
  PropagatorCache shifted(double shift) const;

  /// cos(W t) and -sin(W t).
  Eigen::MatrixXd t_real(double t) const;
  Eigen::MatrixXd t_imag(double t) const;

  /// Rows idx of M(t) in (x..x, p..p) ordering: 2k x 2N with x rows first.
  Eigen::MatrixXd propagator_rows(double t, const std::vector<Eigen::Index>& idx) const;

  /// f(W) b for a real function of the eigenvalues.
  template <typename F>
  Eigen::VectorXd apply(F&& f, const Eigen::VectorXd& b) const {
    Eigen::VectorXd c = q_.transpose() * b;
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= f(lambda_(i));
    return q_ * c;
  }

 private:
  PropagatorCache(Eigen::VectorXd lambda, Eigen::MatrixXd q)
      : lambda_(std::move(lambda)), q_(std::move(q)) {}

  Eigen::VectorXd lambda_;
  Eigen::MatrixXd q_;
};

/// Full 2N x 2N M(t) = [[T_R, -T_I], [T_I, T_R]].
Eigen::MatrixXd propagator(const PropagatorCache& cache, double t);

Eigen::MatrixXd evolve_cov(const Eigen::MatrixXd& cov0, const Eigen::MatrixXd& m);

/// Coherent drive r (a e^{i wL t} + a^dag e^{-i wL t}) on the first system mode.
struct AffineDrive {
  double r = 0.0;
  double omega_L = 0.0;
};

/// Global state at t in the frame rotating at omega_L. `cache0` must be built
/// from W - omega_L I (see PropagatorCache::shifted).
GaussianStated evolve_driven(const AffineDrive& drive, const PropagatorCache& cache0,
                             const GaussianStated& state0, double t,
                             Eigen::Index driven_mode = 0);

/// 2 pi / (level spacing). Heuristic horizon for the first bath echo.
double recurrence_time_estimate(const BathCouplings& bath);

/// System state (given) times thermal baths at the listed temperatures, one per block.
GaussianStated product_initial_state(const CouplingMatrix& cm, const GaussianStated& system,
                                     const std::vector<double>& bath_temperatures);

/// Exact evolution of a fixed global initial state, optionally driven.
class ExactSimulator {
 public:
  ExactSimulator(const CouplingMatrix& cm, GaussianStated global0);
  ExactSimulator(const CouplingMatrix& cm, GaussianStated global0, AffineDrive drive);

  /// Reduced state of the system oscillators at t, in O(k N^2).
  GaussianStated system_state(double t) const;
  GaussianStated global_state(double t) const;

  const PropagatorCache& cache() const { return cache_; }
  const std::vector<Eigen::Index>& system_modes() const { return system_modes_; }

 private:
  Eigen::VectorXd drive_offset(double t, const std::vector<Eigen::Index>& rows) const;

  std::vector<Eigen::Index> system_modes_;
  GaussianStated global0_;
  PropagatorCache cache_;
  bool driven_ = false;
  Eigen::VectorXd u_;  // W0^{-1} b
};

}  // namespace oscbath
