#pragma once

// Multi-mode Gaussian states in block ordering (x_1..x_n, p_1..p_n) with the
// covariance normalization C_jk = <{dR_j, dR_k}>, so the vacuum has C = 1.
// Quadratures are x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "oscbath/errors.hpp"

namespace oscbath {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct GaussianState {
  VectorX<Scalar> mean;
  MatrixX<Scalar> cov;

  Eigen::Index n_modes() const { return mean.size() / 2; }
};

using GaussianStated = GaussianState<double>;

/// Block symplectic form [[0, 1], [-1, 0]] for n modes.
template <typename Scalar = double>
MatrixX<Scalar> symplectic_form(Eigen::Index n_modes) {
  MatrixX<Scalar> s = MatrixX<Scalar>::Zero(2 * n_modes, 2 * n_modes);
  s.topRightCorner(n_modes, n_modes).setIdentity();
  s.bottomLeftCorner(n_modes, n_modes) = -MatrixX<Scalar>::Identity(n_modes, n_modes);
  return s;
}

/// Builds a state after checking shapes and covariance symmetry.
template <typename Scalar>
GaussianState<Scalar> make_state(VectorX<Scalar> mean, MatrixX<Scalar> cov) {
  if (mean.size() == 0 || mean.size() % 2 != 0) {
    throw DomainError("make_state: mean must have even, nonzero length");
  }
  if (cov.rows() != mean.size() || cov.cols() != mean.size()) {
    throw DomainError("make_state: covariance shape does not match mean");
  }
  const Scalar scale = std::max<Scalar>(Scalar(1), cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale) {
    throw DomainError("make_state: covariance is not symmetric");
  }
  return {std::move(mean), std::move(cov)};
}

/// Smallest eigenvalue of the Hermitian matrix C + i*sigma.
template <typename Scalar>
Scalar min_uncertainty_eigenvalue(const MatrixX<Scalar>& cov) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index n = cov.rows() / 2;
  MatrixX<Complex> h = cov.template cast<Complex>();
  h += Complex(0, 1) * symplectic_form<Scalar>(n).template cast<Complex>();
  Eigen::SelfAdjointEigenSolver<MatrixX<Complex>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Uncertainty relation C + i*sigma >= 0 up to `tol`.
template <typename Scalar>
bool is_physical(const GaussianState<Scalar>& s, Scalar tol = Scalar(1e-10)) {
  return min_uncertainty_eigenvalue(s.cov) >= -tol;
}

template <typename Scalar = double>
GaussianState<Scalar> make_vacuum(Eigen::Index n_modes) {
  if (n_modes < 1) throw DomainError("make_vacuum: n_modes must be >= 1");
  return {VectorX<Scalar>::Zero(2 * n_modes),
          MatrixX<Scalar>::Identity(2 * n_modes, 2 * n_modes)};
}

/// 1 + 2 nbar = coth(omega / 2T); T = 0 is the vacuum.
template <typename Scalar>
Scalar thermal_variance(Scalar omega, Scalar temperature) {
  if (!(omega > 0)) throw DomainError("thermal_variance: frequency must be positive");
  if (temperature < 0) throw DomainError("thermal_variance: temperature must be >= 0");
  if (temperature == 0) return Scalar(1);
  return Scalar(1) + Scalar(2) / std::expm1(omega / temperature);
}

template <typename Scalar = double>
GaussianState<Scalar> make_thermal(std::span<const Scalar> frequencies, Scalar temperature) {
  const auto n = static_cast<Eigen::Index>(frequencies.size());
  if (n == 0) throw DomainError("make_thermal: need at least one frequency");
  GaussianState<Scalar> s{VectorX<Scalar>::Zero(2 * n), MatrixX<Scalar>::Zero(2 * n, 2 * n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const Scalar v = thermal_variance(frequencies[static_cast<std::size_t>(j)], temperature);
    s.cov(j, j) = v;
    s.cov(n + j, n + j) = v;
  }
  return s;
}

template <typename Scalar = double>
GaussianState<Scalar> make_thermal(const std::vector<Scalar>& frequencies, Scalar temperature) {
  return make_thermal<Scalar>(std::span<const Scalar>(frequencies), temperature);
}

/// One-mode squeezed vacuum with cov = diag(e^{-2r}, e^{2r}).
template <typename Scalar = double>
GaussianState<Scalar> make_squeezed_vacuum(Scalar r_sq) {
  GaussianState<Scalar> s = make_vacuum<Scalar>(1);
  s.cov(0, 0) = std::exp(-2 * r_sq);
  s.cov(1, 1) = std::exp(2 * r_sq);
  return s;
}

/// One-mode coherent state |beta>: mean sqrt(2) (Re beta, Im beta).
template <typename Scalar = double>
GaussianState<Scalar> make_coherent(std::complex<Scalar> beta) {
  GaussianState<Scalar> s = make_vacuum<Scalar>(1);
  s.mean << std::sqrt(Scalar(2)) * beta.real(), std::sqrt(Scalar(2)) * beta.imag();
  return s;
}

/// Tensor product a (x) b, modes of a first.
template <typename Scalar>
GaussianState<Scalar> tensor_product(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  const Eigen::Index na = a.n_modes();
  const Eigen::Index nb = b.n_modes();
  const Eigen::Index n = na + nb;
  GaussianState<Scalar> s{VectorX<Scalar>::Zero(2 * n), MatrixX<Scalar>::Zero(2 * n, 2 * n)};
  // index maps: (block, mode) -> global row
  auto ia = [&](Eigen::Index k) { return k < na ? k : n + (k - na); };
  auto ib = [&](Eigen::Index k) { return k < nb ? na + k : n + na + (k - nb); };
  for (Eigen::Index i = 0; i < 2 * na; ++i) {
    s.mean(ia(i)) = a.mean(i);
    for (Eigen::Index j = 0; j < 2 * na; ++j) s.cov(ia(i), ia(j)) = a.cov(i, j);
  }
  for (Eigen::Index i = 0; i < 2 * nb; ++i) {
    s.mean(ib(i)) = b.mean(i);
    for (Eigen::Index j = 0; j < 2 * nb; ++j) s.cov(ib(i), ib(j)) = b.cov(i, j);
  }
  return s;
}

/// Row indices (x rows then p rows) of the listed modes in an n-mode state.
inline std::vector<Eigen::Index> quadrature_rows(Eigen::Index n_modes,
                                                 std::span<const Eigen::Index> modes) {
  std::vector<Eigen::Index> rows;
  rows.reserve(2 * modes.size());
  for (auto m : modes) rows.push_back(m);
  for (auto m : modes) rows.push_back(n_modes + m);
  return rows;
}

/// Reduced state on `keep`, in the order given.
template <typename Scalar>
GaussianState<Scalar> partial_trace(const GaussianState<Scalar>& s, std::span<const Eigen::Index> keep) {
  const Eigen::Index n = s.n_modes();
  if (keep.empty()) throw DomainError("partial_trace: keep set is empty");
  std::vector<Eigen::Index> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("partial_trace: duplicate mode index");
  }
  if (sorted.front() < 0 || sorted.back() >= n) {
    throw DomainError("partial_trace: mode index out of range");
  }
  const auto rows = quadrature_rows(n, keep);
  return {s.mean(rows), s.cov(rows, rows)};
}

template <typename Scalar>
GaussianState<Scalar> partial_trace(const GaussianState<Scalar>& s, std::initializer_list<Eigen::Index> keep) {
  return partial_trace(s, std::span<const Eigen::Index>(keep.begin(), keep.size()));
}

/// Applies a linear phase-space map: mean -> S mean, cov -> S cov S^T.
template <typename Scalar>
GaussianState<Scalar> transform(const GaussianState<Scalar>& s, const MatrixX<Scalar>& S) {
  MatrixX<Scalar> cov = S * s.cov * S.transpose();
  cov = Scalar(0.5) * (cov + cov.transpose()).eval();
  return {S * s.mean, std::move(cov)};
}

/// Symplectic matrix of a -> e^{i theta} a on every mode (x + i p rotated by theta).
template <typename Scalar = double>
MatrixX<Scalar> phase_rotation(Eigen::Index n_modes, Scalar theta) {
  const Scalar c = std::cos(theta);
  const Scalar s = std::sin(theta);
  MatrixX<Scalar> r(2 * n_modes, 2 * n_modes);
  const MatrixX<Scalar> id = MatrixX<Scalar>::Identity(n_modes, n_modes);
  r << c * id, -s * id, s * id, c * id;
  return r;
}

/// Closed-form one-mode fidelity
///   F = 2 exp[-d^T (C1 + C2)^{-1} d] / (sqrt(L + P) - sqrt(P)),
/// L = det(C1 + C2), P = (det C1 - 1)(det C2 - 1).
template <typename Scalar>
Scalar fidelity_one_mode(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  if (a.n_modes() != 1 || b.n_modes() != 1) {
    throw DomainError("fidelity_one_mode: both states must have one mode");
  }
  const Eigen::Matrix<Scalar, 2, 2> sum = a.cov + b.cov;
  const Scalar lambda = sum.determinant();
  if (!(lambda > 0)) throw NumericError("fidelity_one_mode: C1 + C2 is singular");
  const Scalar phi =
      std::max<Scalar>(0, (a.cov.determinant() - 1) * (b.cov.determinant() - 1));
  const Eigen::Matrix<Scalar, 2, 1> delta = a.mean - b.mean;
  const Scalar expo = delta.dot(sum.inverse() * delta);
  const Scalar f = 2 * std::exp(-expo) / (std::sqrt(lambda + phi) - std::sqrt(phi));
  return std::clamp<Scalar>(f, 0, 1);
}

/// Uhlmann fidelity of two n-mode Gaussian states from their moments.
///
/// With V = C/2 and s the symplectic form,
///   X = s/4 + V2 s V1,  V_aux = s^T (V1 + V2)^{-1} X,
///   F^2 = det X / det(V1 + V2)^2 * prod_k 2 (sqrt(1 - 1/(4 nu_k^2)) + 1)
/// where +-i nu_k are the eigenvalues of V_aux s. The displacement enters as
/// exp[-d^T (C1 + C2)^{-1} d].
template <typename Scalar>
Scalar fidelity_multi(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index n = a.n_modes();
  if (b.n_modes() != n || a.cov.rows() != 2 * n || b.cov.rows() != 2 * n) {
    throw DomainError("fidelity_multi: mode count mismatch");
  }
  const MatrixX<Scalar> sigma = symplectic_form<Scalar>(n);
  const MatrixX<Scalar> v1 = Scalar(0.5) * a.cov;
  const MatrixX<Scalar> v2 = Scalar(0.5) * b.cov;
  const MatrixX<Scalar> vsum = v1 + v2;
  Eigen::PartialPivLU<MatrixX<Scalar>> lu(vsum);
  const Scalar det_sum = lu.determinant();
  if (!(det_sum > 0)) throw NumericError("fidelity_multi: C1 + C2 is singular");

  const MatrixX<Scalar> x = Scalar(0.25) * sigma + v2 * sigma * v1;
  const MatrixX<Scalar> v_aux = sigma.transpose() * lu.solve(x);
  const Scalar det_x = x.determinant();

  Eigen::EigenSolver<MatrixX<Scalar>> es(v_aux * sigma, false);
  if (es.info() != Eigen::Success) throw NumericError("fidelity_multi: eigen solve failed");
  // log-accumulated F^2 so large mode counts stay finite
  Scalar log_f2 = std::log(std::abs(det_x)) - 2 * std::log(det_sum);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const Complex lam = es.eigenvalues()(k);
    const Scalar nu2 = std::norm(lam);
    const Scalar root = std::sqrt(std::max<Scalar>(0, 1 - 1 / (4 * nu2)));
    log_f2 += std::log(2 * (root + 1));
  }
  const VectorX<Scalar> delta = a.mean - b.mean;
  const Scalar expo = delta.dot(lu.solve(delta)) / 2;  // (V1+V2)^{-1} = 2 (C1+C2)^{-1}
  const Scalar f = std::exp(log_f2 / 2 - expo);
  return std::clamp<Scalar>(f, 0, 1);
}

/// Bures distance sqrt(2 - 2 sqrt(F)).
template <typename Scalar>
Scalar bures_distance_from_fidelity(Scalar f) {
  return std::sqrt(std::max<Scalar>(0, 2 - 2 * std::sqrt(std::clamp<Scalar>(f, 0, 1))));
}

/// D_B = sqrt(1 - F).
template <typename Scalar>
Scalar db_distance_from_fidelity(Scalar f) {
  return std::sqrt(std::max<Scalar>(0, 1 - std::clamp<Scalar>(f, 0, 1)));
}

/// Dispatches to the one-mode closed form when possible.
template <typename Scalar>
Scalar fidelity(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  if (a.n_modes() == 1 && b.n_modes() == 1) return fidelity_one_mode(a, b);
  return fidelity_multi(a, b);
}

template <typename Scalar>
Scalar bures_distance(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  return bures_distance_from_fidelity(fidelity(a, b));
}

template <typename Scalar>
Scalar db_distance(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  return db_distance_from_fidelity(fidelity(a, b));
}

}  // namespace oscbath
