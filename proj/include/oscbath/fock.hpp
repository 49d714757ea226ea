#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <string>
#include <vector>

#include "oscbath/flows.hpp"
#include "oscbath/gaussian.hpp"

namespace oscbath {

using DensityMatrix = Eigen::MatrixXcd;
using SparseOp = Eigen::SparseMatrix<std::complex<double>>;
using SparseLiouvillian = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

/// sum_jk K_jk (L_j rho L_k^dag + s {L_k^dag L_j, rho}) with L_j = a_j, or a_j^dag
/// when `creation` is set. s = -1/2 is the Lindblad form.
struct JumpTerm {
  Eigen::MatrixXcd k;
  bool creation = false;
};

/// Truncated-basis Lindbladian with time-independent H
///   sum_jk h_jk a_j^dag a_k + sum_j (f_j a_j^dag + h.c.).
/// Periodic drives are expressed in their rotating frame.
struct TruncatedLindbladSpec {
  int n_modes = 1;
  int cutoff = 4;
  Eigen::MatrixXcd h;
  Eigen::VectorXcd f;
  std::vector<JumpTerm> jumps;
  double anticommutator_sign = -0.5;

  int dim() const;
  void validate() const;
};

/// Spec carrying the same operators as a quadratic generator.
TruncatedLindbladSpec spec_from_generator(const QuadraticGenerator& g, int cutoff,
                                          double anticommutator_sign = -0.5);

/// Ladder operator a_mode on the (cutoff+1)^n_modes space, mode 0 most significant.
SparseOp annihilation(int n_modes, int cutoff, int mode);

/// rho -> L[rho].
class Superoperator {
 public:
  explicit Superoperator(const TruncatedLindbladSpec& spec);

  DensityMatrix apply(const DensityMatrix& rho) const;
  /// Sparse dim^2 x dim^2 matrix acting on column-major vec(rho).
  const SparseLiouvillian& liouvillian() const { return l_; }
  /// Dense form of liouvillian(); small spaces only.
  Eigen::MatrixXcd matrix() const;
  int dim() const { return dim_; }

 private:
  int dim_;
  SparseLiouvillian l_;
};

Superoperator build_superoperator(const TruncatedLindbladSpec& spec);

struct IntegrationOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  double initial_step = 1e-3;
  double min_step = 1e-12;
};

/// Dormand-Prince 5(4) integration; returns rho at each requested time
/// (ascending, starting at or after 0), re-Hermitized.
std::vector<DensityMatrix> integrate(const Superoperator& op, const DensityMatrix& rho0,
                                     const std::vector<double>& times,
                                     const IntegrationOptions& opt = {});
DensityMatrix integrate(const Superoperator& op, const DensityMatrix& rho0, double t,
                        const IntegrationOptions& opt = {});

struct FockMoments {
  GaussianStated state;
  /// Largest population on a basis state with some mode at the cutoff.
  double edge_population = 0.0;
  std::vector<std::string> warnings;
};

/// Means and covariance in the same quadrature convention as gaussian_core.
FockMoments moments(const DensityMatrix& rho, int n_modes, int cutoff);

double min_eigenvalue(const DensityMatrix& rho);

/// Moments of the truncated solution of g at each time, reported in the frame
/// of g. The integration runs in the frame rotating at omega_ref, which removes
/// the fast phase of number-conserving generators (requires f = 0 unless
/// omega_ref is 0).
std::vector<FockMoments> oracle_moments(const QuadraticGenerator& g, const DensityMatrix& rho0,
                                        int cutoff, const std::vector<double>& times,
                                        double omega_ref = 0.0,
                                        const IntegrationOptions& opt = {});

DensityMatrix fock_thermal(double nbar, int cutoff);
DensityMatrix fock_coherent(std::complex<double> beta, int cutoff);
/// Pure state with covariance diag(e^{-2r}, e^{2r}).
DensityMatrix fock_squeezed_vacuum(double r, int cutoff);
DensityMatrix fock_kron(const DensityMatrix& a, const DensityMatrix& b);
/// Keeps one mode of a two-mode matrix.
DensityMatrix fock_partial_trace(const DensityMatrix& rho, int cutoff, int keep);
/// exp(-i theta (a1^dag a2 + a2^dag a1)) on the two-mode space.
Eigen::MatrixXcd beam_splitter(double theta, int cutoff);
/// (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2.
double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

}  // namespace oscbath
