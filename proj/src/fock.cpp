#include "oscbath/fock.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscbath/errors.hpp"

namespace oscbath {

namespace {

using cd = std::complex<double>;

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int occupation(int index, int n_modes, int cutoff, int mode) {
  const int stride = ipow(cutoff + 1, n_modes - 1 - mode);
  return (index / stride) % (cutoff + 1);
}

}  // namespace

int TruncatedLindbladSpec::dim() const { return ipow(cutoff + 1, n_modes); }

void TruncatedLindbladSpec::validate() const {
  if (n_modes < 1 || n_modes > 2) throw DomainError("fock spec: 1 or 2 modes supported");
  if (cutoff < 2) throw DomainError("fock spec: cutoff must be >= 2");
  if (h.rows() != n_modes || h.cols() != n_modes || f.size() != n_modes) {
    throw DomainError("fock spec: Hamiltonian shape does not match mode count");
  }
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("fock spec: h is not Hermitian");
  }
  for (const auto& j : jumps) {
    if (j.k.rows() != n_modes || j.k.cols() != n_modes) {
      throw DomainError("fock spec: rate matrix shape does not match mode count");
    }
    if ((j.k - j.k.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      throw DomainError("fock spec: rate matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(j.k);
    if (es.eigenvalues().minCoeff() < -1e-12) {
      throw DomainError("fock spec: rate matrix is not positive semidefinite");
    }
  }
}

TruncatedLindbladSpec spec_from_generator(const QuadraticGenerator& g, int cutoff,
                                          double anticommutator_sign) {
  TruncatedLindbladSpec s;
  s.n_modes = static_cast<int>(g.h.rows());
  s.cutoff = cutoff;
  s.h = g.h;
  s.f = g.f;
  s.jumps = {{g.k_emission, false}, {g.k_absorption, true}};
  s.anticommutator_sign = anticommutator_sign;
  return s;
}

SparseOp annihilation(int n_modes, int cutoff, int mode) {
  const int dim = ipow(cutoff + 1, n_modes);
  const int stride = ipow(cutoff + 1, n_modes - 1 - mode);
  std::vector<Eigen::Triplet<cd>> trip;
  for (int i = 0; i < dim; ++i) {
    const int n = occupation(i, n_modes, cutoff, mode);
    if (n > 0) trip.emplace_back(i - stride, i, std::sqrt(static_cast<double>(n)));
  }
  SparseOp a(dim, dim);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

Superoperator::Superoperator(const TruncatedLindbladSpec& spec) : dim_(spec.dim()) {
  spec.validate();
  const int n = spec.n_modes;
  std::vector<SparseOp> a, ad;
  for (int m = 0; m < n; ++m) {
    a.push_back(annihilation(n, spec.cutoff, m));
    ad.push_back(SparseOp(a.back().adjoint()));
  }
  SparseOp h(dim_, dim_);
  for (int j = 0; j < n; ++j) {
    h += spec.f(j) * ad[static_cast<std::size_t>(j)] +
         std::conj(spec.f(j)) * a[static_cast<std::size_t>(j)];
    for (int k = 0; k < n; ++k) {
      if (spec.h(j, k) != cd(0)) {
        h += spec.h(j, k) * SparseOp(ad[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(k)]);
      }
    }
  }
  SparseOp decay(dim_, dim_);
  std::vector<SparseOp> jumps;
  std::vector<double> rates;
  for (const auto& term : spec.jumps) {
    const auto& l = term.creation ? ad : a;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (term.k(j, k) == cd(0)) continue;
        decay += term.k(j, k) * SparseOp(SparseOp(l[static_cast<std::size_t>(k)].adjoint()) *
                                         l[static_cast<std::size_t>(j)]);
      }
    }
    // sum_jk K_jk L_j rho L_k^dag = sum_m kappa_m J_m rho J_m^dag, J_m = sum_j U_jm L_j
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(term.k);
    for (int m = 0; m < n; ++m) {
      const double kappa = es.eigenvalues()(m);
      if (kappa <= 0) continue;
      SparseOp jm(dim_, dim_);
      for (int j = 0; j < n; ++j) {
        jm += es.eigenvectors()(j, m) * l[static_cast<std::size_t>(j)];
      }
      jumps.push_back(std::move(jm));
      rates.push_back(kappa);
    }
  }
  const SparseOp h_eff = h + cd(0, spec.anticommutator_sign) * decay;

  // vec(A rho B) = (B^T kron A) vec(rho)
  SparseOp id(dim_, dim_);
  id.setIdentity();
  SparseOp l = Eigen::kroneckerProduct(id, SparseOp(cd(0, -1) * h_eff));
  l += SparseOp(Eigen::kroneckerProduct(SparseOp(cd(0, 1) * SparseOp(h_eff.conjugate())), id));
  for (std::size_t m = 0; m < jumps.size(); ++m) {
    l += SparseOp(Eigen::kroneckerProduct(SparseOp(rates[m] * SparseOp(jumps[m].conjugate())),
                                          jumps[m]));
  }
  l.prune(cd(0));
  l_ = l;
  l_.makeCompressed();
}

DensityMatrix Superoperator::apply(const DensityMatrix& rho) const {
  DensityMatrix out(dim_, dim_);
  Eigen::Map<Eigen::VectorXcd>(out.data(), out.size()).noalias() =
      l_ * Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
  return out;
}

Eigen::MatrixXcd Superoperator::matrix() const { return Eigen::MatrixXcd(l_); }

Superoperator build_superoperator(const TruncatedLindbladSpec& spec) { return Superoperator(spec); }

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

DensityMatrix hermitize(const DensityMatrix& r) { return 0.5 * (r + r.adjoint()); }

}  // namespace

std::vector<DensityMatrix> integrate(const Superoperator& op, const DensityMatrix& rho0,
                                     const std::vector<double>& times,
                                     const IntegrationOptions& opt) {
  if (rho0.rows() != op.dim() || rho0.cols() != op.dim()) {
    throw DomainError("integrate: density matrix size does not match the operator");
  }
  using Vec = Eigen::VectorXcd;
  const SparseLiouvillian& l = op.liouvillian();
  const Eigen::Index d = op.dim();
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  Vec y = Eigen::Map<const Vec>(rho0.data(), rho0.size());
  Vec k1 = l * y, k2, k3, k4, k5, k6, k7, y_new, tmp;
  double t = 0.0;
  double h = opt.initial_step;
  for (const double target : times) {
    if (target < t) throw DomainError("integrate: output times must be ascending and >= 0");
    while (t < target) {
      const bool last = t + h >= target;
      const double step = last ? target - t : h;
      tmp = y + step * (a21 * k1);
      k2.noalias() = l * tmp;
      tmp = y + step * (a31 * k1 + a32 * k2);
      k3.noalias() = l * tmp;
      tmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
      k4.noalias() = l * tmp;
      tmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      k5.noalias() = l * tmp;
      tmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      k6.noalias() = l * tmp;
      y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7.noalias() = l * y_new;
      const double err =
          (step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).cwiseAbs().maxCoeff();
      const double scale =
          opt.abs_tol + opt.rel_tol * std::max(y.cwiseAbs().maxCoeff(), y_new.cwiseAbs().maxCoeff());
      const double ratio = err / scale;
      const double factor = ratio == 0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
      if (ratio <= 1.0) {
        t = last ? target : t + step;
        y.swap(y_new);
        k1.swap(k7);
        if (!last) h = step * factor;
      } else {
        h = step * factor;
        if (h < opt.min_step) {
          std::ostringstream msg;
          msg << "integrate: step size underflow at t = " << t;
          throw NumericError(msg.str());
        }
      }
    }
    out.push_back(hermitize(Eigen::Map<const DensityMatrix>(y.data(), d, d)));
  }
  return out;
}

DensityMatrix integrate(const Superoperator& op, const DensityMatrix& rho0, double t,
                        const IntegrationOptions& opt) {
  return integrate(op, rho0, std::vector<double>{t}, opt).front();
}

FockMoments moments(const DensityMatrix& rho, int n_modes, int cutoff) {
  const int dim = ipow(cutoff + 1, n_modes);
  if (rho.rows() != dim || rho.cols() != dim) throw DomainError("moments: size mismatch");
  std::vector<SparseOp> r(static_cast<std::size_t>(2 * n_modes));
  for (int m = 0; m < n_modes; ++m) {
    const SparseOp a = annihilation(n_modes, cutoff, m);
    const SparseOp ad = a.adjoint();
    r[static_cast<std::size_t>(m)] = (a + ad) * (1.0 / std::numbers::sqrt2);
    r[static_cast<std::size_t>(m + n_modes)] = (a - ad) * cd(0, -1.0 / std::numbers::sqrt2);
  }
  auto expect = [&](const SparseOp& o) { return (o * rho).trace().real(); };
  const Eigen::Index n2 = 2 * n_modes;
  Eigen::VectorXd mean(n2);
  for (Eigen::Index i = 0; i < n2; ++i) mean(i) = expect(r[static_cast<std::size_t>(i)]);
  Eigen::MatrixXd cov(n2, n2);
  for (Eigen::Index i = 0; i < n2; ++i) {
    for (Eigen::Index j = i; j < n2; ++j) {
      const SparseOp& ri = r[static_cast<std::size_t>(i)];
      const SparseOp& rj = r[static_cast<std::size_t>(j)];
      const SparseOp sym = ri * rj + rj * ri;
      cov(i, j) = cov(j, i) = expect(sym) - 2 * mean(i) * mean(j);
    }
  }
  FockMoments out{GaussianStated{mean, cov}, 0.0, {}};
  for (int i = 0; i < dim; ++i) {
    for (int m = 0; m < n_modes; ++m) {
      if (occupation(i, n_modes, cutoff, m) == cutoff) {
        out.edge_population = std::max(out.edge_population, rho(i, i).real());
      }
    }
  }
  if (out.edge_population > 1e-6) {
    std::ostringstream msg;
    msg << "population " << out.edge_population << " at the cutoff; moments are truncated";
    out.warnings.push_back(msg.str());
  }
  return out;
}

double min_eigenvalue(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(rho), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix fock_thermal(double nbar, int cutoff) {
  if (nbar < 0) throw DomainError("fock_thermal: nbar must be >= 0");
  DensityMatrix rho = DensityMatrix::Zero(cutoff + 1, cutoff + 1);
  const double q = nbar / (nbar + 1);
  double p = 1 / (nbar + 1);
  for (int n = 0; n <= cutoff; ++n, p *= q) rho(n, n) = p;
  return rho;
}

namespace {

DensityMatrix projector(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

}  // namespace

DensityMatrix fock_coherent(std::complex<double> beta, int cutoff) {
  Eigen::VectorXcd psi(cutoff + 1);
  cd amp = std::exp(-0.5 * std::norm(beta));
  for (int n = 0; n <= cutoff; ++n) {
    psi(n) = amp;
    amp *= beta / std::sqrt(static_cast<double>(n + 1));
  }
  return projector(psi);
}

DensityMatrix fock_squeezed_vacuum(double r, int cutoff) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(cutoff + 1);
  const double t = -std::tanh(r);
  // c_n = (-tanh r)^n sqrt((2n)!) / (2^n n!) / sqrt(cosh r)
  double c = 1 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n <= cutoff; ++n) {
    psi(2 * n) = c;
    c *= t * std::sqrt((2.0 * n + 1) * (2.0 * n + 2)) / (2.0 * (n + 1));
  }
  return projector(psi);
}

DensityMatrix fock_kron(const DensityMatrix& a, const DensityMatrix& b) {
  DensityMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix fock_partial_trace(const DensityMatrix& rho, int cutoff, int keep) {
  const int d = cutoff + 1;
  if (rho.rows() != d * d) throw DomainError("fock_partial_trace: expected a two-mode matrix");
  if (keep != 0 && keep != 1) throw DomainError("fock_partial_trace: keep must be 0 or 1");
  DensityMatrix out = DensityMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        out(i, j) += keep == 0 ? rho(i * d + k, j * d + k) : rho(k * d + i, k * d + j);
      }
    }
  }
  return out;
}

Eigen::MatrixXcd beam_splitter(double theta, int cutoff) {
  const SparseOp a1 = annihilation(2, cutoff, 0);
  const SparseOp a2 = annihilation(2, cutoff, 1);
  const Eigen::MatrixXcd g = Eigen::MatrixXcd(SparseOp(a1.adjoint()) * a2 + SparseOp(a2.adjoint()) * a1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const Eigen::VectorXcd ph = (es.eigenvalues() * (-theta)).unaryExpr([](double x) {
    return std::polar(1.0, x);
  });
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

Eigen::MatrixXcd psd_sqrt(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(rho));
  const Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const Eigen::MatrixXcd s = psd_sqrt(rho1);
  const Eigen::MatrixXcd m = s * rho2 * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(m), Eigen::EigenvaluesOnly);
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

std::vector<FockMoments> oracle_moments(const QuadraticGenerator& g, const DensityMatrix& rho0,
                                        int cutoff, const std::vector<double>& times,
                                        double omega_ref, const IntegrationOptions& opt) {
  const auto n = g.h.rows();
  if (omega_ref != 0.0 && g.f.cwiseAbs().maxCoeff() != 0.0) {
    throw DomainError("oracle_moments: a rotating frame needs a drive-free generator");
  }
  QuadraticGenerator shifted = g;
  shifted.h -= omega_ref * Eigen::MatrixXcd::Identity(n, n);
  const Superoperator op(spec_from_generator(shifted, cutoff));
  const auto rhos = integrate(op, rho0, times, opt);
  std::vector<FockMoments> out;
  out.reserve(rhos.size());
  for (std::size_t k = 0; k < rhos.size(); ++k) {
    FockMoments m = moments(rhos[k], static_cast<int>(n), cutoff);
    if (omega_ref != 0.0) m.state = transform(m.state, phase_rotation<double>(n, -omega_ref * times[k]));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace oscbath
