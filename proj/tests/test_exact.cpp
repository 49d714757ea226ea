#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oscbath/bath.hpp"
#include "oscbath/errors.hpp"
#include "oscbath/exact.hpp"
#include "oscbath/gaussian.hpp"

using namespace oscbath;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXd random_symmetric(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) w(i, j) = w(j, i) = u(rng);
  w.diagonal().array() += 1.5;
  return w;
}

BathCouplings small_bath(int modes, double alpha = 0.01) {
  const OhmicSpectrum j(alpha, 3.0);
  return discretize(j, modes, omega_range(j, RangeConvention::EqualTails, 0.5));
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("coupling matrix layout") {
    const CouplingMatrix none = build_single(1.3, BathCouplings{});
    REQUIRE(none.dim() == 1);
    CHECK(none.w(0, 0) == 1.3);

    BathCouplings one;
    one.frequencies = {0.9};
    one.couplings = {0.05};
    const CouplingMatrix m1 = build_single(1.0, one);
    Eigen::Matrix2d expect;
    expect << 1.0, 0.05, 0.05, 0.9;
    CHECK(m1.w.isApprox(expect));

    const BathCouplings b = small_bath(6);
    const CouplingMatrix s = build_single(1.0, b);
    CHECK(s.w.isApprox(s.w.transpose()));
    for (int j = 0; j < 6; ++j) CHECK(s.w(0, j + 1) == b.couplings[static_cast<std::size_t>(j)]);

    const CouplingMatrix two = build_two(1.0, 1.2, 0.0, b, b);
    CHECK(two.w.topLeftCorner(7, 7).isApprox(s.w));
    CHECK(two.w.topRightCorner(7, 7).isZero());
    CHECK(two.system_modes == std::vector<Eigen::Index>{0, 7});
    const CouplingMatrix bare = build_two(1.0, 1.2, 0.05, BathCouplings{}, BathCouplings{});
    Eigen::Matrix2d e2;
    e2 << 1.0, 0.05, 0.05, 1.2;
    CHECK(bare.w.isApprox(e2));
    CHECK(bare.warnings.empty());
    CHECK_FALSE(build_two(1.0, 1.0, 0.3, b, b).warnings.empty());
  }

  TEST_CASE("propagator is orthogonal symplectic, has the group property and M(0) = I") {
    std::mt19937_64 rng(11);
    for (Eigen::Index n : {3, 20, 51}) {
      const PropagatorCache cache(random_symmetric(n, rng));
      const Eigen::MatrixXd sigma = symplectic_form<double>(n);
      CHECK(propagator(cache, 0.0).isIdentity(1e-14));
      for (double t : {0.7, 13.0, 100.0}) {
        const Eigen::MatrixXd m = propagator(cache, t);
        CHECK((m * sigma * m.transpose() - sigma).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((m * m.transpose()).isIdentity(1e-10));
      }
      const Eigen::MatrixXd lhs = propagator(cache, 37.5);
      const Eigen::MatrixXd rhs = propagator(cache, 12.5) * propagator(cache, 25.0);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("cos and sin of W agree with the Schur-Parlett matrix functions") {
    std::mt19937_64 rng(3);
    const Eigen::MatrixXd w = random_symmetric(15, rng);
    const PropagatorCache cache(w);
    const double t = 4.2;
    const Eigen::MatrixXd wt = w * t;
    CHECK((cache.t_real(t) - wt.cos()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((cache.t_imag(t) + wt.sin()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((cache.eigenvectors() * cache.eigenvalues().asDiagonal() * cache.eigenvectors().transpose() - w)
              .cwiseAbs()
              .maxCoeff() < 1e-10 * w.norm());
  }

  TEST_CASE("resonant pair: closed-form Rabi swap") {
    const double g = 0.1;
    BathCouplings one;
    one.frequencies = {1.0};
    one.couplings = {g};
    const CouplingMatrix cm = build_single(1.0, one);
    const PropagatorCache cache(cm.w);
    for (double t : {0.0, 1.0, 7.3, std::numbers::pi / (2 * g), std::numbers::pi / g}) {
      CAPTURE(t);
      // a(t) = e^{-i t}(a cos gt - i a1 sin gt)
      const cd ph = std::exp(cd(0, -t));
      const cd t00 = ph * std::cos(g * t), t01 = ph * cd(0, -std::sin(g * t));
      CHECK(std::abs(cache.t_real(t)(0, 0) - t00.real()) < 1e-13);
      CHECK(std::abs(cache.t_imag(t)(0, 0) - t00.imag()) < 1e-13);
      CHECK(std::abs(cache.t_real(t)(0, 1) - t01.real()) < 1e-13);
      CHECK(std::abs(cache.t_imag(t)(0, 1) - t01.imag()) < 1e-13);
    }
    // one thermal quantum in the system, vacuum bath: full swap at pi/(2g), back at pi/g
    GaussianStated sys = make_vacuum<double>(1);
    sys.cov *= 3;
    const ExactSimulator sim(cm, product_initial_state(cm, sys, {0.0}));
    const GaussianStated half = sim.global_state(std::numbers::pi / (2 * g));
    CHECK(partial_trace(half, {0}).cov.isIdentity(1e-12));
    CHECK(partial_trace(half, {1}).cov.isApprox(3 * Eigen::Matrix2d::Identity(), 1e-12));
    CHECK(sim.system_state(std::numbers::pi / g).cov.isApprox(sys.cov, 1e-12));
  }

  TEST_CASE("vacuum and equal-frequency thermal states are stationary") {
    const CouplingMatrix cm = build_single(1.0, small_bath(30));
    const PropagatorCache cache(cm.w);
    const Eigen::MatrixXd m = propagator(cache, 17.0);
    const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(62, 62);
    CHECK(evolve_cov(i, m).isIdentity(1e-12));
    CHECK(evolve_cov(2.5 * i, m).isApprox(2.5 * i, 1e-12));
  }

  TEST_CASE("reduced covariance matches the explicit double sum") {
    const CouplingMatrix cm = build_single(1.0, small_bath(20, 0.02));
    const double t = 3.0;
    // independent cos/sin via Schur-Parlett; element-wise sums over the x and p blocks
    const Eigen::MatrixXd wt = cm.w * t;
    const Eigen::MatrixXd tr = wt.cos();
    const Eigen::MatrixXd ti = -wt.sin();
    const Eigen::Index n = cm.dim();

    for (int variant = 0; variant < 2; ++variant) {
      GaussianStated sys;
      if (variant == 0) {
        sys = make_vacuum<double>(1);
        sys.cov *= thermal_variance(1.0, 30.0);
      } else {
        sys = transform(make_squeezed_vacuum(0.6), Eigen::MatrixXd(phase_rotation<double>(1, 0.4)));
        sys.mean << 0.3, -1.1;
      }
      const GaussianStated g0 = product_initial_state(cm, sys, {1.0});
      const GaussianStated red = ExactSimulator(cm, g0).system_state(t);

      double cxx = 0, cxp = 0, cpp = 0;
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
          const double xx = g0.cov(k, l), xp = g0.cov(k, n + l), px = g0.cov(n + k, l),
                       pp = g0.cov(n + k, n + l);
          // x1 = sum_k TR_1k x_k - TI_1k p_k,  p1 = sum_k TI_1k x_k + TR_1k p_k
          cxx += tr(0, k) * tr(0, l) * xx - tr(0, k) * ti(0, l) * xp - ti(0, k) * tr(0, l) * px +
                 ti(0, k) * ti(0, l) * pp;
          cxp += tr(0, k) * ti(0, l) * xx + tr(0, k) * tr(0, l) * xp - ti(0, k) * ti(0, l) * px -
                 ti(0, k) * tr(0, l) * pp;
          cpp += ti(0, k) * ti(0, l) * xx + ti(0, k) * tr(0, l) * xp + tr(0, k) * ti(0, l) * px +
                 tr(0, k) * tr(0, l) * pp;
        }
      }
      const double scale = std::max(1.0, std::abs(cxx));
      CHECK(std::abs(red.cov(0, 0) - cxx) < 1e-12 * scale);
      CHECK(std::abs(red.cov(0, 1) - cxp) < 1e-12 * scale);
      CHECK(std::abs(red.cov(1, 1) - cpp) < 1e-12 * scale);
    }
  }

  TEST_CASE("global evolution preserves det C and matches the reduced rows") {
    const CouplingMatrix cm = build_single(1.0, small_bath(25, 0.02));
    GaussianStated sys = make_squeezed_vacuum(0.5);
    sys.mean << 1.0, 0.2;
    const GaussianStated g0 = product_initial_state(cm, sys, {0.7});
    const ExactSimulator sim(cm, g0);
    for (double t : {2.0, 40.0}) {
      const GaussianStated g = sim.global_state(t);
      CHECK(std::log(g.cov.determinant()) == doctest::Approx(std::log(g0.cov.determinant())).epsilon(1e-8));
      const GaussianStated red = sim.system_state(t);
      const GaussianStated pt = partial_trace(g, {0});
      CHECK((red.cov - pt.cov).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((red.mean - pt.mean).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("driven mode without bath follows the closed form") {
    const double omega = 1.0, omega_l = 0.8, r = 0.05;
    const CouplingMatrix cm = build_single(omega, BathCouplings{});
    const PropagatorCache cache0 = PropagatorCache(cm.w).shifted(omega_l);
    const AffineDrive drive{r, omega_l};
    const GaussianStated vac = make_vacuum<double>(1);
    for (double t : {0.0, 0.9, 12.0, 55.5}) {
      CAPTURE(t);
      // <a(t)> = r (e^{-i wL t} - e^{-i W t}) / (wL - W), then into the frame rotating at wL
      const cd lab = r * (std::exp(cd(0, -omega_l * t)) - std::exp(cd(0, -omega * t))) / (omega_l - omega);
      const cd rot = std::exp(cd(0, omega_l * t)) * lab;
      const GaussianStated s = evolve_driven(drive, cache0, vac, t);
      CHECK(std::abs(s.mean(0) - std::numbers::sqrt2 * rot.real()) < 1e-13);
      CHECK(std::abs(s.mean(1) - std::numbers::sqrt2 * rot.imag()) < 1e-13);
      CHECK(s.cov.isIdentity(1e-13));
      const ExactSimulator sim(cm, vac, drive);
      CHECK((sim.system_state(t).mean - s.mean).cwiseAbs().maxCoeff() < 1e-13);
    }
    CHECK_THROWS_AS(evolve_driven({r, omega}, PropagatorCache(cm.w).shifted(omega), vac, 1.0),
                    NumericError);
  }

  TEST_CASE("drive leaves covariances untouched and r = 0 is undriven") {
    const CouplingMatrix cm = build_single(1.0, small_bath(40, 0.01));
    const GaussianStated g0 = product_initial_state(cm, make_squeezed_vacuum(0.3), {0.5});
    const double omega_l = 0.93;
    const ExactSimulator driven(cm, g0, AffineDrive{0.02, omega_l});
    const ExactSimulator undriven(cm, g0, AffineDrive{0.0, omega_l});
    const PropagatorCache cache0 = PropagatorCache(cm.w).shifted(omega_l);
    for (double t : {1.0, 25.0}) {
      const GaussianStated a = driven.system_state(t);
      const GaussianStated b = undriven.system_state(t);
      CHECK((a.cov - b.cov).cwiseAbs().maxCoeff() < 1e-12);
      const GaussianStated ref = partial_trace(evolve_driven({0.02, omega_l}, cache0, g0, t), {0});
      CHECK((a.mean - ref.mean).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((a.cov - ref.cov).cwiseAbs().maxCoeff() < 1e-12);
      // undriven in the rotating frame = lab evolution followed by the phase rotation
      const GaussianStated lab = ExactSimulator(cm, g0).system_state(t);
      const GaussianStated rot = transform(lab, Eigen::MatrixXd(phase_rotation<double>(1, omega_l * t)));
      CHECK((b.cov - rot.cov).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("recurrence time estimate") {
    const OhmicSpectrum j(0.002, 3.0);
    const auto range = omega_range(j, RangeConvention::EqualTails, 0.5);
    const double e1 = recurrence_time_estimate(discretize(j, 100, range));
    const double e2 = recurrence_time_estimate(discretize(j, 199, range));
    CHECK(e2 / e1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(recurrence_time_estimate(discretize(j, 175, range)) > 50);
    CHECK(recurrence_time_estimate(discretize(j, 5000, range)) > 1000);
  }
}
