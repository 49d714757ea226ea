#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oscbath/errors.hpp"
#include "oscbath/flows.hpp"
#include "oscbath/fock.hpp"

using namespace oscbath;
using cd = std::complex<double>;

namespace {

QuadraticGenerator one_mode(double h, cd f, double ke, double ka) {
  QuadraticGenerator g;
  g.h = Eigen::MatrixXcd::Constant(1, 1, h);
  g.f = Eigen::VectorXcd::Constant(1, f);
  g.k_emission = Eigen::MatrixXcd::Constant(1, 1, ke);
  g.k_absorption = Eigen::MatrixXcd::Constant(1, 1, ka);
  return g;
}

double trace_drift(const Superoperator& op, const DensityMatrix& rho) {
  return std::abs(op.apply(rho).trace());
}

}  // namespace

TEST_SUITE("fock") {
  TEST_CASE("ladder operators") {
    const Eigen::MatrixXcd a(annihilation(1, 4, 0));
    for (int n = 1; n <= 4; ++n) CHECK(a(n - 1, n) == cd(std::sqrt(double(n)), 0));
    const Eigen::MatrixXcd a1(annihilation(2, 3, 0));
    const Eigen::MatrixXcd a2(annihilation(2, 3, 1));
    CHECK((a1 * a2 - a2 * a1).isZero());
    // mode 0 is the most significant digit: |1,0> has index cutoff + 1
    CHECK(a1(0, 4) == cd(1, 0));
    CHECK(a2(0, 1) == cd(1, 0));
  }

  TEST_CASE("spec validation") {
    TruncatedLindbladSpec s = spec_from_generator(one_mode(1, 0, 0.1, 0), 4);
    CHECK_NOTHROW(s.validate());
    s.cutoff = 1;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec_from_generator(one_mode(1, 0, -0.1, 0), 4);
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec_from_generator(one_mode(1, 0, 0.1, 0), 4);
    s.h(0, 0) = cd(1, 0.1);
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.n_modes = 3;
    CHECK_THROWS_AS(s.validate(), DomainError);
  }

  TEST_CASE("cutoff-2 action matches the symbolic expansion") {
    // Fixture from tools/gen_fock_fixture.py.
    DensityMatrix rho(3, 3);
    rho << 0.5, cd(0.1, 0.05), -0.04, cd(0.1, -0.05), 0.3, cd(0, 0.02), -0.04, cd(0, -0.02), 0.2;
    Eigen::Matrix3cd expect;
    expect << cd(0.040000000000000000000, 0), cd(-0.090656854249492380195, 0.092171572875253809902),
        cd(-0.010284271247461900976, -0.032786796564403574268),
        cd(-0.090656854249492380195, -0.092171572875253809902), cd(0.0086862915010152396096, 0),
        cd(-0.010000000000000000000, 0.032355339059327376220),
        cd(-0.010284271247461900976, 0.032786796564403574268),
        cd(-0.010000000000000000000, -0.032355339059327376220),
        cd(-0.048686291501015239610, 0);
    const Superoperator op(spec_from_generator(one_mode(0.7, cd(0.2, -0.1), 0.3, 0.1), 2));
    CHECK((op.apply(rho) - expect).cwiseAbs().maxCoeff() < 1e-15);
    // the dense matrix acts on column-major vec(rho)
    const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), 9);
    const Eigen::VectorXcd lv = op.matrix() * v;
    CHECK((Eigen::Map<const Eigen::Matrix3cd>(lv.data()) - expect).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("zero rates: unitary evolution conserves trace and purity") {
    const int cutoff = 20;
    const Superoperator op(spec_from_generator(one_mode(1.0, cd(0.05, 0.02), 0, 0), cutoff));
    const DensityMatrix rho0 = fock_coherent({0.4, 0.1}, cutoff);
    const DensityMatrix rho = integrate(op, rho0, 6.0);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
    CHECK(std::abs((rho * rho).trace().real() - (rho0 * rho0).trace().real()) < 1e-9);
  }

  TEST_CASE("vacuum is a fixed point at zero temperature") {
    const Superoperator op(spec_from_generator(generator_single(1.0, 0.2, 0.0), 6));
    CHECK(op.apply(fock_thermal(0.0, 6)).cwiseAbs().maxCoeff() < 1e-16);
  }

  TEST_CASE("single quantum decays as exp(-2 gamma t)") {
    const int cutoff = 5;
    const double gamma = 0.07;
    const Superoperator op(spec_from_generator(generator_single(1.0, gamma, 0.0), cutoff));
    DensityMatrix rho0 = DensityMatrix::Zero(cutoff + 1, cutoff + 1);
    rho0(1, 1) = 1;
    const std::vector<double> times{0.0, 1.0, 5.0, 10.0};
    const auto out = integrate(op, rho0, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      CAPTURE(times[k]);
      CHECK(out[k](1, 1).real() == doctest::Approx(std::exp(-2 * gamma * times[k])).epsilon(1e-9));
    }
    CHECK((out[0] - rho0).cwiseAbs().maxCoeff() == 0);
  }

  TEST_CASE("moments of standard states") {
    const int cutoff = 40;
    const FockMoments vac = moments(fock_thermal(0.0, cutoff), 1, cutoff);
    CHECK(vac.state.mean.isZero());
    CHECK(vac.state.cov.isIdentity(1e-14));
    const cd beta(0.7, -0.4);
    const FockMoments coh = moments(fock_coherent(beta, cutoff), 1, cutoff);
    CHECK(std::abs(coh.state.mean(0) - std::numbers::sqrt2 * beta.real()) < 1e-12);
    CHECK(std::abs(coh.state.mean(1) - std::numbers::sqrt2 * beta.imag()) < 1e-12);
    CHECK(coh.state.cov.isIdentity(1e-12));
    const FockMoments th = moments(fock_thermal(0.8, cutoff), 1, cutoff);
    CHECK(th.state.cov.isApprox(2.6 * Eigen::Matrix2d::Identity(), 1e-9));
    const FockMoments sq = moments(fock_squeezed_vacuum(0.5, cutoff), 1, cutoff);
    CHECK(std::abs(sq.state.cov(0, 0) - std::exp(-1.0)) < 1e-10);
    CHECK(std::abs(sq.state.cov(1, 1) - std::exp(1.0)) < 1e-10);
    CHECK(th.warnings.empty());
    const FockMoments clipped = moments(fock_thermal(3.0, 6), 1, 6);
    CHECK_FALSE(clipped.warnings.empty());
  }

  TEST_CASE("two-mode states, partial trace and beam splitter") {
    const int cutoff = 8;
    DensityMatrix a = fock_thermal(0.3, cutoff);
    DensityMatrix b = fock_coherent({0.2, 0.3}, cutoff);
    a /= a.trace();
    b /= b.trace();
    const DensityMatrix ab = fock_kron(a, b);
    CHECK((fock_partial_trace(ab, cutoff, 0) - a).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((fock_partial_trace(ab, cutoff, 1) - b).cwiseAbs().maxCoeff() < 1e-15);
    const Eigen::MatrixXcd u = beam_splitter(0.4, cutoff);
    CHECK((u * u.adjoint()).isIdentity(1e-12));
    // 50:50 splitter moves half of a single quantum into the second mode
    DensityMatrix one = DensityMatrix::Zero(81, 81);
    one(9, 9) = 1;  // |1, 0>
    const Eigen::MatrixXcd bs = beam_splitter(std::numbers::pi / 4, cutoff);
    const DensityMatrix out = bs * one * bs.adjoint();
    CHECK(std::abs(out(9, 9).real() - 0.5) < 1e-12);
    CHECK(std::abs(out(1, 1).real() - 0.5) < 1e-12);
  }

  TEST_CASE("trace preservation and positivity during integration") {
    const int cutoff = 12;
    QuadraticGenerator g;
    g.h.resize(2, 2);
    g.h << 0.0, 0.1, 0.1, 0.05;  // frame rotating at the first mode frequency
    g.f = Eigen::VectorXcd::Zero(2);
    g.f(0) = cd(0.03, 0.01);
    g.k_emission.resize(2, 2);
    g.k_emission << 0.2, cd(0.05, 0.02), cd(0.05, -0.02), 0.1;
    g.k_absorption.resize(2, 2);
    g.k_absorption << 0.05, 0.01, 0.01, 0.04;
    const Superoperator op(spec_from_generator(g, cutoff));
    DensityMatrix rho0 = fock_kron(fock_squeezed_vacuum(0.3, cutoff), fock_thermal(0.2, cutoff));
    rho0 /= rho0.trace();
    const std::vector<double> times{0.5, 2.0, 5.0, 10.0};
    const auto out = integrate(op, rho0, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      CHECK(std::abs(out[k].trace() - 1.0) < 1e-9 * times[k]);
      CHECK(min_eigenvalue(out[k]) > -1e-7);
      CHECK((out[k] - out[k].adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("literal +1/2 anticommutator breaks trace preservation") {
    const int cutoff = 8;
    const QuadraticGenerator g = generator_single(1.0, 0.1, 0.5);
    const DensityMatrix rho = fock_thermal(0.3, cutoff);
    const Superoperator canonical(spec_from_generator(g, cutoff));
    const Superoperator literal(spec_from_generator(g, cutoff, +0.5));
    CHECK(trace_drift(canonical, rho) < 1e-12);
    CHECK(trace_drift(literal, rho) > 0.1);
  }

  TEST_CASE("cutoff convergence") {
    const QuadraticGenerator g = generator_driven(1.0, 0.05, 0.1, cd(0.02, 0.01), 0.9);
    const double t = 15.0;
    GaussianStated prev;
    for (int cutoff : {15, 30}) {
      const Superoperator op(spec_from_generator(g, cutoff));
      DensityMatrix rho0 = fock_squeezed_vacuum(0.3, cutoff);
      rho0 /= rho0.trace();
      const GaussianStated m = moments(integrate(op, rho0, t), 1, cutoff).state;
      if (cutoff == 30) {
        CHECK((m.mean - prev.mean).cwiseAbs().maxCoeff() < 1e-7);
        CHECK((m.cov - prev.cov).cwiseAbs().maxCoeff() < 1e-7);
      }
      prev = m;
    }
  }

  TEST_CASE("rotating-frame integration reports lab-frame moments") {
    const int cutoff = 10;
    QuadraticGenerator g;
    g.h.resize(2, 2);
    g.h << 3.0, 0.2, 0.2, 3.1;
    g.f = Eigen::VectorXcd::Zero(2);
    g.k_emission = 0.1 * Eigen::MatrixXcd::Identity(2, 2);
    g.k_absorption = 0.02 * Eigen::MatrixXcd::Identity(2, 2);
    DensityMatrix rho0 = fock_kron(fock_coherent({0.5, 0.1}, cutoff), fock_thermal(0.1, cutoff));
    rho0 /= rho0.trace();
    const std::vector<double> times{0.7, 2.5};
    const auto lab = oracle_moments(g, rho0, cutoff, times);
    const auto rot = oracle_moments(g, rho0, cutoff, times, 3.05);
    for (std::size_t k = 0; k < times.size(); ++k) {
      CHECK((lab[k].state.mean - rot[k].state.mean).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((lab[k].state.cov - rot[k].state.cov).cwiseAbs().maxCoeff() < 1e-9);
    }
    g.f(0) = 0.1;
    CHECK_THROWS_AS(oracle_moments(g, rho0, cutoff, times, 3.05), DomainError);
  }

  TEST_CASE("step underflow is reported") {
    const Superoperator op(spec_from_generator(generator_single(1e6, 1.0, 0.0), 4));
    IntegrationOptions opt;
    opt.min_step = 1e-3;
    opt.initial_step = 1e-3;
    CHECK_THROWS_AS(integrate(op, fock_coherent({0.5, 0}, 4), 1.0, opt), NumericError);
  }
}
