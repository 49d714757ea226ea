#include <doctest.h>

#include <cmath>
#include <complex>

#include "oscbath/special_functions.hpp"

using namespace oscbath;

namespace {

// Frozen 30-digit values from tools/gen_special_fixtures.py.
struct EiCase {
  double x, ei, ei_scaled;
};
constexpr EiCase kEi[] = {
    {1e-06, -13.238293893062491289, -13.238280654775217371},
    {0.01, -4.0179294654266693657, -3.9779503992615576755},
    {0.3, -0.30266853926582593442, -0.22422236871524382877},
    {1.0, 1.8951178163559367555, 0.69717488323506606877},
    {2.5, 7.0737658945786007119, 0.58065006372226666922},
    {6.0, 85.989762142439204804, 0.21314731008159360315},
    {15.0, 234955.85249076830358, 0.071873540492410708556},
    {40.0, 6039718263611241.5784, 0.025658862785975145206},
    {120.0, 1.0960290621580310706e+50, 0.0084039651271993567399},
    {700.0, 1.4509787360525608526e+301, 0.0014306181009351634011},
};

struct ZetaCase {
  double re, im, z_re, z_im;
};
constexpr ZetaCase kZeta[] = {
    {1.0, 0.0, 1.6449340668482264365, 0.0},
    {1.5, 0.0, 0.93480220054467930942, 0.0},
    {0.3, 0.2, 4.0464784461997783057, -7.3313531553660298687},
    {1.333, 0.05, 1.093244745130649923, -0.056014990301066376657},
    {1.05, 3.0, 0.060741739590468585298, -0.32507761486790002036},
    {2.0, -7.5, 0.025745928228337030543, 0.12836027687460287643},
    {11.0, 40.0, 0.0061402738394322316887, -0.023389239337969039182},
    {4.0, 0.001, 0.28382293330445296058, -0.000080039725994999751886},
    {1.01, 150.0, 0.000022666656491705675112, -0.0066666142909203966502},
    {60.0, -2.0, 0.016787361916392654083, 0.00056425454237773667605},
};

}  // namespace

TEST_SUITE("special") {
  TEST_CASE("Ei against high-precision values") {
    for (const auto& c : kEi) {
      CAPTURE(c.x);
      if (c.x <= 40) CHECK(expint_ei(c.x) == doctest::Approx(c.ei).epsilon(1e-13));
      CHECK(expint_ei_scaled(c.x) == doctest::Approx(c.ei_scaled).epsilon(1e-13));
    }
  }

  TEST_CASE("Ei has its root near 0.3725") {
    CHECK(std::abs(expint_ei(0.37250741078136663446)) < 1e-14);
  }

  TEST_CASE("Hurwitz zeta at s = 2 against high-precision values") {
    for (const auto& c : kZeta) {
      CAPTURE(c.re);
      CAPTURE(c.im);
      const std::complex<double> z = hurwitz_zeta2({c.re, c.im});
      const double scale = std::abs(std::complex<double>(c.z_re, c.z_im));
      CHECK(std::abs(z - std::complex<double>(c.z_re, c.z_im)) <= 1e-13 * scale);
    }
  }

  TEST_CASE("Hurwitz zeta recurrence zeta(2, q) = zeta(2, q + 1) + 1/q^2") {
    for (const std::complex<double> q : {std::complex<double>(0.7, 0.0), {2.3, -1.1}, {0.05, 9.0}}) {
      const auto lhs = hurwitz_zeta2(q);
      const auto rhs = hurwitz_zeta2(q + 1.0) + 1.0 / (q * q);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
    }
  }

  TEST_CASE("Hurwitz zeta is conjugate symmetric") {
    const std::complex<double> q(1.4, 2.6);
    CHECK(std::abs(hurwitz_zeta2(std::conj(q)) - std::conj(hurwitz_zeta2(q))) < 1e-15);
  }
}
