#pragma once

#include <complex>

namespace oscbath {

/// Exponential integral Ei(x) = -P.V. int_{-x}^inf e^{-t}/t dt, for x > 0.
double expint_ei(double x);

/// e^{-x} Ei(x) for x > 0; finite for arbitrarily large x.
double expint_ei_scaled(double x);

/// Trigamma psi'(q) for complex q with Re q > 0.
std::complex<double> trigamma(std::complex<double> q);

/// Hurwitz zeta at s = 2: sum_k 1/(q + k)^2 = psi'(q), Re q > 0.
inline std::complex<double> hurwitz_zeta2(std::complex<double> q) { return trigamma(q); }

}  // namespace oscbath
