// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace fblris::special {

// Gaussian tail probability Q(x) = P[N(0,1) > x].
// Saturates to {0,1} for |x| > 40; throws std::domain_error on non-finite x.
double q_func(double x);

// Inverse of q_func on (0,1). Rational initial guess refined by Newton
// iterations on q_func; |q_func(q_inv(p)) - p| <= 1e-10.
double q_inv(double p);

// log Gamma(x), x > 0.
double log_gamma(double x);

// log Gamma(z) for Re(z) > 0 (Lanczos); principal branch.
std::complex<double> log_gamma(std::complex<double> z);

// Generalized Laguerre polynomial L_i^a(x) by the three-term recurrence.
// Degree capped at kLaguerreMaxDegree.
inline constexpr int kLaguerreMaxDegree = 64;
double laguerre(int i, double a, double x);

// Gamma density x^{k-1} e^{-x/theta} / (Gamma(k) theta^k), evaluated in log
// space; underflows cleanly to 0. Requires k > 0, theta > 0, x >= 0.
double gamma_pdf(double x, double k, double theta);
double log_gamma_pdf(double x, double k, double theta);

}  // namespace fblris::special
