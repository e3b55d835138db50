// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fblris/config.hpp"

namespace fblris {

// Product of n_copies i.i.d. Gamma(k, theta) variables.
struct GammaProductParams {
    double k = 1.0;
    double theta = 1.0;
    int n_copies = 1;
};

// Mellin transform of the product density at s:
// theta^{N(s-1)} * [Gamma(k+s-1)/Gamma(k)]^N. Requires Re(s) > 1-k.
std::complex<double> mellin_gamma(std::complex<double> s,
                                  const GammaProductParams& p);

// Density of the product, computed by numerical inversion of the Mellin
// transform along a vertical contour through the real-axis saddle point
// (minimizer of the log integrand, so the tails stay cancellation-free),
// with step-doubling trapezoidal quadrature. Throws std::runtime_error when
// the contour quadrature fails to converge.
double product_gamma_pdf(double z, const GammaProductParams& p);

// m-stream product-Gamma density with per-stream shape n and scales
// omega_j/n (generalizes the equal-parameter product to distinct scales).
double aux_channel_pdf(double s_val, const std::vector<double>& omega, double n);

// max_s gamma_pdf(s; n, omega/n) = (n/omega) (n-1)^{n-1} e^{-(n-1)} / Gamma(n),
// evaluated in log space.
double gamma_pdf_peak(double n, double omega);

// Upper bound on 1 - eps' for the auxiliary channel: the tighter of the two
// displayed closed forms. Diagnostic only.
double aux_converse_diagnostic(double codebook_size, double n,
                               const SystemConfig& cfg, std::size_t samples,
                               std::uint64_t seed);

namespace detail {
// Inverse Mellin transform at z for a product of independent Gamma factors
// with shapes k[j] and scales theta[j].
double inverse_mellin_product(double z, const std::vector<double>& shapes,
                              const std::vector<double>& scales);
}  // namespace detail

}  // namespace fblris
