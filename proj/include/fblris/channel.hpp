// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "fblris/config.hpp"
#include "fblris/rng.hpp"

namespace fblris {

// One draw of the cascaded RIS channel: segment matrices, unit-modulus RIS
// coefficients, composite matrix and the m largest eigenvalues of H^H H
// (descending).
struct ChannelRealization {
    Eigen::MatrixXcd h1;     // n_ris x t
    Eigen::MatrixXcd h2;     // r x n_ris
    Eigen::VectorXcd theta;  // n_ris
    Eigen::MatrixXcd h;      // r x t composite
    Eigen::VectorXd g;       // m eigenvalues, descending
};

// m largest eigenvalues of H^H H, computed on the smaller Gram matrix.
Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXcd& h);

ChannelRealization sample_ris_channel(const SystemConfig& cfg, Rng& rng);

// r x t channel matrix under cfg.model (exact cascade, Rayleigh-magnitude
// entries, or CN(0, N_ris) entries).
Eigen::MatrixXcd sample_channel_matrix(const SystemConfig& cfg, Rng& rng);

// Large-N_ris effective scalar-channel density (2h/N) exp(-h^2/N), h >= 0.
double effective_scalar_pdf(double h_mag, int n_ris);

// Marginal eigenvalue density of H^H H under the CN(0, N_ris)-entry law
// (Laguerre sum in g/N_ris, numerically renormalized to unit mass).
class EigenvalueDensity {
  public:
    explicit EigenvalueDensity(const SystemConfig& cfg);
    double operator()(double g_val) const;

  private:
    double unnormalized(double g_val) const;
    int m_;
    int alpha_;  // max{t,r} - m
    double n_ris_;
    double norm_;
};

double eigen_density(double g_val, const SystemConfig& cfg);

// y = h x + w with w i.i.d. CN(0, noise_scale^2). noise_scale = 0 is the
// noiseless test hook.
Eigen::VectorXcd apply_channel(const ChannelRealization& real,
                               const Eigen::VectorXcd& x, Rng& rng,
                               double noise_scale = 1.0);

}  // namespace fblris
