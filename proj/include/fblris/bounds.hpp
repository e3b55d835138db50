// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fblris/config.hpp"
#include "fblris/info_metrics.hpp"

namespace fblris {

// R >= I - sqrt(U/n) Q^{-1}(eps) + 1/n, floored at 0. Bits per channel use.
double achievability_rate(const InfoStats& stats, double n, double eps);

// Berry-Esseen-refined achievability with the full finite-n tau correction;
// nullopt when the Q^{-1} argument leaves (0,1) for every delta on the grid.
std::optional<double> achievability_refined(const InfoStats& stats, double n,
                                            double eps, double delta);
std::optional<double> achievability_refined(const InfoStats& stats, double n,
                                            double eps);

// R <= I - sqrt(U/n) Q^{-1}(eps + eps/sqrt(n)) + (m+1) log2(n) / (2n).
double converse_rate(const InfoStats& stats, double n, double eps, int m);

struct CapacityEstimate {
    double mc_bits = 0.0;      // E[log2 det(I + (P/t) H H^H)], CN(0,N_ris) entries
    double stderr_bits = 0.0;
    double quad_bits = 0.0;    // Laguerre eigenvalue-density quadrature
};

CapacityEstimate gaussian_capacity(const SystemConfig& cfg, std::size_t samples,
                                   std::uint64_t seed, bool serial = false);

// MC capacity under an explicit channel model (diagnostic companion to
// gaussian_capacity, which pins the Gaussian-entry law).
double capacity_mc(const SystemConfig& cfg, ChannelModel model,
                   std::size_t samples, std::uint64_t seed, bool serial = false);

// n ~ (U/I^2) (Q^{-1}(eps)/(1-eta))^2, rounded up.
long required_blocklength(const InfoStats& stats, double eps, double eta);

struct BoundCurve {
    std::vector<double> n_values;
    std::vector<double> ach_rate;
    std::vector<double> ach_refined;  // NaN where not applicable
    std::vector<double> conv_rate;
    double capacity_ref = 0.0;
    InfoStats stats;
};

BoundCurve bound_curve(const SystemConfig& cfg, const std::vector<double>& n_grid,
                       double eps, std::size_t samples, std::uint64_t seed);

}  // namespace fblris
