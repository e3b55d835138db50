// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fblris/channel.hpp"
#include "fblris/config.hpp"
#include "fblris/modulation.hpp"

namespace fblris {

// Monte Carlo estimates of the information-density moments, all in bits.
struct InfoStats {
    double i_bits = 0.0;    // mutual information
    double u_bits2 = 0.0;   // unconditional information variance
    double t_bits3 = 0.0;   // third absolute central moment
    std::optional<double> v_bits2;  // conditional variance, reported when U ~ 0
    double stderr_i = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kMinMomentSamples = 1000;

// log p(y | x, h) = -r ln(pi) - ||y - h x||^2 (unit-variance complex noise).
double log_pdf_y_given_xh(std::span<const std::complex<double>> y,
                          std::span<const std::complex<double>> x,
                          const Eigen::MatrixXcd& h);

// Information density in bits for one (x, y, h) triple; the p(H) prior
// cancels between numerator and denominator and is never evaluated.
double info_density_sample(std::span<const std::complex<double>> x,
                           const ChannelRealization& real,
                           std::span<const std::complex<double>> y,
                           const Constellation& c);

InfoStats estimate_moments(const SystemConfig& cfg, const Constellation& c,
                           std::size_t samples, std::uint64_t seed,
                           bool serial = false);

// V = E_X[Var(i | X)] with the channel realization integrated out.
double conditional_variance(const SystemConfig& cfg, const Constellation& c,
                            std::size_t samples, std::uint64_t seed,
                            bool serial = false);

namespace detail {
// Fills ivals[s] with the info density of sample s (bits); optionally records
// the drawn input index per sample. Chunked substreams; thread-count
// invariant.
void run_info_density(const SystemConfig& cfg, const Constellation& c,
                      std::size_t samples, std::uint64_t seed,
                      std::vector<double>& ivals,
                      std::vector<std::uint32_t>* input_idx, bool serial);
}  // namespace detail

}  // namespace fblris
