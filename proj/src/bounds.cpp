// SPDX-License-Identifier: Apache-2.0
#include "fblris/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fblris/channel.hpp"
#include "fblris/parallel.hpp"
#include "fblris/quadrature.hpp"
#include "fblris/special.hpp"

namespace fblris {

double achievability_rate(const InfoStats& stats, double n, double eps) {
    if (!(n >= 1.0)) throw std::domain_error("achievability_rate: n < 1");
    const double backoff =
        stats.u_bits2 > 0.0
            ? std::sqrt(stats.u_bits2 / n) * special::q_inv(eps)
            : 0.0;
    return std::max(0.0, stats.i_bits - backoff + 1.0 / n);
}

std::optional<double> achievability_refined(const InfoStats& stats, double n,
                                            double eps, double delta) {
    if (!(delta > 0.0)) throw std::domain_error("achievability_refined: delta <= 0");
    const double u = stats.u_bits2;
    const double t3 = stats.t_bits3;
    if (!(u > 0.0)) return std::nullopt;
    const double ed = std::exp(delta);
    const double base = 6.0 * t3 / (std::sqrt(n) * std::pow(u, 1.5));
    const double correction =
        base * (1.0 + 2.0 * ed / (ed - 1.0) +
                u * delta * ed / (std::sqrt(2.0 * M_PI) * 6.0 * t3 * (ed - 1.0)));
    const double arg = eps - correction;
    if (!(arg > 0.0 && arg < 1.0)) return std::nullopt;
    const double tau = special::q_inv(arg);
    return std::max(0.0, stats.i_bits - tau * std::sqrt(u / n) + 1.0 / n);
}

std::optional<double> achievability_refined(const InfoStats& stats, double n,
                                            double eps) {
    // log grid over the delta parameter; keep the best applicable rate
    std::optional<double> best;
    const int points = 25;
    for (int i = 0; i < points; ++i) {
        const double delta =
            0.1 * std::pow(100.0, static_cast<double>(i) / (points - 1));
        const auto r = achievability_refined(stats, n, eps, delta);
        if (r && (!best || *r > *best)) best = r;
    }
    return best;
}

double converse_rate(const InfoStats& stats, double n, double eps, int m) {
    const double eps_conv = eps + eps / std::sqrt(n);
    if (!(eps_conv < 1.0))
        throw std::domain_error("converse_rate: eps + eps/sqrt(n) must be < 1");
    const double backoff =
        stats.u_bits2 > 0.0
            ? std::sqrt(stats.u_bits2 / n) * special::q_inv(eps_conv)
            : 0.0;
    return stats.i_bits - backoff +
           (m + 1.0) * std::log2(n) / (2.0 * n);
}

double capacity_mc(const SystemConfig& cfg_in, ChannelModel model,
                   std::size_t samples, std::uint64_t seed, bool serial) {
    SystemConfig cfg = cfg_in;
    cfg.model = model;
    cfg.validate();
    const double p_over_t = cfg.power() / cfg.t;
    const std::size_t n_chunks = (samples + kMcChunkSize - 1) / kMcChunkSize;
    std::vector<double> chunk_sum(n_chunks, 0.0);
    for_each_chunk(
        n_chunks,
        [&](std::size_t chunk) {
            Rng rng(seed, chunk);
            const std::size_t begin = chunk * kMcChunkSize;
            const std::size_t end = std::min(begin + kMcChunkSize, samples);
            double acc = 0.0;
            for (std::size_t s = begin; s < end; ++s) {
                const Eigen::MatrixXcd h = sample_channel_matrix(cfg, rng);
                const Eigen::VectorXd g = gram_eigenvalues(h);
                double bits = 0.0;
                for (Eigen::Index j = 0; j < g.size(); ++j)
                    bits += std::log2(1.0 + p_over_t * g(j));
                acc += bits;
            }
            chunk_sum[chunk] = acc;
        },
        serial);
    double total = 0.0;
    for (double v : chunk_sum) total += v;
    return total / static_cast<double>(samples);
}

CapacityEstimate gaussian_capacity(const SystemConfig& cfg_in, std::size_t samples,
                                   std::uint64_t seed, bool serial) {
    SystemConfig cfg = cfg_in;
    cfg.model = ChannelModel::gaussian;
    cfg.validate();
    const double p_over_t = cfg.power() / cfg.t;
    const std::size_t n_chunks = (samples + kMcChunkSize - 1) / kMcChunkSize;
    std::vector<double> chunk_sum(n_chunks, 0.0), chunk_sumsq(n_chunks, 0.0);
    for_each_chunk(
        n_chunks,
        [&](std::size_t chunk) {
            Rng rng(seed, chunk);
            const std::size_t begin = chunk * kMcChunkSize;
            const std::size_t end = std::min(begin + kMcChunkSize, samples);
            double acc = 0.0, accsq = 0.0;
            for (std::size_t s = begin; s < end; ++s) {
                const Eigen::MatrixXcd h = sample_channel_matrix(cfg, rng);
                const Eigen::VectorXd g = gram_eigenvalues(h);
                double bits = 0.0;
                for (Eigen::Index j = 0; j < g.size(); ++j)
                    bits += std::log2(1.0 + p_over_t * g(j));
                acc += bits;
                accsq += bits * bits;
            }
            chunk_sum[chunk] = acc;
            chunk_sumsq[chunk] = accsq;
        },
        serial);
    double total = 0.0, totalsq = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        total += chunk_sum[c];
        totalsq += chunk_sumsq[c];
    }
    const double n = static_cast<double>(samples);
    CapacityEstimate est;
    est.mc_bits = total / n;
    const double var = std::max(0.0, totalsq / n - est.mc_bits * est.mc_bits);
    est.stderr_bits = std::sqrt(var / n);

    const EigenvalueDensity density(cfg);
    const double per_eigen = integrate_semi_inf(
        [&](double g) { return std::log2(1.0 + p_over_t * g) * density(g); }, 0.0,
        1e-10);
    est.quad_bits = cfg.m() * per_eigen;
    return est;
}

long required_blocklength(const InfoStats& stats, double eps, double eta) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::domain_error("required_blocklength: eta must be in (0,1)");
    const double qi = special::q_inv(eps);
    const double n = stats.u_bits2 / (stats.i_bits * stats.i_bits) *
                     std::pow(qi / (1.0 - eta), 2);
    return static_cast<long>(std::ceil(n));
}

BoundCurve bound_curve(const SystemConfig& cfg, const std::vector<double>& n_grid,
                       double eps, std::size_t samples, std::uint64_t seed) {
    if (n_grid.empty()) throw std::invalid_argument("bound_curve: empty n grid");
    const Constellation c = make_constellation(cfg.scheme, cfg);
    BoundCurve curve;
    curve.stats = estimate_moments(cfg, c, samples, seed);
    curve.capacity_ref = gaussian_capacity(cfg, samples, seed + 1).mc_bits;
    const int m = cfg.m();
    for (double n : n_grid) {
        curve.n_values.push_back(n);
        curve.ach_rate.push_back(achievability_rate(curve.stats, n, eps));
        const auto refined = achievability_refined(curve.stats, n, eps);
        curve.ach_refined.push_back(
            refined ? *refined : std::numeric_limits<double>::quiet_NaN());
        curve.conv_rate.push_back(converse_rate(curve.stats, n, eps, m));
    }
    return curve;
}

}  // namespace fblris
