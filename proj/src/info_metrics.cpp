// SPDX-License-Identifier: Apache-2.0
#include "fblris/info_metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "fblris/parallel.hpp"

namespace fblris {

namespace {

constexpr double kLog2e = 1.4426950408889634;  // 1/ln 2

double kahan_sum(const std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace

double log_pdf_y_given_xh(std::span<const std::complex<double>> y,
                          std::span<const std::complex<double>> x,
                          const Eigen::MatrixXcd& h) {
    if (static_cast<Eigen::Index>(y.size()) != h.rows() ||
        static_cast<Eigen::Index>(x.size()) != h.cols())
        throw std::invalid_argument("log_pdf_y_given_xh: dimension mismatch");
    double sq = 0.0;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        std::complex<double> res = y[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            res -= h(i, j) * x[static_cast<std::size_t>(j)];
        sq += std::norm(res);
    }
    return -static_cast<double>(h.rows()) * std::log(M_PI) - sq;
}

namespace detail {

// Hot path: one sample of the information density given a drawn channel
// matrix. Residual norms against every candidate input, then log-sum-exp.
struct DensityKernel {
    const InputSet* inputs;
    int t, r;

    // workspace sized r * count
    double sample_bits(const Eigen::MatrixXcd& h, std::size_t true_idx,
                       const std::complex<double>* y,
                       std::vector<double>& lp) const {
        const std::size_t count = inputs->count;
        for (std::size_t k = 0; k < count; ++k) {
            const std::complex<double>* xk = inputs->vec(k);
            double sq = 0.0;
            for (int i = 0; i < r; ++i) {
                std::complex<double> res = y[i];
                for (int j = 0; j < t; ++j) res -= h(i, j) * xk[j];
                sq += std::norm(res);
            }
            lp[k] = -sq;  // -r ln(pi) cancels in the ratio
        }
        double mx = lp[0];
        for (std::size_t k = 1; k < count; ++k) mx = std::max(mx, lp[k]);
        double acc = 0.0;
        for (std::size_t k = 0; k < count; ++k) acc += std::exp(lp[k] - mx);
        // i = lp_true - log( (1/K) sum exp(lp) )
        const double lse = mx + std::log(acc / static_cast<double>(count));
        return (lp[true_idx] - lse) * kLog2e;
    }
};

void run_info_density(const SystemConfig& cfg, const Constellation& c,
                      std::size_t samples, std::uint64_t seed,
                      std::vector<double>& ivals,
                      std::vector<std::uint32_t>* input_idx, bool serial) {
    cfg.validate();
    if (samples < kMinMomentSamples)
        throw std::invalid_argument("estimate_moments: samples below 1e3 floor");
    const InputSet inputs = enumerate_inputs(c, cfg.t);
    ivals.resize(samples);
    if (input_idx) input_idx->resize(samples);

    const std::size_t n_chunks = (samples + kMcChunkSize - 1) / kMcChunkSize;
    const DensityKernel kernel{&inputs, cfg.t, cfg.r};

    for_each_chunk(
        n_chunks,
        [&](std::size_t chunk) {
            Rng rng(seed, chunk);
            const std::size_t begin = chunk * kMcChunkSize;
            const std::size_t end = std::min(begin + kMcChunkSize, samples);
            std::vector<double> lp(inputs.count);
            std::vector<std::complex<double>> y(cfg.r);
            for (std::size_t s = begin; s < end; ++s) {
                const Eigen::MatrixXcd h = sample_channel_matrix(cfg, rng);
                const std::size_t k = rng.below(inputs.count);
                const std::complex<double>* x = inputs.vec(k);
                for (int i = 0; i < cfg.r; ++i) {
                    std::complex<double> acc = rng.cgaussian();
                    for (int j = 0; j < cfg.t; ++j) acc += h(i, j) * x[j];
                    y[static_cast<std::size_t>(i)] = acc;
                }
                ivals[s] = kernel.sample_bits(h, k, y.data(), lp);
                if (input_idx) (*input_idx)[s] = static_cast<std::uint32_t>(k);
            }
        },
        serial);
}

}  // namespace detail

double info_density_sample(std::span<const std::complex<double>> x,
                           const ChannelRealization& real,
                           std::span<const std::complex<double>> y,
                           const Constellation& c) {
    const int t = static_cast<int>(real.h.cols());
    const InputSet inputs = enumerate_inputs(c, t);
    // locate x in the enumeration
    std::size_t true_idx = inputs.count;
    for (std::size_t k = 0; k < inputs.count; ++k) {
        const std::complex<double>* xk = inputs.vec(k);
        bool match = true;
        for (int j = 0; j < t && match; ++j)
            match = std::abs(xk[j] - x[static_cast<std::size_t>(j)]) < 1e-12;
        if (match) {
            true_idx = k;
            break;
        }
    }
    if (true_idx == inputs.count)
        throw std::invalid_argument("info_density_sample: x not in input support");
    detail::DensityKernel kernel{&inputs, t, static_cast<int>(real.h.rows())};
    std::vector<double> lp(inputs.count);
    return kernel.sample_bits(real.h, true_idx, y.data(), lp);
}

InfoStats estimate_moments(const SystemConfig& cfg, const Constellation& c,
                           std::size_t samples, std::uint64_t seed, bool serial) {
    std::vector<double> ivals;
    detail::run_info_density(cfg, c, samples, seed, ivals, nullptr, serial);

    const double n = static_cast<double>(samples);
    const double mean = kahan_sum(ivals) / n;

    double m2 = 0.0, c2 = 0.0, m3 = 0.0, c3 = 0.0;
    for (double v : ivals) {
        const double d = v - mean;
        const double d2 = d * d;
        {
            const double y = d2 - c2;
            const double t2 = m2 + y;
            c2 = (t2 - m2) - y;
            m2 = t2;
        }
        const double a3 = d2 * std::fabs(d);
        {
            const double y = a3 - c3;
            const double t3 = m3 + y;
            c3 = (t3 - m3) - y;
            m3 = t3;
        }
    }
    InfoStats stats;
    stats.i_bits = mean;
    stats.u_bits2 = m2 / n;
    stats.t_bits3 = m3 / n;
    stats.stderr_i = std::sqrt(stats.u_bits2 / n);
    stats.samples = samples;
    stats.seed = seed;
    if (stats.u_bits2 < 1e-9)
        stats.v_bits2 = conditional_variance(cfg, c, samples, seed, serial);
    return stats;
}

double conditional_variance(const SystemConfig& cfg, const Constellation& c,
                            std::size_t samples, std::uint64_t seed, bool serial) {
    std::vector<double> ivals;
    std::vector<std::uint32_t> idx;
    detail::run_info_density(cfg, c, samples, seed, ivals, &idx, serial);

    const InputSet inputs = enumerate_inputs(c, cfg.t);
    std::vector<double> sum(inputs.count, 0.0), sumsq(inputs.count, 0.0);
    std::vector<std::size_t> count(inputs.count, 0);
    for (std::size_t s = 0; s < ivals.size(); ++s) {
        sum[idx[s]] += ivals[s];
        sumsq[idx[s]] += ivals[s] * ivals[s];
        ++count[idx[s]];
    }
    double v = 0.0;
    const double n = static_cast<double>(samples);
    for (std::size_t k = 0; k < inputs.count; ++k) {
        if (count[k] == 0) continue;
        const double nk = static_cast<double>(count[k]);
        const double mk = sum[k] / nk;
        const double vark = sumsq[k] / nk - mk * mk;
        v += (nk / n) * std::max(0.0, vark);
    }
    return v;
}

}  // namespace fblris
