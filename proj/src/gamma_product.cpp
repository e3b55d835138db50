// SPDX-License-Identifier: Apache-2.0
#include "fblris/gamma_product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fblris/channel.hpp"
#include "fblris/rng.hpp"
#include "fblris/special.hpp"

namespace fblris {

namespace detail {

namespace {

// log of the Mellin-transform product at s, minus s*ln(z): the log integrand
// of the inversion contour.
std::complex<double> log_integrand(std::complex<double> s, double log_z,
                                   const std::vector<double>& shapes,
                                   const std::vector<double>& scales) {
    std::complex<double> acc = -s * log_z;
    for (std::size_t j = 0; j < shapes.size(); ++j) {
        acc += special::log_gamma(shapes[j] + s - 1.0) -
               special::log_gamma(shapes[j]) + (s - 1.0) * std::log(scales[j]);
    }
    return acc;
}

double digamma(double x) {
    double acc = 0.0;
    while (x < 6.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    return acc + std::log(x) - 0.5 * inv -
           inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

// abscissa minimizing the real part of the log integrand (saddle point of
// the inversion contour); keeps exp-scaling cancellation-free in the tails
double saddle_abscissa(double log_z, const std::vector<double>& shapes,
                       const std::vector<double>& scales) {
    const double k_min = *std::min_element(shapes.begin(), shapes.end());
    auto slope = [&](double c) {
        double d = -log_z;
        for (std::size_t j = 0; j < shapes.size(); ++j)
            d += digamma(shapes[j] + c - 1.0) + std::log(scales[j]);
        return d;
    };
    double lo = 1.0 - k_min + 1e-8, hi = std::max(k_min + 2.0, 8.0);
    if (slope(lo) >= 0.0) return lo;  // z in the deep left tail
    while (slope(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e12) return hi;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double inverse_mellin_product(double z, const std::vector<double>& shapes,
                              const std::vector<double>& scales) {
    if (!(z > 0.0)) throw std::domain_error("inverse_mellin_product: z <= 0");
    const double log_z = std::log(z);
    const double c = saddle_abscissa(log_z, shapes, scales);

    const double scale0 = log_integrand({c, 0.0}, log_z, shapes, scales).real();
    auto g = [&](double t) {
        return std::exp(log_integrand({c, t}, log_z, shapes, scales) - scale0).real();
    };

    // truncation: integrand magnitude down by e^-42 relative to t = 0
    double trunc = 1.0;
    while (log_integrand({c, trunc}, log_z, shapes, scales).real() - scale0 > -42.0) {
        trunc *= 2.0;
        if (trunc > 1e8)
            throw std::runtime_error("inverse_mellin_product: contour does not decay");
    }

    // trapezoid with step doubling
    std::size_t n = 64;
    double h = trunc / static_cast<double>(n);
    double sum = 0.5 * (g(0.0) + g(trunc));
    for (std::size_t i = 1; i < n; ++i) sum += g(h * static_cast<double>(i));
    double prev = sum * h;
    for (int iter = 0; iter < 24; ++iter) {
        double odd = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            odd += g(h * (static_cast<double>(i) + 0.5));
        n *= 2;
        h *= 0.5;
        sum += odd;
        const double cur = sum * h;
        if (std::fabs(cur - prev) <= 1e-9 * std::max(1.0, std::fabs(cur))) {
            const double val = std::exp(scale0) * cur / M_PI;
            return val < 0.0 ? 0.0 : val;  // clip quadrature jitter in far tails
        }
        prev = cur;
    }
    throw std::runtime_error(
        "inverse_mellin_product: no convergence at z=" + std::to_string(z));
}

}  // namespace detail

std::complex<double> mellin_gamma(std::complex<double> s,
                                  const GammaProductParams& p) {
    if (!(p.k > 0.0) || !(p.theta > 0.0) || p.n_copies < 1)
        throw std::domain_error("mellin_gamma: invalid parameters");
    if (s.real() <= 1.0 - p.k)
        throw std::domain_error("mellin_gamma: s at or left of the pole line");
    const std::complex<double> per =
        special::log_gamma(p.k + s - 1.0) - special::log_gamma(p.k) +
        (s - 1.0) * std::log(p.theta);
    return std::exp(static_cast<double>(p.n_copies) * per);
}

double product_gamma_pdf(double z, const GammaProductParams& p) {
    if (!(p.k > 0.0) || !(p.theta > 0.0) || p.n_copies < 1)
        throw std::domain_error("product_gamma_pdf: invalid parameters");
    if (!(z > 0.0)) throw std::domain_error("product_gamma_pdf: z <= 0");
    const std::vector<double> shapes(static_cast<std::size_t>(p.n_copies), p.k);
    const std::vector<double> scales(static_cast<std::size_t>(p.n_copies), p.theta);
    return detail::inverse_mellin_product(z, shapes, scales);
}

double aux_channel_pdf(double s_val, const std::vector<double>& omega, double n) {
    if (omega.empty()) throw std::domain_error("aux_channel_pdf: empty omega");
    if (!(n >= 2.0)) throw std::domain_error("aux_channel_pdf: n must be >= 2");
    for (double w : omega)
        if (!(w >= 1.0))
            throw std::domain_error("aux_channel_pdf: omega entries must be >= 1");
    if (omega.size() == 1) return special::gamma_pdf(s_val, n, omega[0] / n);
    if (!(s_val > 0.0)) throw std::domain_error("aux_channel_pdf: s <= 0");
    std::vector<double> shapes(omega.size(), n);
    std::vector<double> scales(omega.size());
    for (std::size_t j = 0; j < omega.size(); ++j) scales[j] = omega[j] / n;
    return detail::inverse_mellin_product(s_val, shapes, scales);
}

double gamma_pdf_peak(double n, double omega) {
    if (!(n >= 2.0)) throw std::domain_error("gamma_pdf_peak: n must be >= 2");
    if (!(omega > 0.0)) throw std::domain_error("gamma_pdf_peak: omega <= 0");
    const double log_peak = std::log(n / omega) + (n - 1.0) * std::log(n - 1.0) -
                            (n - 1.0) - special::log_gamma(n);
    return std::exp(log_peak);
}

double aux_converse_diagnostic(double codebook_size, double n,
                               const SystemConfig& cfg, std::size_t samples,
                               std::uint64_t seed) {
    if (!(codebook_size >= 2.0))
        throw std::domain_error("aux_converse_diagnostic: M must be >= 2");
    cfg.validate();
    const int m = cfg.m();
    const double p_over_t = cfg.power() / cfg.t;

    // MC estimate of E[prod omega_j], omega_j eigenvalues of I + (P/t) H H^H
    Rng rng(seed);
    double acc = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Eigen::MatrixXcd h = sample_channel_matrix(cfg, rng);
        const Eigen::VectorXd g = gram_eigenvalues(h);
        double prod = 1.0;
        for (int j = 0; j < m; ++j) prod *= 1.0 + p_over_t * g(j);
        acc += prod;
    }
    const double mean_prod = acc / static_cast<double>(samples);

    const double log_m_size = std::log(codebook_size);
    const double log_peak_factor =
        n * std::log(n - 1.0) - (n - 1.0) - special::log_gamma(n);
    const double log_b1 = -log_m_size + m * log_peak_factor + std::log(mean_prod);
    const double log_b2 = 0.5 * m * std::log(n) - log_m_size;
    const double log_bound = std::min(log_b1, log_b2);
    return log_bound >= 0.0 ? 1.0 : std::exp(log_bound);
}

}  // namespace fblris
