// SPDX-License-Identifier: Apache-2.0
#include "fblris/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "fblris/quadrature.hpp"
#include "fblris/special.hpp"

namespace fblris {

Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXcd& h) {
    const Eigen::Index r = h.rows(), t = h.cols();
    const Eigen::Index m = std::min(r, t);
    Eigen::MatrixXcd gram;
    if (r <= t)
        gram = h * h.adjoint();  // r x r
    else
        gram = h.adjoint() * h;  // t x t
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    Eigen::VectorXd ev = solver.eigenvalues();  // ascending
    Eigen::VectorXd g(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double v = ev(ev.size() - 1 - i);
        g(i) = v < 0.0 ? 0.0 : v;  // clamp eigensolver jitter
    }
    return g;
}

ChannelRealization sample_ris_channel(const SystemConfig& cfg, Rng& rng) {
    cfg.validate();
    ChannelRealization out;
    out.h1.resize(cfg.n_ris, cfg.t);
    out.h2.resize(cfg.r, cfg.n_ris);
    out.theta.resize(cfg.n_ris);
    for (int i = 0; i < cfg.n_ris; ++i)
        for (int j = 0; j < cfg.t; ++j) out.h1(i, j) = rng.cgaussian();
    for (int i = 0; i < cfg.r; ++i)
        for (int j = 0; j < cfg.n_ris; ++j) out.h2(i, j) = rng.cgaussian();
    for (int i = 0; i < cfg.n_ris; ++i) {
        const double phase = rng.uniform(0.0, 2.0 * M_PI);
        out.theta(i) = std::polar(1.0, phase);
    }
    out.h = out.h2 * out.theta.asDiagonal() * out.h1;
    out.g = gram_eigenvalues(out.h);
    return out;
}

Eigen::MatrixXcd sample_channel_matrix(const SystemConfig& cfg, Rng& rng) {
    switch (cfg.model) {
        case ChannelModel::exact:
            return sample_ris_channel(cfg, rng).h;
        case ChannelModel::rayleigh: {
            // |h| Rayleigh with E[h^2] = N_ris, phase dropped
            Eigen::MatrixXcd h(cfg.r, cfg.t);
            for (int i = 0; i < cfg.r; ++i)
                for (int j = 0; j < cfg.t; ++j)
                    h(i, j) = std::sqrt(-static_cast<double>(cfg.n_ris) *
                                        std::log(rng.uniform_pos()));
            return h;
        }
        default: {
            const double s = std::sqrt(static_cast<double>(cfg.n_ris));
            Eigen::MatrixXcd h(cfg.r, cfg.t);
            for (int i = 0; i < cfg.r; ++i)
                for (int j = 0; j < cfg.t; ++j) h(i, j) = s * rng.cgaussian();
            return h;
        }
    }
}

double effective_scalar_pdf(double h_mag, int n_ris) {
    if (h_mag < 0.0) throw std::domain_error("effective_scalar_pdf: h_mag < 0");
    const double n = static_cast<double>(n_ris);
    return (2.0 * h_mag / n) * std::exp(-h_mag * h_mag / n);
}

EigenvalueDensity::EigenvalueDensity(const SystemConfig& cfg)
    : m_(cfg.m()), alpha_(std::max(cfg.t, cfg.r) - cfg.m()),
      n_ris_(static_cast<double>(cfg.n_ris)) {
    cfg.validate();
    if (m_ - 1 > special::kLaguerreMaxDegree)
        throw std::domain_error("EigenvalueDensity: stream count above Laguerre cap");
    norm_ = 1.0;
    const double total =
        integrate_semi_inf([this](double g) { return unnormalized(g); }, 0.0, 1e-11);
    norm_ = total;
}

double EigenvalueDensity::unnormalized(double g_val) const {
    const double x = g_val / n_ris_;
    double sum = 0.0;
    for (int i = 0; i < m_; ++i) {
        const double coef =
            std::exp(special::log_gamma(i + 1.0) - special::log_gamma(i + alpha_ + 1.0));
        const double l = special::laguerre(i, static_cast<double>(alpha_), x);
        sum += coef * l * l;
    }
    const double env =
        (alpha_ == 0) ? std::exp(-x)
                      : (x > 0.0 ? std::exp(alpha_ * std::log(x) - x) : 0.0);
    return sum * env / n_ris_;
}

double EigenvalueDensity::operator()(double g_val) const {
    if (g_val < 0.0) throw std::domain_error("eigen_density: g < 0");
    return unnormalized(g_val) / norm_;
}

double eigen_density(double g_val, const SystemConfig& cfg) {
    thread_local int ct = -1, cr = -1, cn = -1;
    thread_local EigenvalueDensity* cache = nullptr;
    if (!cache || ct != cfg.t || cr != cfg.r || cn != cfg.n_ris) {
        delete cache;
        cache = new EigenvalueDensity(cfg);
        ct = cfg.t;
        cr = cfg.r;
        cn = cfg.n_ris;
    }
    return (*cache)(g_val);
}

Eigen::VectorXcd apply_channel(const ChannelRealization& real,
                               const Eigen::VectorXcd& x, Rng& rng,
                               double noise_scale) {
    if (x.size() != real.h.cols())
        throw std::invalid_argument("apply_channel: input dimension mismatch");
    Eigen::VectorXcd y = real.h * x;
    for (Eigen::Index i = 0; i < y.size(); ++i)
        y(i) += noise_scale * rng.cgaussian();
    return y;
}

}  // namespace fblris
