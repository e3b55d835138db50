// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fblris {

enum class Scheme { bpsk, qpsk };

// How the r x t channel matrix is drawn:
//   exact    - cascaded product H2 diag(theta) H1 with CN(0,1) segments and
//              uniform RIS phases
//   rayleigh - entries i.i.d. real Rayleigh magnitudes, E[h^2] = N_ris
//              (the large-N_ris factorized approximation)
//   gaussian - entries i.i.d. CN(0, N_ris) (the law behind the Laguerre
//              eigenvalue density and the Gaussian-input capacity)
enum class ChannelModel { exact, rayleigh, gaussian };

struct SystemConfig {
    int t = 2;
    int r = 1;
    int n_ris = 4;
    double snr_db = -5.0;
    double epsilon = 1e-3;
    Scheme scheme = Scheme::bpsk;
    ChannelModel model = ChannelModel::rayleigh;

    int m() const { return std::min(t, r); }
    double power() const { return std::pow(10.0, snr_db / 10.0); }

    void validate() const {
        if (t < 1 || r < 1 || n_ris < 1)
            throw std::invalid_argument("SystemConfig: t, r, n_ris must be >= 1");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("SystemConfig: epsilon must be in (0,1)");
    }
};

inline Scheme parse_scheme(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (s == "bpsk") return Scheme::bpsk;
    if (s == "qpsk") return Scheme::qpsk;
    throw std::invalid_argument("unknown modulation scheme: " + s);
}

inline const char* scheme_name(Scheme s) {
    return s == Scheme::bpsk ? "bpsk" : "qpsk";
}

inline ChannelModel parse_channel_model(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (s == "exact") return ChannelModel::exact;
    if (s == "rayleigh") return ChannelModel::rayleigh;
    if (s == "gaussian") return ChannelModel::gaussian;
    throw std::invalid_argument("unknown channel model: " + s);
}

inline const char* channel_model_name(ChannelModel m) {
    switch (m) {
        case ChannelModel::exact: return "exact";
        case ChannelModel::rayleigh: return "rayleigh";
        default: return "gaussian";
    }
}

}  // namespace fblris
