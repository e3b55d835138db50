// SPDX-License-Identifier: Apache-2.0
#include "fblris/modulation.hpp"

#include <cmath>
#include <stdexcept>

namespace fblris {

Constellation make_constellation(Scheme scheme, const SystemConfig& cfg) {
    cfg.validate();
    Constellation c;
    c.per_antenna_power = cfg.power() / cfg.t;
    const double amp = std::sqrt(c.per_antenna_power);
    switch (scheme) {
        case Scheme::bpsk:
            c.symbols = {{amp, 0.0}, {-amp, 0.0}};
            break;
        case Scheme::qpsk: {
            const double q = amp * M_SQRT1_2;
            c.symbols = {{q, q}, {q, -q}, {-q, q}, {-q, -q}};
            break;
        }
        default:
            throw std::invalid_argument("make_constellation: unsupported scheme");
    }
    c.probs.assign(c.symbols.size(), 1.0 / static_cast<double>(c.symbols.size()));
    return c;
}

InputSet enumerate_inputs(const Constellation& c, int t) {
    if (t < 1) throw std::invalid_argument("enumerate_inputs: t must be >= 1");
    const std::size_t a = c.symbols.size();
    std::size_t count = 1;
    for (int i = 0; i < t; ++i) {
        if (count > kInputEnumerationCap / a)
            throw std::length_error("enumerate_inputs: |A|^t exceeds enumeration cap");
        count *= a;
    }
    InputSet set;
    set.count = count;
    set.dim = t;
    set.prob = 1.0 / static_cast<double>(count);
    set.points.resize(count * static_cast<std::size_t>(t));
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t idx = k;
        for (int j = t - 1; j >= 0; --j) {
            set.points[k * t + j] = c.symbols[idx % a];
            idx /= a;
        }
    }
    return set;
}

}  // namespace fblris
