// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "fblris/config.hpp"

namespace fblris {

// Equiprobable constellation, normalized so sum_k p_k |s_k|^2 equals the
// per-antenna power P/t.
struct Constellation {
    std::vector<std::complex<double>> symbols;
    std::vector<double> probs;
    double per_antenna_power = 0.0;
};

Constellation make_constellation(Scheme scheme, const SystemConfig& cfg);

// All |A|^t input vectors, flattened row-major (vector k occupies
// [k*t, (k+1)*t)), each with probability |A|^{-t}.
struct InputSet {
    std::vector<std::complex<double>> points;
    std::size_t count = 0;
    int dim = 0;
    double prob = 0.0;

    const std::complex<double>* vec(std::size_t k) const {
        return points.data() + k * static_cast<std::size_t>(dim);
    }
};

inline constexpr std::size_t kInputEnumerationCap = 1u << 20;

InputSet enumerate_inputs(const Constellation& c, int t);

}  // namespace fblris
