// SPDX-License-Identifier: Apache-2.0
// Compares the serial reference Monte Carlo paths against the OpenMP kernels.
#include <chrono>
#include <cstdio>

#include "fblris/bounds.hpp"
#include "fblris/info_metrics.hpp"
#include "fblris/parallel.hpp"

using namespace fblris;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t samples = 1'000'000;
    if (argc > 1) samples = static_cast<std::size_t>(std::atoll(argv[1]));

    SystemConfig cfg;
    cfg.t = 2;
    cfg.r = 2;
    cfg.n_ris = 16;
    cfg.snr_db = -5.0;
    cfg.scheme = Scheme::qpsk;
    const Constellation c = make_constellation(cfg.scheme, cfg);

    std::printf("samples: %zu, workers: %d\n", samples, worker_cap());

    auto t0 = clock_type::now();
    const InfoStats serial = estimate_moments(cfg, c, samples, 1234, /*serial=*/true);
    const double t_serial = seconds_since(t0);

    t0 = clock_type::now();
    const InfoStats parallel = estimate_moments(cfg, c, samples, 1234);
    const double t_parallel = seconds_since(t0);

    std::printf("moments   serial: %7.3fs   parallel: %7.3fs   speedup: %5.2fx\n",
                t_serial, t_parallel, t_serial / t_parallel);
    std::printf("  identical results: %s (I = %.12f)\n",
                serial.i_bits == parallel.i_bits && serial.u_bits2 == parallel.u_bits2
                    ? "yes"
                    : "NO",
                parallel.i_bits);

    t0 = clock_type::now();
    const double cap_serial = capacity_mc(cfg, ChannelModel::gaussian, samples, 99,
                                          /*serial=*/true);
    const double tc_serial = seconds_since(t0);

    t0 = clock_type::now();
    const double cap_parallel = capacity_mc(cfg, ChannelModel::gaussian, samples, 99);
    const double tc_parallel = seconds_since(t0);

    std::printf("capacity  serial: %7.3fs   parallel: %7.3fs   speedup: %5.2fx\n",
                tc_serial, tc_parallel, tc_serial / tc_parallel);
    std::printf("  identical results: %s (C = %.12f)\n",
                cap_serial == cap_parallel ? "yes" : "NO", cap_parallel);
    return 0;
}
