// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fblris {

inline constexpr std::size_t kMcChunkSize = 8192;

// Worker cap: FBLRIS_THREADS if set, otherwise the OpenMP default.
inline int worker_cap() {
    if (const char* env = std::getenv("FBLRIS_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs body(chunk_index) for chunk_index in [0, n_chunks). Each chunk derives
// its own RNG substream from (seed, chunk_index), so the result of any
// index-addressed output is identical for every worker count, including the
// serial reference path.
template <class Body>
void for_each_chunk(std::size_t n_chunks, const Body& body, bool serial = false) {
    if (serial) {
        for (std::size_t c = 0; c < n_chunks; ++c) body(c);
        return;
    }
#ifdef _OPENMP
    const int workers = worker_cap();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long long c = 0; c < static_cast<long long>(n_chunks); ++c)
        body(static_cast<std::size_t>(c));
#else
    for (std::size_t c = 0; c < n_chunks; ++c) body(c);
#endif
}

}  // namespace fblris
