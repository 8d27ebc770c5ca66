// Copyright 2026 The fpgas Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file util.hpp
/// Deterministic RNG, thread-pool-free parallel loops, numeric formatting.
#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fpgas {

/// Seeded pseudo-random source. All randomness in the library flows through
/// this wrapper. Doubles and bounded integers are derived manually from the
/// mt19937_64 stream so that results are identical across standard library
/// implementations (std::uniform_real_distribution is not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) by rejection (unbiased, deterministic).
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("Rng::next_below: bound must be > 0");
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = gen_();
        while (v >= limit) {
            v = gen_();
        }
        return v % bound;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    std::mt19937_64 gen_;
};

/// Worker cap for parallel loops: FPGAS_THREADS if set, else hardware
/// concurrency, at least 1.
inline std::size_t max_threads() {
    if (const char *env = std::getenv("FPGAS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) {
            return static_cast<std::size_t>(v);
        }
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

/// Runs fn(i) for i in [0, total) over contiguous per-thread chunks. The
/// caller guarantees iterations write to disjoint state, so the result is
/// deterministic regardless of the worker count.
inline void parallel_for(std::size_t total,
                         const std::function<void(std::size_t)> &fn) {
    const std::size_t workers =
        std::min<std::size_t>(max_threads(), total == 0 ? 1 : total);
    if (workers <= 1 || total < 2048) {
        for (std::size_t i = 0; i < total; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

/// Runs fn(lo, hi) over contiguous disjoint ranges covering [0, total).
/// Tighter inner loops than parallel_for for hot kernels. The caller
/// guarantees ranges write to disjoint state.
inline void
parallel_for_chunks(std::size_t total,
                    const std::function<void(std::size_t, std::size_t)> &fn) {
    const std::size_t workers =
        std::min<std::size_t>(max_threads(), total == 0 ? 1 : total);
    if (workers <= 1 || total < 2048) {
        if (total > 0) {
            fn(0, total);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
    for (auto &t : pool) {
        t.join();
    }
}

/// Deterministic parallel reduction: sums fn(lo, hi) over a fixed grid of
/// chunks (independent of the worker count), combining partials in ascending
/// chunk order so the floating-point result never depends on FPGAS_THREADS.
inline double
parallel_sum(std::size_t total,
             const std::function<double(std::size_t, std::size_t)> &fn) {
    if (total == 0) {
        return 0.0;
    }
    if (total < 2048 || max_threads() <= 1) {
        return fn(0, total);
    }
    constexpr std::size_t kChunks = 256;
    const std::size_t chunk = (total + kChunks - 1) / kChunks;
    std::vector<double> partial(kChunks, 0.0);
    parallel_for(kChunks, [&](std::size_t c) {
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo < hi) {
            partial[c] = fn(lo, hi);
        }
    });
    double sum = 0.0;
    for (double p : partial) {
        sum += p;
    }
    return sum;
}

/// Formats a double with 12 significant digits (the library's output
/// precision; stable enough for golden files, short enough to stay portable).
inline std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace fpgas
