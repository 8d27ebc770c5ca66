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

/// @file statevector.hpp
/// Exact dense statevector simulation.
///
/// Basis ordering is register-major and MSB-first within registers: qubit 0
/// is the most significant bit of the basis index, so qubit g of a q-qubit
/// state sits at bit position q - 1 - g. QFT / IQFT are applied from the
/// definition (a radix-2 transform over the sub-register), not by gate
/// decomposition. Every gate application is followed by an L2-norm check
/// (tolerance 1e-10); drift indicates a library bug and throws.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "fpgas/circuit.hpp"
#include "fpgas/util.hpp"

namespace fpgas {

namespace detail {

/// Unnormalized in-place radix-2 transform of a power-of-two buffer:
/// out[z] = sum_y buf[y] * e^{sign * 2 pi i y z / N}. Twiddles come from a
/// caller-built table w[j] = e^{sign * 2 pi i j / N}, j < N/2.
inline void fft_radix2(std::complex<double> *buf, std::size_t n,
                       const std::complex<double> *twiddle) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(buf[i], buf[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> w = twiddle[j * stride];
                const std::complex<double> u = buf[i + j];
                const std::complex<double> v = buf[i + j + len / 2] * w;
                buf[i + j] = u + v;
                buf[i + j + len / 2] = u - v;
            }
        }
    }
}

} // namespace detail

class Statevector {
  public:
    /// 1 GiB of amplitudes; a clear error beyond, rather than an OOM kill.
    static constexpr int kMaxQubits = 26;

    explicit Statevector(int q) : q_(q) {
        if (q < 1 || q > kMaxQubits) {
            throw std::invalid_argument(
                "Statevector: qubit count must be in [1, 26]");
        }
        amps_.assign(std::size_t{1} << q, {0.0, 0.0});
        amps_[0] = {1.0, 0.0};
    }

    int num_qubits() const { return q_; }
    std::size_t size() const { return amps_.size(); }
    const std::vector<std::complex<double>> &amplitudes() const {
        return amps_;
    }
    /// Direct amplitude access for preparing custom initial states. The
    /// caller is responsible for leaving the state normalized.
    std::vector<std::complex<double>> &mutable_amplitudes() { return amps_; }

    /// Bit position of qubit g inside a basis index.
    int bit_position(int g) const { return q_ - 1 - g; }
    std::uint64_t qubit_mask(int g) const {
        return std::uint64_t{1} << bit_position(g);
    }

    double norm() const {
        const std::complex<double> *a = amps_.data();
        return std::sqrt(parallel_sum(
            amps_.size(), [a](std::size_t lo, std::size_t hi) {
                double s = 0.0;
                for (std::size_t i = lo; i < hi; ++i) {
                    s += std::norm(a[i]);
                }
                return s;
            }));
    }

    void apply(const Gate &g) {
        for (int q : g.qubits) {
            if (q < 0 || q >= q_) {
                throw std::invalid_argument(
                    "Statevector: gate qubit out of range");
            }
        }
        apply_unchecked(g);
        const double nrm = norm();
        if (std::abs(nrm - 1.0) > 1e-10) {
            throw std::logic_error("Statevector: norm drifted to " +
                                   format_sig(nrm));
        }
    }

    void apply(const Circuit &c) {
        if (c.num_qubits() != q_) {
            throw std::invalid_argument(
                "Statevector: circuit qubit count mismatch");
        }
        for (const Gate &g : c.gates()) {
            apply(g);
        }
    }

  private:
    void apply_unchecked(const Gate &g) {
        std::complex<double> *a = amps_.data();
        const std::size_t n = amps_.size();
        switch (g.kind) {
        case GateKind::H: {
            const std::uint64_t m = qubit_mask(g.qubits[0]);
            const double inv = 1.0 / std::sqrt(2.0);
            pair_loop(m, [a, m, inv](std::size_t i0) {
                const std::complex<double> a0 = a[i0];
                const std::complex<double> a1 = a[i0 | m];
                a[i0] = (a0 + a1) * inv;
                a[i0 | m] = (a0 - a1) * inv;
            });
            break;
        }
        case GateKind::X: {
            const std::uint64_t m = qubit_mask(g.qubits[0]);
            pair_loop(m, [a, m](std::size_t i0) {
                std::swap(a[i0], a[i0 | m]);
            });
            break;
        }
        case GateKind::CNOT:
        case GateKind::MCX: {
            std::uint64_t cmask = 0;
            for (std::size_t i = 0; i + 1 < g.qubits.size(); ++i) {
                cmask |= qubit_mask(g.qubits[i]);
            }
            const std::uint64_t tm = qubit_mask(g.qubits.back());
            pair_loop(tm, [a, cmask, tm](std::size_t i0) {
                if ((i0 & cmask) == cmask) {
                    std::swap(a[i0], a[i0 | tm]);
                }
            });
            break;
        }
        case GateKind::FANOUT: {
            const std::uint64_t cm = qubit_mask(g.qubits[0]);
            std::uint64_t tmask = 0;
            for (std::size_t i = 1; i < g.qubits.size(); ++i) {
                tmask |= qubit_mask(g.qubits[i]);
            }
            // XOR-by-tmask is an involution; act once per orbit, picking
            // the representative with the top target bit clear.
            const std::uint64_t rep =
                std::uint64_t{1} << (63 - std::countl_zero(tmask));
            parallel_for_chunks(n, [a, cm, tmask, rep](std::size_t lo,
                                                       std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) {
                    if ((i & cm) != 0 && (i & rep) == 0) {
                        std::swap(a[i], a[i ^ tmask]);
                    }
                }
            });
            break;
        }
        case GateKind::RZ_PHASE: {
            const std::uint64_t m = qubit_mask(g.qubits[0]);
            const std::complex<double> ph = std::polar(1.0, g.angle);
            pair_loop(m, [a, m, ph](std::size_t i0) { a[i0 | m] *= ph; });
            break;
        }
        case GateKind::CPHASE:
        case GateKind::MCPHASE: {
            std::uint64_t mask = 0;
            for (int q : g.qubits) {
                mask |= qubit_mask(q);
            }
            const std::complex<double> ph = std::polar(1.0, g.angle);
            parallel_for_chunks(
                n, [a, mask, ph](std::size_t lo, std::size_t hi) {
                    for (std::size_t i = lo; i < hi; ++i) {
                        if ((i & mask) == mask) {
                            a[i] *= ph;
                        }
                    }
                });
            break;
        }
        case GateKind::QFT:
            apply_qft(g.qubits, +1.0);
            break;
        case GateKind::IQFT:
            apply_qft(g.qubits, -1.0);
            break;
        case GateKind::GLOBAL_PHASE: {
            const std::complex<double> ph = std::polar(1.0, g.angle);
            parallel_for_chunks(n,
                                [a, ph](std::size_t lo, std::size_t hi) {
                                    for (std::size_t i = lo; i < hi; ++i) {
                                        a[i] *= ph;
                                    }
                                });
            break;
        }
        }
    }

    /// Iterates the 2^{q-1} basis indices with the given mask bit clear.
    template <typename Fn> void pair_loop(std::uint64_t mask, Fn fn) {
        const std::size_t half = amps_.size() >> 1;
        const std::uint64_t low = mask - 1;
        parallel_for_chunks(half,
                            [fn, mask, low](std::size_t lo, std::size_t hi) {
                                for (std::size_t p = lo; p < hi; ++p) {
                                    const std::size_t i0 =
                                        ((p & ~low) << 1) | (p & low);
                                    fn(i0);
                                }
                            });
    }

    /// sum_y e^{sign 2 pi i y z / 2^w} / sqrt(2^w) on the ordered
    /// sub-register (MSB first), for every setting of the other qubits.
    void apply_qft(const std::vector<int> &qs, double sign) {
        const int w = static_cast<int>(qs.size());
        const std::size_t sub = std::size_t{1} << w;
        const double scale = 1.0 / std::sqrt(static_cast<double>(sub));

        // scatter[y]: bits of y placed at the sub-register's positions.
        std::vector<std::uint64_t> scatter(sub, 0);
        for (std::size_t y = 0; y < sub; ++y) {
            std::uint64_t m = 0;
            for (int t = 0; t < w; ++t) {
                if ((y >> (w - 1 - t)) & 1U) {
                    m |= qubit_mask(qs[static_cast<std::size_t>(t)]);
                }
            }
            scatter[y] = m;
        }
        std::uint64_t submask = 0;
        for (int q : qs) {
            submask |= qubit_mask(q);
        }

        std::vector<std::complex<double>> twiddle(sub / 2);
        for (std::size_t j = 0; j < sub / 2; ++j) {
            twiddle[j] = std::polar(
                1.0, sign * 2.0 * M_PI * static_cast<double>(j) /
                         static_cast<double>(sub));
        }

        // Enumerate the 2^{q-w} settings of the remaining qubits by
        // spreading a counter over the complement bit positions.
        std::vector<int> restBits;
        for (int b = 0; b < q_; ++b) {
            if (((submask >> b) & 1U) == 0) {
                restBits.push_back(b);
            }
        }
        const std::size_t rests = std::size_t{1} << restBits.size();
        std::complex<double> *a = amps_.data();
        const std::uint64_t *sc = scatter.data();
        const std::complex<double> *tw = twiddle.data();
        parallel_for_chunks(rests, [&](std::size_t lo, std::size_t hi) {
            std::vector<std::complex<double>> buf(sub);
            for (std::size_t r = lo; r < hi; ++r) {
                std::uint64_t base = 0;
                for (std::size_t t = 0; t < restBits.size(); ++t) {
                    if ((r >> t) & 1U) {
                        base |= std::uint64_t{1} << restBits[t];
                    }
                }
                for (std::size_t y = 0; y < sub; ++y) {
                    buf[y] = a[base | sc[y]];
                }
                detail::fft_radix2(buf.data(), sub, tw);
                for (std::size_t y = 0; y < sub; ++y) {
                    a[base | sc[y]] = buf[y] * scale;
                }
            }
        });
    }

    int q_;
    std::vector<std::complex<double>> amps_;
};

/// Runs a circuit from |0...0>.
inline Statevector run(const Circuit &c) {
    Statevector sv(c.num_qubits());
    sv.apply(c);
    return sv;
}

/// Runs the circuit on |0...0> and returns the measurement distribution of
/// one named register: entry v is the total probability of reading v there,
/// summed over all other qubits.
inline std::vector<double> register_marginal(const Circuit &c,
                                             const std::string &name) {
    const Register &r = c.reg(name);
    const Statevector sv = run(c);
    const int shift = sv.num_qubits() - r.start - r.size;
    const std::uint64_t mask = (std::uint64_t{1} << r.size) - 1;
    std::vector<double> marginal(std::size_t{1} << r.size, 0.0);
    const std::complex<double> *a = sv.amplitudes().data();
    for (std::size_t i = 0; i < sv.size(); ++i) {
        marginal[(i >> shift) & mask] += std::norm(a[i]);
    }
    return marginal;
}

struct SuccessProbability {
    double probability = 0.0; ///< mass on marked x with all other qubits |0>
    double leakage = 0.0;     ///< mass with any non-x qubit nonzero
};

/// Runs the circuit on |0...0> and sums probability over basis states whose
/// "x" register holds a marked value while every other qubit reads 0.
/// Leakage (mass escaping into value/ancilla registers) should be < 1e-9
/// for a well-formed search circuit.
inline SuccessProbability
success_probability(const Circuit &c,
                    const std::unordered_set<std::uint64_t> &marked) {
    const Register &xr = c.reg("x");
    Statevector sv = run(c);
    const int q = sv.num_qubits();
    const int shift = q - xr.start - xr.size;
    const std::uint64_t xmask = ((std::uint64_t{1} << xr.size) - 1)
                                << shift;

    SuccessProbability out;
    for (std::uint64_t x : marked) {
        if (x >> xr.size) {
            throw std::invalid_argument(
                "success_probability: marked value exceeds register width");
        }
        out.probability += std::norm(sv.amplitudes()[x << shift]);
    }
    const std::complex<double> *a = sv.amplitudes().data();
    out.leakage = parallel_sum(
        sv.size(), [a, xmask](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                if ((i & ~xmask) != 0) {
                    s += std::norm(a[i]);
                }
            }
            return s;
        });
    return out;
}

} // namespace fpgas
