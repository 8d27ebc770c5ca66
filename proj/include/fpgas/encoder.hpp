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

/// @file encoder.hpp
/// Projective quantum dictionary encoder for QUBO objectives, plus the
/// marker oracle and diffuser used by fixed-point search.
///
/// The encoder maps |x>|y>_d (x |0> ancillas) to
///     e^{i a(x)} |x>|y + f(x) mod 2^d>_d (x |0> ancillas),
/// with garbage phase a(x) = pi (1 - 2^d) / 2^d * (f(x) - f(0)), or a == 0
/// when corrective phase gates are enabled. It works by conjugating a
/// diagonal phase stage with QFTs on the value register: inside the Fourier
/// frame, adding k to the value costs only the d parallel rotations of
/// phase_gadget(k). The objective is decomposed into m terms (constant,
/// linear, parity pairs); a term's rotations act on the value register
/// bitwise-flipped by the relevant input parity, realized either in place
/// (fanout conjugation on the value register) or on an ancilla group
/// holding y_a xor x_j (xor x_k). The parallelism parameter Lambda in
/// [1, m] sets how many terms phase at once: 1 is the ancilla-free serial
/// form, m phases every term in a single rotation layer between one
/// compute/uncompute pair (three parallel fanout stages each way).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpgas/circuit.hpp"
#include "fpgas/qubo.hpp"

namespace fpgas {

struct EncoderConfig {
    /// Lambda in [1, m]: number of terms phased in parallel per batch.
    int lambdaAncilla = 1;
    /// Append phase gates on the input register canceling a(x) exactly.
    bool eliminateGarbagePhases = false;
    /// Replace the leading QFT by parallel Hadamards (valid only when the
    /// value register enters at |0>; markers enable this by default).
    bool hadamardShortcut = false;
};

inline EncoderConfig marker_default_config() {
    return EncoderConfig{1, false, true};
}

namespace detail {

/// Rotation layer implementing |y>_d -> e^{2 pi i k y / 2^d} |y>_d on the
/// given value qubits (MSB first): angle pi k / 2^j on bit j.
inline void emit_phase_gadget(Circuit &c, const std::vector<int> &ys,
                              double k) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
        c.rz_phase(M_PI * k / static_cast<double>(std::uint64_t{1} << j),
                   ys[j]);
    }
}

/// One rewrite term of the objective. kind 0: the constant q_empty;
/// kind 1: linear term on variable j with rotation coefficient -q_j / 2;
/// kind 2: parity term on (j, k) with rotation coefficient +Q_jk / 2.
struct EncoderTerm {
    int kind = 0;
    int j = -1;
    int k = -1;
    double gadget = 0.0;
};

inline std::vector<EncoderTerm> encoder_terms(const RewriteCoefficients &rc) {
    std::vector<EncoderTerm> ts;
    ts.push_back({0, -1, -1, rc.q_empty});
    for (std::size_t j = 0; j < rc.qj.size(); ++j) {
        if (rc.qj[j] != 0.0) {
            ts.push_back({1, static_cast<int>(j), -1, -rc.qj[j] / 2.0});
        }
    }
    for (const auto &[jk, coef] : rc.pair_coeffs) {
        ts.push_back({2, jk.first, jk.second, coef / 2.0});
    }
    return ts;
}

/// Ancilla layout of one batch's group terms, following the tensor-product
/// ordering of the parallel form: terms cluster by their first variable j;
/// inside a j-cluster the d copies interleave bit-major (bit a of every
/// cluster term, then bit a+1, ...), so a stage-2 fanout of x_j covers one
/// contiguous block. Returns, per group term, its d qubit indices MSB
/// first.
inline std::vector<std::vector<int>>
group_layout(const std::vector<EncoderTerm> &groups, int d, int ancStart) {
    std::vector<std::vector<int>> qubits(groups.size());
    std::size_t g = 0;
    int base = ancStart;
    while (g < groups.size()) {
        std::size_t end = g + 1;
        while (end < groups.size() && groups[end].j == groups[g].j) {
            ++end;
        }
        const int cluster = static_cast<int>(end - g);
        for (std::size_t t = g; t < end; ++t) {
            qubits[t].resize(static_cast<std::size_t>(d));
            for (int a = 0; a < d; ++a) {
                qubits[t][static_cast<std::size_t>(a)] =
                    base + a * cluster + static_cast<int>(t - g);
            }
        }
        base += d * cluster;
        g = end;
    }
    return qubits;
}

/// Emits one batch: compute stage (value copies + input parities), the
/// parallel rotation layer, and the uncompute stage. The first term of the
/// batch phases the value register in place (fanout conjugation); the rest
/// phase ancilla groups. With phasesOnly, only the rotation layer is
/// emitted (for inspecting the non-Clifford layer on its own).
inline void emit_batch(Circuit &c, const std::vector<EncoderTerm> &batch,
                       int d, int ancStart, bool phasesOnly) {
    const std::vector<int> ys = c.reg_qubits("y");
    const EncoderTerm &host = batch.front();
    const std::vector<EncoderTerm> groups(batch.begin() + 1, batch.end());
    const auto layout = group_layout(groups, d, ancStart);

    std::vector<Gate> compute;
    if (!groups.empty()) {
        // Stage 1: copy value bits into every group.
        for (int a = 0; a < d; ++a) {
            std::vector<int> qs{ys[static_cast<std::size_t>(a)]};
            for (const auto &lq : layout) {
                qs.push_back(lq[static_cast<std::size_t>(a)]);
            }
            compute.push_back({GateKind::FANOUT, std::move(qs)});
        }
        // Stage 2: xor each first variable into its cluster block.
        std::map<int, std::vector<int>> byFirst;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            auto &qs = byFirst[groups[g].j];
            qs.insert(qs.end(), layout[g].begin(), layout[g].end());
        }
        for (auto &[j, qs] : byFirst) {
            std::vector<int> fan{c.qubit("x", j)};
            std::sort(qs.begin(), qs.end());
            fan.insert(fan.end(), qs.begin(), qs.end());
            compute.push_back({GateKind::FANOUT, std::move(fan)});
        }
        // Stage 3: xor each second variable into its pair groups.
        std::map<int, std::vector<int>> bySecond;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (groups[g].kind == 2) {
                auto &qs = bySecond[groups[g].k];
                qs.insert(qs.end(), layout[g].begin(), layout[g].end());
            }
        }
        for (auto &[k, qs] : bySecond) {
            std::vector<int> fan{c.qubit("x", k)};
            std::sort(qs.begin(), qs.end());
            fan.insert(fan.end(), qs.begin(), qs.end());
            compute.push_back({GateKind::FANOUT, std::move(fan)});
        }
    }
    // Host-term conjugation: flip the value register by the term's parity.
    std::vector<Gate> hostPre;
    if (host.kind == 2) {
        hostPre.push_back(
            {GateKind::CNOT, {c.qubit("x", host.j), c.qubit("x", host.k)}});
    }
    if (host.kind != 0) {
        const int src = c.qubit("x", host.kind == 1 ? host.j : host.k);
        std::vector<int> fan{src};
        fan.insert(fan.end(), ys.begin(), ys.end());
        hostPre.push_back({GateKind::FANOUT, std::move(fan)});
    }

    if (!phasesOnly) {
        for (const Gate &g : compute) {
            c.add(g);
        }
        for (const Gate &g : hostPre) {
            c.add(g);
        }
    }
    emit_phase_gadget(c, ys, host.gadget);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        emit_phase_gadget(c, layout[g], groups[g].gadget);
    }
    if (!phasesOnly) {
        for (auto it = hostPre.rbegin(); it != hostPre.rend(); ++it) {
            c.add(*it);
        }
        for (auto it = compute.rbegin(); it != compute.rend(); ++it) {
            c.add(*it);
        }
    }
}

/// Values are storable in d bits either as unsigned [0, 2^d) or as two's
/// complement [-2^{d-1}, 2^{d-1}); mixed-sign ranges require the latter.
/// The encoder itself never needs this (its arithmetic wraps mod 2^d
/// exactly); it matters to callers who read the register back as a signed
/// integer, e.g. threshold markers.
inline bool values_representable(const QuboProblem &p,
                                 int enumeration_cap = 24) {
    const auto [mn, mx] = p.n() <= enumeration_cap ? p.exact_value_range()
                                                   : p.value_interval();
    const double full = std::ldexp(1.0, p.d());
    return (mn >= 0.0 && mx < full) || (mn >= -full / 2.0 && mx < full / 2.0);
}

inline void check_encoder_preconditions(const QuboProblem &p,
                                        const EncoderConfig &cfg, int m) {
    if (p.mode() != ValueMode::integer_values) {
        throw std::invalid_argument(
            "build_encoder: integer value mode required");
    }
    if (cfg.lambdaAncilla < 1 || cfg.lambdaAncilla > m) {
        throw std::invalid_argument(
            "build_encoder: lambdaAncilla must be in [1, m]");
    }
}

inline Circuit encoder_skeleton(const QuboProblem &p,
                                const EncoderConfig &cfg) {
    std::vector<Register> regs{{"x", 0, p.n()}, {"y", 0, p.d()}};
    const int ancQubits = (cfg.lambdaAncilla - 1) * p.d();
    if (ancQubits > 0) {
        regs.push_back({"anc", 0, ancQubits});
    }
    Circuit c(std::move(regs));
    c.metadata()["n"] = std::to_string(p.n());
    c.metadata()["d"] = std::to_string(p.d());
    c.metadata()["lambda"] = std::to_string(cfg.lambdaAncilla);
    return c;
}

/// Appends phase gates on the input register multiplying each |x> by
/// e^{-i a(x)}; a(x) is linear over the term parities, so single-qubit
/// phases plus CNOT-conjugated phases cancel it exactly.
inline void emit_garbage_correction(Circuit &c, const QuboProblem &p,
                                    const RewriteCoefficients &rc) {
    const double unit =
        M_PI * (1.0 - static_cast<double>(std::uint64_t{1} << p.d())) /
        static_cast<double>(std::uint64_t{1} << p.d());
    for (std::size_t j = 0; j < rc.qj.size(); ++j) {
        if (rc.qj[j] != 0.0) {
            c.rz_phase(-unit * rc.qj[j], c.qubit("x", static_cast<int>(j)));
        }
    }
    for (const auto &[jk, coef] : rc.pair_coeffs) {
        const int a = c.qubit("x", jk.first);
        const int b = c.qubit("x", jk.second);
        c.cnot(a, b);
        c.rz_phase(unit * coef, b);
        c.cnot(a, b);
    }
}

inline Circuit build_encoder_impl(const QuboProblem &p,
                                  const EncoderConfig &cfg, bool phasesOnly) {
    const RewriteCoefficients rc = rewrite(p);
    check_encoder_preconditions(p, cfg, rc.m);
    Circuit c = encoder_skeleton(p, cfg);
    c.metadata()["builder"] = phasesOnly ? "phase_block" : "encoder";
    const std::vector<int> ys = c.reg_qubits("y");
    const int ancStart =
        cfg.lambdaAncilla > 1 ? c.reg("anc").start : c.num_qubits();

    if (!phasesOnly) {
        if (cfg.hadamardShortcut) {
            for (int q : ys) {
                c.h(q);
            }
        } else {
            c.qft(ys);
        }
    }
    const auto terms = encoder_terms(rc);
    const auto lambda = static_cast<std::size_t>(cfg.lambdaAncilla);
    for (std::size_t at = 0; at < terms.size(); at += lambda) {
        const std::vector<EncoderTerm> batch(
            terms.begin() + static_cast<std::ptrdiff_t>(at),
            terms.begin() + static_cast<std::ptrdiff_t>(
                                std::min(at + lambda, terms.size())));
        emit_batch(c, batch, p.d(), ancStart, phasesOnly);
    }
    if (!phasesOnly) {
        c.iqft(ys);
        if (cfg.eliminateGarbagePhases) {
            emit_garbage_correction(c, p, rc);
        }
    }
    return c;
}

} // namespace detail

/// Standalone rotation layer |y>_d -> e^{2 pi i k y / 2^d} |y>_d on a fresh
/// d-qubit "y" register: d parallel phases pi k / 2^j, MSB first.
inline Circuit phase_gadget(double k, int d) {
    if (d < 1) {
        throw std::invalid_argument("phase_gadget: d must be >= 1");
    }
    Circuit c({{"y", 0, d}});
    detail::emit_phase_gadget(c, c.reg_qubits("y"), k);
    return c;
}

/// Builds the dictionary encoder for the problem's objective. Registers:
/// "x" (n input qubits), "y" (d value qubits), and "anc"
/// ((Lambda - 1) * d ancillas) when Lambda > 1. The value register is
/// updated mod 2^d, so objectives whose range exceeds the d-bit window
/// simply wrap; see values_representable() for callers that need the
/// register to read back as a signed integer.
inline Circuit build_encoder(const QuboProblem &p,
                             const EncoderConfig &cfg = EncoderConfig{}) {
    return detail::build_encoder_impl(p, cfg, false);
}

/// Just the rotation layers of the encoder (no motion of data): at
/// Lambda = m this is the single parallel non-Clifford layer between the
/// compute and uncompute stages.
inline Circuit build_phase_block(const QuboProblem &p,
                                 const EncoderConfig &cfg = EncoderConfig{}) {
    return detail::build_encoder_impl(p, cfg, true);
}

/// Marker oracle: multiplies |x> by e^{i beta} exactly when
/// f(x) > threshold, leaving value and ancilla registers unchanged. Built
/// as U dagger . P . U with U the encoder of the shifted objective
/// g(x) = threshold - f(x) (negative exactly on marked states, so the
/// value register's sign bit drives a single phase gate) — every garbage
/// phase cancels in the sandwich.
inline Circuit build_marker(const QuboProblem &p, std::int64_t threshold,
                            double beta,
                            EncoderConfig cfg = marker_default_config()) {
    QuboProblem shifted = p.negated_shifted(static_cast<double>(threshold));
    if (!shifted.values_fit()) {
        throw std::invalid_argument(
            "build_marker: threshold - f(x) must fit the two's-complement "
            "range of the value register for every x");
    }
    Circuit enc = detail::build_encoder_impl(shifted, cfg, false);
    Circuit c = enc.empty_like();
    c.metadata()["builder"] = "marker";
    c.metadata()["threshold"] = std::to_string(threshold);
    c.append(enc);
    c.rz_phase(beta, c.qubit("y", 0)); // sign bit of threshold - f(x)
    c.append(enc.adjoint());
    return c;
}

/// Appends the diffuser S_s(alpha) over the given qubits: fixes the
/// orthogonal complement of the uniform state |s> and multiplies |s> by
/// e^{i alpha}. Realized as H*n X*n MCP(alpha) X*n H*n.
inline void emit_diffuser(Circuit &c, const std::vector<int> &xs,
                          double alpha) {
    for (int q : xs) {
        c.h(q);
    }
    for (int q : xs) {
        c.x(q);
    }
    c.mcphase(alpha, xs);
    for (int q : xs) {
        c.x(q);
    }
    for (int q : xs) {
        c.h(q);
    }
}

/// Standalone diffuser on a fresh n-qubit "x" register.
inline Circuit build_diffuser(int n, double alpha) {
    if (n < 1) {
        throw std::invalid_argument("build_diffuser: n must be >= 1");
    }
    Circuit c({{"x", 0, n}});
    c.metadata()["builder"] = "diffuser";
    emit_diffuser(c, c.reg_qubits("x"), alpha);
    return c;
}

} // namespace fpgas
