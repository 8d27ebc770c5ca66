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

/// @file lowering.hpp
/// Rewrite passes that expand composite gates into elementary ones:
///   lower_fanout   FANOUT -> balanced CNOT doubling tree
///   lower_qft      QFT/IQFT -> H + CPHASE + SWAP (SWAP as 3 CNOTs)
///   lower_mcphase  MCPHASE -> RZ_PHASE / CPHASE / ancilla + two MCX + RZ
/// lowered_for_export() chains all three.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fpgas/circuit.hpp"

namespace fpgas {

namespace detail {

/// Emits a SWAP of qubits a and b as three CNOTs.
inline void emit_swap(Circuit &out, int a, int b) {
    out.cnot(a, b);
    out.cnot(b, a);
    out.cnot(a, b);
}

/// Emits the textbook QFT on `qs` (MSB first) matching the primitive QFT
/// convention |y> -> sum_z e^{+2 pi i z y / 2^w} |z> / sqrt(2^w):
/// per qubit an H followed by controlled phases from all lower-significance
/// qubits, then a bit-reversal swap network.
inline void emit_qft(Circuit &out, const std::vector<int> &qs) {
    const int w = static_cast<int>(qs.size());
    for (int i = 0; i < w; ++i) {
        out.h(qs[static_cast<std::size_t>(i)]);
        for (int k = i + 1; k < w; ++k) {
            const double theta = M_PI / static_cast<double>(1LL << (k - i));
            out.cphase(theta, qs[static_cast<std::size_t>(k)],
                       qs[static_cast<std::size_t>(i)]);
        }
    }
    for (int i = 0; i < w / 2; ++i) {
        emit_swap(out, qs[static_cast<std::size_t>(i)],
                  qs[static_cast<std::size_t>(w - 1 - i)]);
    }
}

/// Emits the inverse of emit_qft (reversed gate order, negated phases).
inline void emit_iqft(Circuit &out, const std::vector<int> &qs) {
    const int w = static_cast<int>(qs.size());
    for (int i = w / 2 - 1; i >= 0; --i) {
        emit_swap(out, qs[static_cast<std::size_t>(i)],
                  qs[static_cast<std::size_t>(w - 1 - i)]);
    }
    for (int i = w - 1; i >= 0; --i) {
        for (int k = w - 1; k > i; --k) {
            const double theta = -M_PI / static_cast<double>(1LL << (k - i));
            out.cphase(theta, qs[static_cast<std::size_t>(k)],
                       qs[static_cast<std::size_t>(i)]);
        }
        out.h(qs[static_cast<std::size_t>(i)]);
    }
}

} // namespace detail

/// Lowering plan for one FANOUT with k targets: copy the control into
/// `helpers` fresh |0> qubits by a clean doubling tree, drive the (dirty)
/// targets from the helpers+control in parallel star rounds, then uncompute
/// the tree. Targets may hold arbitrary states — only the clean helpers ever
/// act as sources of the control's value, so no garbage is injected.
struct FanoutPlan {
    int helpers = 0;
    std::int64_t depth = 0;
    std::int64_t cnots = 0;
};

/// Chooses the helper count minimizing depth, then CNOTs, then helpers.
/// With h helpers: depth = 2 ceil(log2(h+1)) + ceil(k/(h+1)), CNOT count
/// k + 2h. The optimum stays within k..2k CNOTs and depth
/// <= 2 ceil(log2(k+1)) for every k.
inline FanoutPlan plan_fanout(std::int64_t k) {
    FanoutPlan best{0, k, k}; // plain star
    for (std::int64_t h = 1; 2 * h <= k; ++h) {
        std::int64_t treeDepth = 0;
        while ((std::int64_t{1} << treeDepth) < h + 1) {
            ++treeDepth;
        }
        const std::int64_t depth = 2 * treeDepth + (k + h) / (h + 1);
        const std::int64_t cnots = k + 2 * h;
        if (depth < best.depth ||
            (depth == best.depth && cnots < best.cnots)) {
            best = {static_cast<int>(h), depth, cnots};
        }
    }
    return best;
}

/// Expands every FANOUT per its FanoutPlan. A shared helper register
/// "fanout_anc" sized for the largest plan is appended when any plan needs
/// helpers; the helpers return to |0> after each gate, so the register is
/// reused across FANOUTs.
inline Circuit lower_fanout(const Circuit &c) {
    int maxHelpers = 0;
    for (const Gate &g : c.gates()) {
        if (g.kind == GateKind::FANOUT) {
            const auto plan = plan_fanout(
                static_cast<std::int64_t>(g.qubits.size()) - 1);
            maxHelpers = std::max(maxHelpers, plan.helpers);
        }
    }
    Circuit out = c.empty_like();
    out.metadata() = c.metadata();
    int ancStart = -1;
    if (maxHelpers > 0) {
        ancStart = out.add_register("fanout_anc", maxHelpers).start;
    }
    for (const Gate &g : c.gates()) {
        if (g.kind != GateKind::FANOUT) {
            out.add(g);
            continue;
        }
        const int control = g.qubits[0];
        const auto k = static_cast<std::int64_t>(g.qubits.size()) - 1;
        const auto plan = plan_fanout(k);

        // Clean doubling tree: copy the control into the helpers.
        std::vector<int> holders{control};
        std::vector<Gate> tree;
        int filled = 0;
        while (filled < plan.helpers) {
            const std::size_t sources = holders.size();
            for (std::size_t i = 0; i < sources && filled < plan.helpers;
                 ++i, ++filled) {
                const int helper = ancStart + filled;
                tree.push_back({GateKind::CNOT, {holders[i], helper}});
                holders.push_back(helper);
            }
        }
        for (const Gate &t : tree) {
            out.add(t);
        }
        // Parallel star rounds: each x-holder drives one target per round.
        const std::size_t width = holders.size();
        for (std::size_t t = 1; t < g.qubits.size(); ++t) {
            out.cnot(holders[(t - 1) % width], g.qubits[t]);
        }
        // Uncompute the tree.
        for (auto it = tree.rbegin(); it != tree.rend(); ++it) {
            out.add(*it);
        }
    }
    return out;
}

/// Expands every QFT / IQFT into H, CPHASE, and CNOT (via SWAPs).
inline Circuit lower_qft(const Circuit &c) {
    Circuit out = c.empty_like();
    out.metadata() = c.metadata();
    for (const Gate &g : c.gates()) {
        switch (g.kind) {
        case GateKind::QFT:
            detail::emit_qft(out, g.qubits);
            break;
        case GateKind::IQFT:
            detail::emit_iqft(out, g.qubits);
            break;
        default:
            out.add(g);
            break;
        }
    }
    return out;
}

/// Expands every MCPHASE: one qubit -> RZ_PHASE, two -> CPHASE, otherwise
/// an auxiliary qubit collects the AND of the controls via an MCX, a lone
/// RZ_PHASE applies the phase, and a second MCX uncomputes. A single shared
/// auxiliary register "mcp_anc" is appended when needed (it is returned to
/// |0> after each use, so one qubit serves the whole circuit).
inline Circuit lower_mcphase(const Circuit &c) {
    bool needAnc = false;
    for (const Gate &g : c.gates()) {
        if (g.kind == GateKind::MCPHASE && g.qubits.size() >= 3) {
            needAnc = true;
            break;
        }
    }
    Circuit out = c.empty_like();
    out.metadata() = c.metadata();
    int anc = -1;
    if (needAnc) {
        anc = out.add_register("mcp_anc", 1).start;
    }
    for (const Gate &g : c.gates()) {
        if (g.kind != GateKind::MCPHASE) {
            out.add(g);
            continue;
        }
        if (g.qubits.size() == 1) {
            out.rz_phase(g.angle, g.qubits[0]);
        } else if (g.qubits.size() == 2) {
            out.cphase(g.angle, g.qubits[0], g.qubits[1]);
        } else {
            out.mcx(g.qubits, anc);
            out.rz_phase(g.angle, anc);
            out.mcx(g.qubits, anc);
        }
    }
    return out;
}

/// Fully elementary form: no FANOUT, QFT, IQFT, or MCPHASE remain. MCX is
/// kept (exports map it to a controlled X).
inline Circuit lowered_for_export(const Circuit &c) {
    return lower_mcphase(lower_qft(lower_fanout(c)));
}

} // namespace fpgas
