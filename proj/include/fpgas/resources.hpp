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

/// @file resources.hpp
/// Exact resource metrics from greedy as-soon-as-possible layering.
///
/// Composite gates are charged through a pluggable cost model whose defaults
/// mirror the lowering passes in lowering.hpp:
///   FANOUT (k targets)   clean-helper copy tree (plan_fanout): between k
///                        and 2k CNOTs, depth <= 2 ceil(log2(k+1))
///   QFT/IQFT (width w)   depth 2w-1; 3*floor(w/2) CNOTs (swap network);
///                        (w-1)(w-2) counted rotations (the non-Clifford
///                        controlled phases at 2 rotations each)
///   MCX (k controls)     depth 1 for k=1 (a CNOT), else 2*ceil(log2(k+1));
///                        non-Clifford cost 4(k-1) for k >= 2
///   MCPHASE (s qubits)   s=1: an RZ_PHASE; s=2: a CPHASE; else two MCX
///                        around one RZ_PHASE on an ancilla
///
/// "Counted" rotations are RZ_PHASE angles off the pi/2 grid (1 each) and
/// CPHASE angles off that grid (2 each, decomposition cost model). rzDepth
/// is the number of schedule layers containing at least one counted
/// rotation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <vector>

#include "fpgas/circuit.hpp"
#include "fpgas/lowering.hpp"

namespace fpgas {

struct ResourceReport {
    std::int64_t totalDepth = 0;
    std::int64_t rzDepth = 0;
    std::int64_t rzCount = 0;
    std::int64_t cnotCount = 0;
    std::int64_t nonCliffordCount = 0;
    std::int64_t qubitCount = 0;
    std::int64_t maxQubitDegree = 0;
};

struct CostModel {
    /// Depth of a FANOUT with k targets (clean-helper copy tree).
    std::int64_t fanout_depth(std::int64_t k) const {
        return plan_fanout(k).depth;
    }

    /// CNOTs charged to a FANOUT with k targets.
    std::int64_t fanout_cnots(std::int64_t k) const {
        return plan_fanout(k).cnots;
    }

    /// Depth of an MCX with k controls.
    std::int64_t mcx_depth(std::int64_t k) const {
        if (k <= 1) {
            return 1;
        }
        return 2 * static_cast<std::int64_t>(
                       std::ceil(std::log2(static_cast<double>(k + 1))));
    }

    /// Non-Clifford cost of an MCX with k controls.
    std::int64_t mcx_non_clifford(std::int64_t k) const {
        return k >= 2 ? 4 * (k - 1) : 0;
    }

    /// Depth of a primitive QFT / IQFT of width w.
    std::int64_t qft_depth(std::int64_t w) const { return 2 * w - 1; }

    /// CNOTs charged to a primitive QFT / IQFT of width w (swap network).
    std::int64_t qft_cnots(std::int64_t w) const { return 3 * (w / 2); }

    /// Counted rotations charged to a primitive QFT / IQFT of width w: the
    /// controlled phases pi/2^t with t >= 2 are off the Clifford grid, and
    /// there are (w-1)(w-2)/2 of them at 2 rotations each.
    std::int64_t qft_rz(std::int64_t w) const {
        return w >= 2 ? (w - 1) * (w - 2) : 0;
    }

    /// Schedule layers of a primitive QFT / IQFT that carry counted
    /// rotations (model: the interior layers).
    std::int64_t qft_rz_layers(std::int64_t w) const {
        return std::max<std::int64_t>(w - 2, 0);
    }
};

/// Greedy ASAP layering: each gate starts at the max next-free time over its
/// qubit support and occupies it for the model duration. Deterministic for a
/// fixed gate order; within any single layer all supports are pairwise
/// disjoint by construction.
inline ResourceReport resources(const Circuit &c,
                                const CostModel &model = CostModel{}) {
    ResourceReport rep;
    rep.qubitCount = c.num_qubits();

    std::vector<std::int64_t> nextFree(
        static_cast<std::size_t>(c.num_qubits()), 0);
    std::vector<std::unordered_set<int>> partners(
        static_cast<std::size_t>(c.num_qubits()));
    std::set<std::int64_t> rzLayers;

    for (const Gate &g : c.gates()) {
        if (g.kind == GateKind::GLOBAL_PHASE) {
            continue; // no qubit support, no schedule footprint
        }
        std::int64_t start = 0;
        for (int q : g.qubits) {
            start = std::max(start, nextFree[static_cast<std::size_t>(q)]);
        }

        std::int64_t duration = 1;
        const auto w = static_cast<std::int64_t>(g.qubits.size());
        const bool counted = !angle_is_clifford(g.angle);
        switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
            break;
        case GateKind::CNOT:
            rep.cnotCount += 1;
            break;
        case GateKind::FANOUT:
            duration = model.fanout_depth(w - 1);
            rep.cnotCount += model.fanout_cnots(w - 1);
            break;
        case GateKind::RZ_PHASE:
            if (counted) {
                rep.rzCount += 1;
                rep.nonCliffordCount += 1;
                rzLayers.insert(start);
            }
            break;
        case GateKind::CPHASE:
            if (counted) {
                rep.rzCount += 2;
                rep.nonCliffordCount += 2;
                rzLayers.insert(start);
            }
            break;
        case GateKind::MCX: {
            const std::int64_t k = w - 1;
            duration = model.mcx_depth(k);
            if (k == 1) {
                rep.cnotCount += 1;
            }
            rep.nonCliffordCount += model.mcx_non_clifford(k);
            break;
        }
        case GateKind::MCPHASE:
            if (w == 1) {
                if (counted) {
                    rep.rzCount += 1;
                    rep.nonCliffordCount += 1;
                    rzLayers.insert(start);
                }
            } else if (w == 2) {
                if (counted) {
                    rep.rzCount += 2;
                    rep.nonCliffordCount += 2;
                    rzLayers.insert(start);
                }
            } else {
                duration = 2 * model.mcx_depth(w) + 1;
                rep.nonCliffordCount += 2 * model.mcx_non_clifford(w);
                if (counted) {
                    rep.rzCount += 1;
                    rep.nonCliffordCount += 1;
                    rzLayers.insert(start + model.mcx_depth(w));
                }
            }
            break;
        case GateKind::QFT:
        case GateKind::IQFT: {
            duration = model.qft_depth(w);
            rep.cnotCount += model.qft_cnots(w);
            const std::int64_t rz = model.qft_rz(w);
            rep.rzCount += rz;
            rep.nonCliffordCount += rz;
            for (std::int64_t l = 0; l < model.qft_rz_layers(w); ++l) {
                rzLayers.insert(start + 1 + l);
            }
            break;
        }
        case GateKind::GLOBAL_PHASE:
            break;
        }

        const std::int64_t end = start + duration;
        rep.totalDepth = std::max(rep.totalDepth, end);
        for (int q : g.qubits) {
            nextFree[static_cast<std::size_t>(q)] = end;
            for (int p : g.qubits) {
                if (p != q) {
                    partners[static_cast<std::size_t>(q)].insert(p);
                }
            }
        }
    }

    rep.rzDepth = static_cast<std::int64_t>(rzLayers.size());
    for (const auto &s : partners) {
        rep.maxQubitDegree = std::max(
            rep.maxQubitDegree, static_cast<std::int64_t>(s.size()));
    }
    return rep;
}

} // namespace fpgas
