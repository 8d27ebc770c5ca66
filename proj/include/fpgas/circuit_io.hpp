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

/// @file circuit_io.hpp
/// Circuit serialization: JSON gate lists (lossless round-trip) and
/// OpenQASM 3 text for circuits lowered to elementary gates.
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "fpgas/circuit.hpp"

namespace fpgas {

inline GateKind gate_kind_from_name(const std::string &name) {
    for (GateKind k :
         {GateKind::H, GateKind::X, GateKind::CNOT, GateKind::FANOUT,
          GateKind::RZ_PHASE, GateKind::CPHASE, GateKind::MCX,
          GateKind::MCPHASE, GateKind::QFT, GateKind::IQFT,
          GateKind::GLOBAL_PHASE}) {
        if (name == gate_kind_name(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate kind: " + name);
}

inline bool gate_kind_has_angle(GateKind k) {
    switch (k) {
    case GateKind::RZ_PHASE:
    case GateKind::CPHASE:
    case GateKind::MCPHASE:
    case GateKind::GLOBAL_PHASE:
        return true;
    default:
        return false;
    }
}

inline nlohmann::json circuit_to_json(const Circuit &c) {
    nlohmann::json regs = nlohmann::json::array();
    for (const Register &r : c.registers()) {
        regs.push_back({{"name", r.name}, {"start", r.start},
                        {"size", r.size}});
    }
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate &g : c.gates()) {
        nlohmann::json jg{{"kind", gate_kind_name(g.kind)},
                          {"qubits", g.qubits}};
        if (gate_kind_has_angle(g.kind)) {
            jg["angle"] = g.angle;
        }
        gates.push_back(std::move(jg));
    }
    return nlohmann::json{{"num_qubits", c.num_qubits()},
                          {"registers", std::move(regs)},
                          {"metadata", c.metadata()},
                          {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const nlohmann::json &j) {
    std::vector<Register> regs;
    for (const auto &jr : j.at("registers")) {
        regs.push_back(
            {jr.at("name").get<std::string>(), 0, jr.at("size").get<int>()});
    }
    Circuit c(std::move(regs));
    if (j.contains("num_qubits") &&
        j.at("num_qubits").get<int>() != c.num_qubits()) {
        throw std::invalid_argument(
            "circuit_from_json: num_qubits does not match registers");
    }
    if (j.contains("metadata")) {
        for (const auto &[k, v] : j.at("metadata").items()) {
            c.metadata()[k] = v.get<std::string>();
        }
    }
    for (const auto &jg : j.at("gates")) {
        Gate g;
        g.kind = gate_kind_from_name(jg.at("kind").get<std::string>());
        g.qubits = jg.at("qubits").get<std::vector<int>>();
        g.angle = jg.value("angle", 0.0);
        c.add(std::move(g));
    }
    return c;
}

namespace detail {

/// Full-precision angle literal for QASM output.
inline std::string qasm_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

/// Flat qubit index -> "reg[i]" reference.
inline std::string qasm_qubit(const Circuit &c, int q) {
    for (const Register &r : c.registers()) {
        if (q >= r.start && q < r.start + r.size) {
            return r.name + "[" + std::to_string(q - r.start) + "]";
        }
    }
    throw std::logic_error("qasm export: qubit outside all registers");
}

} // namespace detail

/// OpenQASM 3 text for a circuit containing only elementary gates (H, X,
/// CNOT, RZ_PHASE, CPHASE, MCX, GLOBAL_PHASE). Composite gates must be
/// expanded first — see lowered_for_export(). RZ_PHASE maps to the phase
/// gate `p` (diag(1, e^{i a})), MCX to `ctrl(k) @ x`.
inline std::string to_qasm3(const Circuit &c) {
    std::string out = "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n";
    for (const Register &r : c.registers()) {
        if (r.size > 0) {
            out += "qubit[" + std::to_string(r.size) + "] " + r.name + ";\n";
        }
    }
    for (const Gate &g : c.gates()) {
        switch (g.kind) {
        case GateKind::H:
            out += "h " + detail::qasm_qubit(c, g.qubits[0]) + ";\n";
            break;
        case GateKind::X:
            out += "x " + detail::qasm_qubit(c, g.qubits[0]) + ";\n";
            break;
        case GateKind::CNOT:
            out += "cx " + detail::qasm_qubit(c, g.qubits[0]) + ", " +
                   detail::qasm_qubit(c, g.qubits[1]) + ";\n";
            break;
        case GateKind::RZ_PHASE:
            out += "p(" + detail::qasm_angle(g.angle) + ") " +
                   detail::qasm_qubit(c, g.qubits[0]) + ";\n";
            break;
        case GateKind::CPHASE:
            out += "cp(" + detail::qasm_angle(g.angle) + ") " +
                   detail::qasm_qubit(c, g.qubits[0]) + ", " +
                   detail::qasm_qubit(c, g.qubits[1]) + ";\n";
            break;
        case GateKind::MCX: {
            const std::size_t k = g.qubits.size() - 1;
            out += "ctrl(" + std::to_string(k) + ") @ x ";
            for (std::size_t i = 0; i < g.qubits.size(); ++i) {
                out += (i ? ", " : "") + detail::qasm_qubit(c, g.qubits[i]);
            }
            out += ";\n";
            break;
        }
        case GateKind::GLOBAL_PHASE:
            out += "gphase(" + detail::qasm_angle(g.angle) + ");\n";
            break;
        default:
            throw std::invalid_argument(
                std::string("to_qasm3: composite gate '") +
                gate_kind_name(g.kind) +
                "' not supported; lower the circuit first");
        }
    }
    return out;
}

} // namespace fpgas
