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

/// @file circuit.hpp
/// Gate-level circuit IR over named qubit registers.
///
/// Gate conventions (qubit order inside `qubits`):
///   H, X, RZ_PHASE(theta)          one qubit; RZ_PHASE = diag(1, e^{i theta})
///   CNOT                           {control, target}
///   FANOUT                         {control, target...}; XORs the control
///                                  into every target
///   CPHASE(theta)                  two qubits, symmetric: e^{i theta} iff both 1
///   MCX                            {control..., target}
///   MCPHASE(theta)                 control set (symmetric): e^{i theta} iff all 1
///   QFT / IQFT                     ordered sub-register, MSB first; QFT maps
///                                  |y> to sum_z e^{+2 pi i z y / 2^w} |z> / sqrt(2^w)
///   GLOBAL_PHASE(theta)            no qubits
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace fpgas {

enum class GateKind {
    H,
    X,
    CNOT,
    FANOUT,
    RZ_PHASE,
    CPHASE,
    MCX,
    MCPHASE,
    QFT,
    IQFT,
    GLOBAL_PHASE,
};

inline const char *gate_kind_name(GateKind k) {
    switch (k) {
    case GateKind::H:
        return "h";
    case GateKind::X:
        return "x";
    case GateKind::CNOT:
        return "cnot";
    case GateKind::FANOUT:
        return "fanout";
    case GateKind::RZ_PHASE:
        return "rz_phase";
    case GateKind::CPHASE:
        return "cphase";
    case GateKind::MCX:
        return "mcx";
    case GateKind::MCPHASE:
        return "mcphase";
    case GateKind::QFT:
        return "qft";
    case GateKind::IQFT:
        return "iqft";
    case GateKind::GLOBAL_PHASE:
        return "global_phase";
    }
    return "?";
}

struct Gate {
    GateKind kind;
    std::vector<int> qubits;
    double angle = 0.0;
};

struct Register {
    std::string name;
    int start = 0;
    int size = 0;
};

/// True when theta is 0 modulo 2*pi within 1e-15 (such phase gates are
/// elided at construction).
inline bool angle_is_trivial(double theta) {
    return std::abs(std::remainder(theta, 2.0 * M_PI)) < 1e-15;
}

/// True when theta lands on a multiple of pi/2 (Clifford phase) within 1e-9;
/// rotations off that grid are the "counted" ones in resource reports.
inline bool angle_is_clifford(double theta) {
    return std::abs(std::remainder(theta, M_PI / 2.0)) < 1e-9;
}

class Circuit {
  public:
    Circuit() = default;

    /// Lays out the given registers contiguously in order.
    explicit Circuit(std::vector<Register> regs) {
        int at = 0;
        for (auto &r : regs) {
            if (r.size < 0) {
                throw std::invalid_argument("Circuit: negative register size");
            }
            r.start = at;
            at += r.size;
        }
        registers_ = std::move(regs);
        num_qubits_ = at;
    }

    int num_qubits() const { return num_qubits_; }
    const std::vector<Register> &registers() const { return registers_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::map<std::string, std::string> &metadata() { return metadata_; }
    const std::map<std::string, std::string> &metadata() const {
        return metadata_;
    }

    const Register &reg(const std::string &name) const {
        for (const auto &r : registers_) {
            if (r.name == name) {
                return r;
            }
        }
        throw std::invalid_argument("Circuit: no register named " + name);
    }

    bool has_reg(const std::string &name) const {
        for (const auto &r : registers_) {
            if (r.name == name) {
                return true;
            }
        }
        return false;
    }

    /// Flat index of qubit i inside a named register.
    int qubit(const std::string &regName, int i) const {
        const Register &r = reg(regName);
        if (i < 0 || i >= r.size) {
            throw std::invalid_argument("Circuit: qubit index out of range");
        }
        return r.start + i;
    }

    /// All flat indices of a register, MSB first.
    std::vector<int> reg_qubits(const std::string &regName) const {
        const Register &r = reg(regName);
        std::vector<int> q(static_cast<std::size_t>(r.size));
        for (int i = 0; i < r.size; ++i) {
            q[static_cast<std::size_t>(i)] = r.start + i;
        }
        return q;
    }

    /// Appends a register of fresh qubits and returns its descriptor.
    const Register &add_register(const std::string &name, int size) {
        if (has_reg(name)) {
            throw std::invalid_argument("Circuit: duplicate register " + name);
        }
        registers_.push_back({name, num_qubits_, size});
        num_qubits_ += size;
        return registers_.back();
    }

    void add(Gate g) {
        validate(g);
        switch (g.kind) {
        case GateKind::RZ_PHASE:
        case GateKind::CPHASE:
        case GateKind::MCPHASE:
        case GateKind::GLOBAL_PHASE:
            if (angle_is_trivial(g.angle)) {
                return;
            }
            break;
        default:
            break;
        }
        gates_.push_back(std::move(g));
    }

    void h(int q) { add({GateKind::H, {q}}); }
    void x(int q) { add({GateKind::X, {q}}); }
    void cnot(int c, int t) { add({GateKind::CNOT, {c, t}}); }
    void fanout(int c, const std::vector<int> &targets) {
        std::vector<int> qs{c};
        qs.insert(qs.end(), targets.begin(), targets.end());
        add({GateKind::FANOUT, std::move(qs)});
    }
    void rz_phase(double theta, int q) {
        add({GateKind::RZ_PHASE, {q}, theta});
    }
    void cphase(double theta, int a, int b) {
        add({GateKind::CPHASE, {a, b}, theta});
    }
    void mcx(const std::vector<int> &controls, int target) {
        std::vector<int> qs = controls;
        qs.push_back(target);
        add({GateKind::MCX, std::move(qs)});
    }
    void mcphase(double theta, std::vector<int> qubits) {
        add({GateKind::MCPHASE, std::move(qubits), theta});
    }
    void qft(std::vector<int> qubits) {
        add({GateKind::QFT, std::move(qubits)});
    }
    void iqft(std::vector<int> qubits) {
        add({GateKind::IQFT, std::move(qubits)});
    }
    void global_phase(double theta) {
        add({GateKind::GLOBAL_PHASE, {}, theta});
    }

    /// Appends another circuit's gates (same qubit space required).
    void append(const Circuit &other) {
        if (other.num_qubits_ != num_qubits_) {
            throw std::invalid_argument("Circuit::append: size mismatch");
        }
        for (const Gate &g : other.gates_) {
            gates_.push_back(g);
        }
    }

    /// Reversed gate order with every gate inverted.
    Circuit adjoint() const {
        Circuit out = *this;
        out.gates_.clear();
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            Gate g = *it;
            switch (g.kind) {
            case GateKind::RZ_PHASE:
            case GateKind::CPHASE:
            case GateKind::MCPHASE:
            case GateKind::GLOBAL_PHASE:
                g.angle = -g.angle;
                break;
            case GateKind::QFT:
                g.kind = GateKind::IQFT;
                break;
            case GateKind::IQFT:
                g.kind = GateKind::QFT;
                break;
            default:
                break; // H, X, CNOT, FANOUT, MCX are self-inverse
            }
            out.gates_.push_back(std::move(g));
        }
        return out;
    }

    /// Clone of the register layout with no gates.
    Circuit empty_like() const {
        Circuit out = *this;
        out.gates_.clear();
        return out;
    }

  private:
    void validate(const Gate &g) const {
        std::unordered_set<int> seen;
        for (int q : g.qubits) {
            if (q < 0 || q >= num_qubits_) {
                throw std::invalid_argument("Circuit: qubit out of range");
            }
            if (!seen.insert(q).second) {
                throw std::invalid_argument("Circuit: repeated qubit in gate");
            }
        }
        switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::RZ_PHASE:
            if (g.qubits.size() != 1) {
                throw std::invalid_argument("Circuit: bad arity");
            }
            break;
        case GateKind::CNOT:
        case GateKind::CPHASE:
            if (g.qubits.size() != 2) {
                throw std::invalid_argument("Circuit: bad arity");
            }
            break;
        case GateKind::FANOUT:
        case GateKind::MCX:
            if (g.qubits.size() < 2) {
                throw std::invalid_argument("Circuit: bad arity");
            }
            break;
        case GateKind::MCPHASE:
        case GateKind::QFT:
        case GateKind::IQFT:
            if (g.qubits.empty()) {
                throw std::invalid_argument("Circuit: bad arity");
            }
            break;
        case GateKind::GLOBAL_PHASE:
            if (!g.qubits.empty()) {
                throw std::invalid_argument("Circuit: bad arity");
            }
            break;
        }
    }

    int num_qubits_ = 0;
    std::vector<Register> registers_;
    std::vector<Gate> gates_;
    std::map<std::string, std::string> metadata_;
};

} // namespace fpgas
