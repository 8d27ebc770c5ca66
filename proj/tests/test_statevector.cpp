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

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "fpgas/circuit.hpp"
#include "fpgas/statevector.hpp"
#include "test_helpers.hpp"

namespace fpgas {
namespace {

using testing::max_abs_diff;
using testing::random_state;

TEST(Statevector, InitialStateIsAllZeros) {
    Statevector sv(3);
    EXPECT_EQ(sv.size(), 8u);
    EXPECT_EQ(sv.amplitudes()[0], std::complex<double>(1.0, 0.0));
    EXPECT_DOUBLE_EQ(sv.norm(), 1.0);
}

TEST(Statevector, QubitCapIsEnforced) {
    EXPECT_THROW(Statevector(0), std::invalid_argument);
    EXPECT_THROW(Statevector(27), std::invalid_argument);
}

TEST(Statevector, XOnZeroGivesOne) {
    Statevector sv(1);
    sv.apply(Gate{GateKind::X, {0}});
    EXPECT_DOUBLE_EQ(std::abs(sv.amplitudes()[1]), 1.0);
    EXPECT_DOUBLE_EQ(std::abs(sv.amplitudes()[0]), 0.0);
}

TEST(Statevector, HOnZeroGivesPlus) {
    Statevector sv(1);
    sv.apply(Gate{GateKind::H, {0}});
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(sv.amplitudes()[0].real(), r, 1e-15);
    EXPECT_NEAR(sv.amplitudes()[1].real(), r, 1e-15);
}

TEST(Statevector, QubitZeroIsMostSignificant) {
    Statevector sv(3);
    sv.apply(Gate{GateKind::X, {0}});
    // |100> = index 4 under MSB-first ordering.
    EXPECT_DOUBLE_EQ(std::abs(sv.amplitudes()[4]), 1.0);
}

TEST(Statevector, CnotAndMcxConditionOnControls) {
    Statevector sv(3);
    sv.apply(Gate{GateKind::X, {0}});
    sv.apply(Gate{GateKind::CNOT, {0, 2}});
    EXPECT_DOUBLE_EQ(std::abs(sv.amplitudes()[0b101]), 1.0);
    sv.apply(Gate{GateKind::MCX, {0, 2, 1}});
    EXPECT_DOUBLE_EQ(std::abs(sv.amplitudes()[0b111]), 1.0);
    sv.apply(Gate{GateKind::X, {0}});
    sv.apply(Gate{GateKind::MCX, {0, 1, 2}}); // control 0 now off: no-op
    EXPECT_DOUBLE_EQ(std::abs(sv.amplitudes()[0b011]), 1.0);
}

TEST(Statevector, FanoutCopiesControlParity) {
    Statevector sv(5);
    sv.apply(Gate{GateKind::X, {1}});
    sv.apply(Gate{GateKind::FANOUT, {1, 0, 2, 3, 4}});
    EXPECT_DOUBLE_EQ(std::abs(sv.amplitudes()[0b11111]), 1.0);
    sv.apply(Gate{GateKind::FANOUT, {1, 0, 2, 3, 4}});
    EXPECT_DOUBLE_EQ(std::abs(sv.amplitudes()[0b01000]), 1.0);
}

TEST(Statevector, RzPhaseActsOnOneState) {
    Statevector sv(1);
    sv.apply(Gate{GateKind::H, {0}});
    sv.apply(Gate{GateKind::RZ_PHASE, {0}, M_PI});
    sv.apply(Gate{GateKind::H, {0}});
    // H Z H = X
    EXPECT_NEAR(std::abs(sv.amplitudes()[1]), 1.0, 1e-12);
}

TEST(Statevector, QftMatchesDefinitionOnBasisStates) {
    // QFT |y> = sum_z e^{+2 pi i z y / 8} |z> / sqrt(8) on d = 3.
    for (std::uint64_t y = 0; y < 8; ++y) {
        Statevector sv(3);
        auto &a = sv.mutable_amplitudes();
        a[0] = 0.0;
        a[y] = 1.0;
        sv.apply(Gate{GateKind::QFT, {0, 1, 2}});
        for (std::uint64_t z = 0; z < 8; ++z) {
            const std::complex<double> want =
                std::polar(1.0 / std::sqrt(8.0),
                           2.0 * M_PI * static_cast<double>(z * y) / 8.0);
            EXPECT_LT(std::abs(sv.amplitudes()[z] - want), 1e-12)
                << "y=" << y << " z=" << z;
        }
    }
}

TEST(Statevector, QftThenIqftIsIdentity) {
    Statevector sv = random_state(4, 7);
    const auto initial = sv.amplitudes();
    sv.apply(Gate{GateKind::QFT, {0, 1, 2, 3}});
    sv.apply(Gate{GateKind::IQFT, {0, 1, 2, 3}});
    EXPECT_LT(max_abs_diff(sv.amplitudes(), initial), 1e-12);
}

TEST(Statevector, QftOnSubRegisterLeavesRestIntact) {
    // QFT over qubits {1, 3} of a 4-qubit register: verify against the
    // definition applied per (q0, q2) sector.
    Statevector sv = random_state(4, 13);
    const auto in = sv.amplitudes();
    sv.apply(Gate{GateKind::QFT, {1, 3}});
    const auto &out = sv.amplitudes();
    // y = 2*bit(q1) + bit(q3); index bits: q0 q1 q2 q3 -> 8 4 2 1.
    for (int q0 = 0; q0 < 2; ++q0) {
        for (int q2 = 0; q2 < 2; ++q2) {
            for (int z = 0; z < 4; ++z) {
                std::complex<double> want{0.0, 0.0};
                for (int y = 0; y < 4; ++y) {
                    const std::size_t idx = static_cast<std::size_t>(
                        q0 * 8 + (y >> 1) * 4 + q2 * 2 + (y & 1));
                    want += in[idx] *
                            std::polar(0.5, 2.0 * M_PI * z * y / 4.0);
                }
                const std::size_t idz = static_cast<std::size_t>(
                    q0 * 8 + (z >> 1) * 4 + q2 * 2 + (z & 1));
                EXPECT_LT(std::abs(out[idz] - want), 1e-12);
            }
        }
    }
}

TEST(Statevector, ApplyIsLinear) {
    Circuit c({{"x", 0, 4}});
    c.h(0);
    c.cnot(0, 2);
    c.rz_phase(0.6, 1);
    c.qft({1, 2, 3});
    c.mcphase(0.9, {0, 1, 2});

    Statevector u = random_state(4, 41);
    Statevector v = random_state(4, 42);
    const std::complex<double> alpha{0.8, -0.1};
    const std::complex<double> beta{0.35, 0.45};

    Statevector mix(4);
    auto &ma = mix.mutable_amplitudes();
    double norm2 = 0.0;
    for (std::size_t i = 0; i < ma.size(); ++i) {
        ma[i] = alpha * u.amplitudes()[i] + beta * v.amplitudes()[i];
        norm2 += std::norm(ma[i]);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto &amp : ma) {
        amp *= scale;
    }

    mix.apply(c);
    u.apply(c);
    v.apply(c);
    double maxDiff = 0.0;
    for (std::size_t i = 0; i < ma.size(); ++i) {
        const std::complex<double> want =
            (alpha * u.amplitudes()[i] + beta * v.amplitudes()[i]) * scale;
        maxDiff = std::max(maxDiff, std::abs(mix.amplitudes()[i] - want));
    }
    EXPECT_LT(maxDiff, 1e-12);
}

TEST(Statevector, NormDriftIsDetected) {
    Statevector sv(2);
    sv.mutable_amplitudes()[0] = {2.0, 0.0}; // deliberately unnormalized
    EXPECT_THROW(sv.apply(Gate{GateKind::H, {0}}), std::logic_error);
}

TEST(Statevector, GateQubitOutOfRangeThrows) {
    Statevector sv(2);
    EXPECT_THROW(sv.apply(Gate{GateKind::H, {2}}), std::invalid_argument);
    Circuit c({{"x", 0, 3}});
    EXPECT_THROW(sv.apply(c), std::invalid_argument);
}

TEST(SuccessProbability, UniformSuperpositionCoversMarkedFraction) {
    Circuit c({{"x", 0, 4}});
    for (int i = 0; i < 4; ++i) {
        c.h(i);
    }
    std::unordered_set<std::uint64_t> all;
    for (std::uint64_t v = 0; v < 16; ++v) {
        all.insert(v);
    }
    const auto full = success_probability(c, all);
    EXPECT_NEAR(full.probability, 1.0, 1e-12);
    EXPECT_NEAR(full.leakage, 0.0, 1e-15);

    const auto three = success_probability(c, {0, 5, 9});
    EXPECT_NEAR(three.probability, 3.0 / 16.0, 1e-12);
}

TEST(SuccessProbability, LeakageCountsNonXMass) {
    Circuit c({{"x", 0, 2}, {"y", 0, 2}});
    c.h(0);
    c.h(1);
    c.x(2); // value register left dirty
    const auto rep = success_probability(c, {0, 1, 2, 3});
    EXPECT_NEAR(rep.probability, 0.0, 1e-15);
    EXPECT_NEAR(rep.leakage, 1.0, 1e-12);
}

TEST(SuccessProbability, MarkedValueWidthIsValidated) {
    Circuit c({{"x", 0, 2}});
    EXPECT_THROW(success_probability(c, {4}), std::invalid_argument);
}

} // namespace
} // namespace fpgas
