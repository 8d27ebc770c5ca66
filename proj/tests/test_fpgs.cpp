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

/// @file test_fpgs.cpp
/// Fixed-point search closed forms against exact simulation, and the
/// Chebyshev/angle machinery against frozen reference values.

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include <gtest/gtest.h>

#include "fpgas/encoder.hpp"
#include "fpgas/fpgs.hpp"
#include "fpgas/qubo.hpp"
#include "fpgas/statevector.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

namespace fpgas {
namespace {

using test::fixture5;

std::unordered_set<std::uint64_t> marked_above(const QuboProblem &p,
                                               double th) {
    std::unordered_set<std::uint64_t> m;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << p.n()); ++x) {
        if (p.evaluate_bits(x) > th) {
            m.insert(x);
        }
    }
    return m;
}

double simulated_success(const QuboProblem &p, std::int64_t th,
                         const FpgsParams &params) {
    const Circuit c = build_fpgs_circuit(p, th, params);
    const SuccessProbability s = success_probability(c, marked_above(p, th));
    EXPECT_LT(s.leakage, 1e-12);
    return s.probability;
}

TEST(Chebyshev, ValueAtOneIsOne) {
    for (double order : {0.0, 0.3, 1.0, 2.0, 7.5}) {
        EXPECT_DOUBLE_EQ(chebyshev_t(order, 1.0), 1.0) << order;
    }
}

TEST(Chebyshev, CubicPolynomialIdentity) {
    for (double x = -1.0; x <= 3.001; x += 0.125) {
        EXPECT_NEAR(chebyshev_t(3.0, x), 4 * x * x * x - 3 * x, 1e-10)
            << x;
    }
}

TEST(Chebyshev, FractionalOrderAboveOne) {
    EXPECT_NEAR(chebyshev_t(1.0 / 3.0, 2.0), test::kT13Of2, 1e-15);
}

TEST(Chebyshev, BelowMinusOneNeedsIntegerOrder) {
    EXPECT_NEAR(chebyshev_t(3.0, -2.0), -26.0, 1e-10);
    EXPECT_NEAR(chebyshev_t(4.0, -1.5), chebyshev_t(4.0, 1.5), 1e-10);
    EXPECT_THROW(chebyshev_t(0.5, -2.0), std::domain_error);
}

TEST(Angles, MatchDefiningFormula) {
    const std::vector<double> a = fpgs_angles(0.5, 2);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_NEAR(a[0], test::kAnglesHalfL2[0], 1e-15);
    EXPECT_NEAR(a[1], test::kAnglesHalfL2[1], 1e-15);
}

TEST(Angles, ContinuousBranchStaysInRange) {
    // atan2-based arccot keeps every angle in (0, 2 pi) even where tan
    // crosses its pole (near j / (2l+1) = 1/4).
    const std::vector<double> a = fpgs_angles(0.3, 10);
    for (double v : a) {
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 2.0 * M_PI);
    }
}

TEST(LCritical, KnownSmallCases) {
    EXPECT_EQ(l_critical(0.5, 0.5), 1);
    EXPECT_EQ(l_critical(0.99, 0.5), 1);
    EXPECT_GE(p_success(0.99, 0.5, 1), 0.75);
    EXPECT_EQ(l_critical(3.0 / 32.0, 0.4038), 2);
}

TEST(LCritical, IsMinimalForTheFixedPointGuarantee) {
    for (double lambda : {0.01, 0.05, 3.0 / 32.0, 0.3, 0.7}) {
        for (double delta : {0.25, 0.4038, 0.5, 0.75}) {
            const int l = l_critical(lambda, delta);
            const double floor = 1.0 - delta * delta;
            EXPECT_GE(p_success(lambda, delta, l), floor - 1e-12)
                << lambda << " " << delta;
            if (l > 1) {
                EXPECT_LT(p_success(lambda, delta, l - 1), floor)
                    << lambda << " " << delta;
            }
        }
    }
}

TEST(LCritical, GrowsAsInverseSqrtLambda) {
    for (double lambda :
         {std::ldexp(1.0, -10), std::ldexp(1.0, -12), std::ldexp(1.0, -14),
          std::ldexp(1.0, -16)}) {
        const double ratio =
            static_cast<double>(l_critical(lambda / 4.0, 0.5)) /
            static_cast<double>(l_critical(lambda, 0.5));
        EXPECT_GT(ratio, 1.9) << lambda;
        EXPECT_LT(ratio, 2.1) << lambda;
    }
}

TEST(PSuccess, DegenerateEndpoints) {
    for (int l = 0; l <= 5; ++l) {
        EXPECT_NEAR(p_success(1.0, 0.5, l), 1.0, 1e-12) << l;
        EXPECT_NEAR(p_success(0.0, 0.5, l), 0.0, 1e-9) << l;
    }
    // Zero queries sample the uniform distribution: success equals lambda.
    EXPECT_NEAR(p_success(0.3, 0.7, 0), 0.3, 1e-15);
}

TEST(PSuccess, FixedPointHoldsPastCritical) {
    for (double lambda : {0.01, 3.0 / 32.0, 0.3}) {
        for (double delta : {0.25, 0.5, 0.75}) {
            const int lc = l_critical(lambda, delta);
            for (int l = lc; l <= 3 * lc; ++l) {
                EXPECT_GE(p_success(lambda, delta, l),
                          1.0 - delta * delta - 1e-12)
                    << lambda << " " << delta << " " << l;
            }
        }
    }
}

TEST(PSuccess, MonotoneInLambdaBeforeTheFixedPoint) {
    const double delta = 0.5;
    const int l = 3;
    double prev = 0.0;
    for (double lambda = 0.001; lambda <= 0.2; lambda += 0.001) {
        const double p = p_success(lambda, delta, l);
        if (p >= 1.0 - delta * delta) {
            break;
        }
        EXPECT_GE(p, prev - 1e-12) << lambda;
        prev = p;
    }
}

TEST(FpgsCircuit, ZeroQueriesIsBareUniformPreparation) {
    const FpgsParams params = fpgs_params(0.4038, 0);
    const Circuit c = build_fpgs_circuit(fixture5(), 4, params);
    EXPECT_EQ(c.gates().size(), 5u);
    for (const Gate &g : c.gates()) {
        EXPECT_EQ(g.kind, GateKind::H);
    }
    const double p =
        success_probability(c, marked_above(fixture5(), 4.0)).probability;
    EXPECT_NEAR(p, 3.0 / 32.0, 1e-12);
}

TEST(FpgsCircuit, SingleMarkedStateMatchesClosedForm) {
    // f(x) = the 4-bit value of x; threshold 14 marks only x = 1111, so
    // lambda = 1/16 exactly.
    const QuboProblem p(4,
                        {
                            8, 0, 0, 0, //
                            0, 4, 0, 0, //
                            0, 0, 2, 0, //
                            0, 0, 0, 1, //
                        },
                        0.0, 5, ValueMode::integer_values);
    const double sim = simulated_success(p, 14, fpgs_params(0.5, 3));
    EXPECT_NEAR(sim, test::kPSuccessSixteenth, 1e-9);
    EXPECT_NEAR(sim, p_success(1.0 / 16.0, 0.5, 3), 1e-9);
}

TEST(FpgsCircuit, FixtureMatchesClosedFormAndAmplifies) {
    const double delta = 0.4038;
    const double sim = simulated_success(fixture5(), 4, fpgs_params(delta, 2));
    EXPECT_NEAR(sim, test::kPSuccessFixture, 1e-9);
    EXPECT_NEAR(p_success(3.0 / 32.0, delta, 2), test::kPSuccessFixture,
                1e-12);
    // l = 2 is critical here, so the fixed-point floor already applies.
    EXPECT_GE(sim, 1.0 - delta * delta);
}

TEST(FpgsCircuit, ClosedFormMatchesSimulationOnRandomInstances) {
    Rng rng(424242);
    const int n = 4;
    std::vector<double> q(16, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            const double v = static_cast<double>(rng.next_int(-2, 2));
            q[static_cast<std::size_t>(j) * n + k] = v;
            q[static_cast<std::size_t>(k) * n + j] = v;
        }
    }
    const QuboProblem p(n, q, 1.0, 8, ValueMode::integer_values);
    const auto [mn, mx] = p.exact_value_range();
    const std::vector<std::int64_t> thresholds{
        static_cast<std::int64_t>(std::llround(mn + 0.25 * (mx - mn))),
        static_cast<std::int64_t>(std::llround(mn + 0.7 * (mx - mn)))};
    for (std::int64_t th : thresholds) {
        const double lambda =
            static_cast<double>(marked_above(p, static_cast<double>(th))
                                    .size()) /
            16.0;
        ASSERT_GT(lambda, 0.0);
        ASSERT_LT(lambda, 1.0);
        for (double delta : {0.25, 0.4038, 0.5, 0.75}) {
            for (int l : {1, 2, 4, 6}) {
                const double sim =
                    simulated_success(p, th, fpgs_params(delta, l));
                EXPECT_NEAR(sim, p_success(lambda, delta, l), 1e-9)
                    << "th=" << th << " delta=" << delta << " l=" << l;
            }
        }
    }
}

TEST(FpgsCircuit, QueryStructure) {
    const FpgsParams params = fpgs_params(0.6, 3);
    const Circuit c = build_fpgs_circuit(fixture5(), 4, params);
    // Each of the l markers holds one encoder/adjoint pair; with the
    // Hadamard shortcut that is exactly one IQFT + one QFT per marker.
    std::int64_t qfts = 0;
    std::vector<double> diffuser_angles;
    for (const Gate &g : c.gates()) {
        if (g.kind == GateKind::QFT || g.kind == GateKind::IQFT) {
            ++qfts;
        }
        if (g.kind == GateKind::MCPHASE) {
            diffuser_angles.push_back(g.angle);
        }
    }
    EXPECT_EQ(qfts, 2 * 3);
    // Source reflections carry a_1..a_l in ascending order.
    ASSERT_EQ(diffuser_angles.size(), 3u);
    for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(diffuser_angles[static_cast<std::size_t>(j)],
                    params.angles[static_cast<std::size_t>(j)], 1e-15);
    }
}

TEST(FpgsCircuit, RejectsBadParameters) {
    FpgsParams params = fpgs_params(0.5, 2);
    params.angles.pop_back();
    EXPECT_THROW(build_fpgs_circuit(fixture5(), 4, params),
                 std::invalid_argument);
    EXPECT_THROW(fpgs_params(0.0, 2), std::invalid_argument);
    EXPECT_THROW(fpgs_params(1.0, 2), std::invalid_argument);
    EXPECT_THROW(fpgs_params(0.5, -1), std::invalid_argument);
    EXPECT_THROW(build_fpgs_circuit(fixture5(), 100, fpgs_params(0.5, 1)),
                 std::invalid_argument);
}

} // namespace
} // namespace fpgas
