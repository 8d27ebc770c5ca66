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

/// @file markov.hpp
/// Exact Markov-chain evolution of the best-seen-value distribution for
/// adaptive Grover-type search, for both the fixed-point schedule and the
/// classic Boyer-style schedule, plus the head-to-head benchmark report.
///
/// Both transition kernels depend on a configuration only through its
/// objective value, so the 2^n-state chain lumps exactly onto the distinct
/// attained values: from the class of the current best value v, a round
/// succeeds with a probability determined by the fraction lambda = P(f > v)
/// of strictly better configurations; on success the new best is uniform
/// over those configurations (count-weighted over the value classes above
/// v), and on failure the best is unchanged. Mass therefore never moves
/// down, and the top class is a fixed point.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpgas/fpgs.hpp"
#include "fpgas/qubo.hpp"
#include "fpgas/schedule.hpp"
#include "fpgas/util.hpp"

namespace fpgas {

/// sin(x)/x, continuously extended with sinc(0) = 1 (unnormalized sinc).
inline double sinc(double x) {
    if (x == 0.0) {
        return 1.0;
    }
    return std::sin(x) / x;
}

/// Success probability of one classic Grover round whose iterate count is
/// drawn uniformly from {0, ..., m-1}, against a marked fraction lambda:
///
///   theta = arcsin(sqrt(lambda)),
///   P     = (1/2) (1 - sinc(4 m theta) / sinc(2 theta)),
///
/// which is the closed form of the average (1/m) sum_j sin^2((2j+1) theta).
/// At m = 1 it reduces to sin^2(theta) = lambda, and lambda = 0 gives 0.
inline double gas_success_probability(double lambda, std::int64_t m) {
    if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
        throw std::invalid_argument(
            "gas_success_probability: lambda must be in [0, 1]");
    }
    if (m < 1) {
        throw std::invalid_argument(
            "gas_success_probability: iterate bound m must be >= 1");
    }
    const double theta = std::asin(std::sqrt(lambda));
    const double ratio = sinc(4.0 * static_cast<double>(m) * theta) /
                         sinc(2.0 * theta);
    const double p = 0.5 * (1.0 - ratio);
    return std::min(1.0, std::max(0.0, p));
}

/// Distribution of the best value seen so far, lumped over the distinct
/// attained objective values.
struct ChainState {
    /// Ascending distinct objective values (the lumped state space).
    std::vector<double> support;
    /// Probability of the best-seen value being each support entry.
    std::vector<double> prob;
    /// Number of transition rounds applied so far.
    int roundIndex = 0;
    /// Iterate count charged by each applied round (l or m per round).
    std::vector<std::int64_t> schedule;

    /// Throws unless prob matches support, sums to 1 within 1e-12, and is
    /// entrywise nonnegative.
    void validate() const {
        if (support.empty() || prob.size() != support.size()) {
            throw std::invalid_argument(
                "ChainState: prob/support size mismatch");
        }
        double sum = 0.0;
        for (const double p : prob) {
            if (!(p >= 0.0)) {
                throw std::invalid_argument(
                    "ChainState: negative probability entry");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument(
                "ChainState: probabilities do not sum to 1");
        }
    }

    /// Total iterate count charged so far.
    std::int64_t total_queries() const {
        std::int64_t total = 0;
        for (const std::int64_t q : schedule) {
            total += q;
        }
        return total;
    }

    double expected_value() const {
        double acc = 0.0;
        for (std::size_t c = 0; c < support.size(); ++c) {
            acc += support[c] * prob[c];
        }
        return acc;
    }

    double variance() const {
        const double mu = expected_value();
        double acc = 0.0;
        for (std::size_t c = 0; c < support.size(); ++c) {
            const double dv = support[c] - mu;
            acc += dv * dv * prob[c];
        }
        return acc;
    }

    /// Probability mass on the maximum-value class.
    double top_probability() const { return prob.back(); }

    /// Probability mass on classes with value >= v.
    double mass_at_or_above(double v) const {
        double acc = 0.0;
        for (std::size_t c = 0; c < support.size(); ++c) {
            if (support[c] >= v) {
                acc += prob[c];
            }
        }
        return acc;
    }
};

/// Round-zero state: the best value of a single uniformly random draw,
/// i.e. each class carries its counting measure count / 2^n.
inline ChainState initial_chain_state(const ValueDistribution &dist) {
    ChainState state;
    state.support = dist.values();
    state.prob.resize(dist.num_classes());
    const double total = static_cast<double>(dist.total());
    for (std::size_t c = 0; c < dist.num_classes(); ++c) {
        state.prob[c] = static_cast<double>(dist.counts()[c]) / total;
    }
    return state;
}

namespace detail {

/// Shared one-round kernel: from class c, move mass success[c] uniformly
/// over the configurations in strictly higher classes (count-weighted) and
/// keep the rest in place. Appends `queries` to the state's schedule.
inline ChainState apply_jump_kernel(const ValueDistribution &dist,
                                    const ChainState &state,
                                    const std::vector<double> &success,
                                    std::int64_t queries) {
    state.validate();
    const std::size_t classes = dist.num_classes();
    if (state.support.size() != classes || state.support != dist.values()) {
        throw std::invalid_argument(
            "markov transition: chain state does not match the value "
            "distribution");
    }
    if (success.size() != classes) {
        throw std::invalid_argument(
            "markov transition: success vector size mismatch");
    }
    // Count of configurations strictly above each class.
    std::vector<double> above(classes, 0.0);
    for (std::size_t c = classes - 1; c-- > 0;) {
        above[c] =
            above[c + 1] + static_cast<double>(dist.counts()[c + 1]);
    }
    ChainState next;
    next.support = state.support;
    next.prob.assign(classes, 0.0);
    next.roundIndex = state.roundIndex + 1;
    next.schedule = state.schedule;
    next.schedule.push_back(queries);
    for (std::size_t c = 0; c < classes; ++c) {
        const double p = success[c];
        if (!(p >= 0.0) || !(p <= 1.0)) {
            throw std::invalid_argument(
                "markov transition: success probability outside [0, 1]");
        }
        next.prob[c] += state.prob[c] * (1.0 - p);
        if (p > 0.0 && c + 1 < classes) {
            const double moved = state.prob[c] * p;
            for (std::size_t t = c + 1; t < classes; ++t) {
                next.prob[t] +=
                    moved * (static_cast<double>(dist.counts()[t]) /
                             above[c]);
            }
        }
    }
    return next;
}

} // namespace detail

/// One fixed-point-search round with l inner queries: from best value v the
/// round improves with probability
///   1 - T_{2l+1}(T_{1/(2l+1)}(1/delta) sqrt(1 - lambda))^2 delta^2,
/// lambda = P(f > v). The top class has lambda = 0 and never moves.
inline ChainState fpgs_transition(const ValueDistribution &dist,
                                  const ChainState &state, double delta,
                                  std::int64_t l) {
    if (l < 0) {
        throw std::invalid_argument("fpgs_transition: l must be >= 0");
    }
    const std::size_t classes = dist.num_classes();
    std::vector<double> success(classes, 0.0);
    for (std::size_t c = 0; c + 1 < classes; ++c) {
        const double lambda = dist.lambda_above(dist.values()[c]);
        success[c] = p_success(lambda, delta, l);
    }
    return detail::apply_jump_kernel(dist, state, success, l);
}

/// One classic adaptive-Grover round whose iterate count is uniform on
/// {0, ..., m-1} (Boyer-style), using the averaged success probability
/// gas_success_probability. The top class never moves.
inline ChainState gas_transition(const ValueDistribution &dist,
                                 const ChainState &state, std::int64_t m) {
    if (m < 1) {
        throw std::invalid_argument("gas_transition: m must be >= 1");
    }
    const std::size_t classes = dist.num_classes();
    std::vector<double> success(classes, 0.0);
    for (std::size_t c = 0; c + 1 < classes; ++c) {
        const double lambda = dist.lambda_above(dist.values()[c]);
        success[c] = gas_success_probability(lambda, m);
    }
    return detail::apply_jump_kernel(dist, state, success, m);
}

/// Summary statistics of one method's chain after all rounds.
///
/// Percentages are normalized by the maximum attained value: expectedPct is
/// 100 E[best]/max and stdDevPct is 100 sqrt(Var[best])/max. The square
/// root makes the figure scale-free in the same units as expectedPct; it is
/// the convention behind quoted spreads like "the variance is 5.18%" for a
/// uniform random cut (a 229-edge graph has sd sqrt(229)/2 ~ 7.57, i.e.
/// 5.18% of a 146 max cut). topAmplification is the probability of the
/// maximum class divided by its uniform-baseline probability.
struct MethodReport {
    /// States after 0, 1, ..., rounds transitions (front is the initial
    /// uniform-draw state).
    std::vector<ChainState> rounds;
    /// Sum of the per-round iterate counts. For the fixed-point method this
    /// is the exact query count; for the Boyer-style method it charges the
    /// per-round bound m_s (the executed count is uniform below m_s, so the
    /// realized average is about half this figure).
    std::int64_t totalQueries = 0;
    double expectedPct = 0.0;
    double stdDevPct = 0.0;
    double topAmplification = 1.0;

    const ChainState &final_state() const { return rounds.back(); }
};

/// Head-to-head comparison of the two adaptive methods on one problem.
struct BenchmarkReport {
    double maxValue = 0.0;
    /// Uniform single-draw baseline, in the same normalization.
    double uniformExpectedPct = 0.0;
    double uniformStdDevPct = 0.0;
    double uniformTopProbability = 0.0;
    MethodReport fpgs;
    MethodReport gas;
};

namespace detail {

inline void fill_method_stats(MethodReport *report, double maxValue,
                              double uniformTop) {
    const ChainState &last = report->rounds.back();
    report->totalQueries = last.total_queries();
    report->expectedPct = 100.0 * last.expected_value() / maxValue;
    report->stdDevPct = 100.0 * std::sqrt(last.variance()) / maxValue;
    report->topAmplification = last.top_probability() / uniformTop;
}

} // namespace detail

/// Evolves both chains from the uniform single-draw state for the given
/// number of rounds and reports the comparison statistics.
///
/// Round s (1-based) charges l_s = ceil(alpha^(s-1)) inner queries for the
/// fixed-point method and m_s = ceil(gasGrowth^(s-1)) for the Boyer-style
/// method (growth factor 6/5 by default). rounds = 0 reports the uniform
/// single-draw statistics for both methods. Requires max f > 0 so the
/// percentage normalization is meaningful.
inline BenchmarkReport benchmark(const QuboProblem &problem, int rounds,
                                 const ScheduleParams &fpgsParams = {},
                                 double gasGrowth = 1.2,
                                 int enumeration_cap = 24) {
    if (rounds < 0) {
        throw std::invalid_argument("benchmark: rounds must be >= 0");
    }
    fpgsParams.validate();
    if (!(gasGrowth >= 1.0)) {
        throw std::invalid_argument("benchmark: gasGrowth must be >= 1");
    }
    const ValueDistribution dist =
        ValueDistribution::compute(problem, enumeration_cap);
    if (!(dist.max_value() > 0.0)) {
        throw std::invalid_argument(
            "benchmark: maximum objective value must be positive for "
            "percentage normalization");
    }
    BenchmarkReport report;
    report.maxValue = dist.max_value();
    const ChainState initial = initial_chain_state(dist);
    report.uniformExpectedPct =
        100.0 * initial.expected_value() / report.maxValue;
    report.uniformStdDevPct =
        100.0 * std::sqrt(initial.variance()) / report.maxValue;
    report.uniformTopProbability = initial.top_probability();

    report.fpgs.rounds.push_back(initial);
    report.gas.rounds.push_back(initial);
    for (int s = 1; s <= rounds; ++s) {
        const auto ls = static_cast<std::int64_t>(
            std::ceil(std::pow(fpgsParams.alpha, s - 1)));
        const auto ms = static_cast<std::int64_t>(
            std::ceil(std::pow(gasGrowth, s - 1)));
        report.fpgs.rounds.push_back(fpgs_transition(
            dist, report.fpgs.rounds.back(), fpgsParams.delta, ls));
        report.gas.rounds.push_back(
            gas_transition(dist, report.gas.rounds.back(), ms));
    }
    detail::fill_method_stats(&report.fpgs, report.maxValue,
                              report.uniformTopProbability);
    detail::fill_method_stats(&report.gas, report.maxValue,
                              report.uniformTopProbability);
    return report;
}

/// Exact expected number of inner queries until the best-seen value first
/// reaches the top eps-fraction of configurations, under the geometric
/// fixed-point schedule l_s = ceil(alpha^(s-1)).
///
/// The target set is every configuration with value >= the top-fraction
/// threshold of the distribution. Round s always runs to completion, so a
/// first entry during round s costs l_1 + ... + l_s; the expectation is
/// the tail sum over rounds of l_s P(not yet entered). The chain never
/// leaves the target set once inside, so that probability is read directly
/// off the evolved state. The sum is truncated once the remaining mass
/// drops below 1e-13 (the chain absorbs at a doubly exponential rate, so
/// the discarded tail is negligible); throws if 400 rounds do not reach
/// that point.
inline double
expected_queries_to_enter_top(const ValueDistribution &dist, double eps,
                              const ScheduleParams &params = {}) {
    if (!(eps > 0.0) || !(eps <= 1.0)) {
        throw std::invalid_argument(
            "expected_queries_to_enter_top: eps must be in (0, 1]");
    }
    params.validate();
    const double threshold = dist.top_fraction_threshold(eps);
    ChainState state = initial_chain_state(dist);
    double expectation = 0.0;
    double notEntered = 1.0 - state.mass_at_or_above(threshold);
    constexpr double kTailMass = 1e-13;
    constexpr int kMaxRounds = 400;
    for (int s = 1; notEntered > kTailMass; ++s) {
        if (s > kMaxRounds) {
            throw std::runtime_error(
                "expected_queries_to_enter_top: chain did not absorb "
                "within the round cap");
        }
        const auto ls = static_cast<std::int64_t>(
            std::ceil(std::pow(params.alpha, s - 1)));
        expectation += notEntered * static_cast<double>(ls);
        state = fpgs_transition(dist, state, params.delta, ls);
        notEntered = 1.0 - state.mass_at_or_above(threshold);
    }
    return expectation;
}

/// Writes the per-round class distributions of both methods as CSV:
/// a comment line with the normalization, then one row per
/// (method, round, value class).
inline void write_benchmark_csv(std::ostream &os,
                                const BenchmarkReport &report) {
    os << "# best-seen value distributions per round; max value = "
       << format_sig(report.maxValue) << "\n";
    os << "method,round,queries_so_far,value,probability\n";
    const auto dump = [&os](const char *name, const MethodReport &method) {
        for (std::size_t r = 0; r < method.rounds.size(); ++r) {
            const ChainState &state = method.rounds[r];
            std::int64_t sofar = 0;
            for (const std::int64_t q : state.schedule) {
                sofar += q;
            }
            for (std::size_t c = 0; c < state.support.size(); ++c) {
                os << name << ',' << r << ',' << sofar << ','
                   << format_sig(state.support[c]) << ','
                   << format_sig(state.prob[c]) << "\n";
            }
        }
    };
    dump("fpgs", report.fpgs);
    dump("gas", report.gas);
}

} // namespace fpgas
