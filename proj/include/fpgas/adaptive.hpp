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

/// @file adaptive.hpp
/// The adaptive threshold-raising search driver: start from one random
/// draw, repeatedly run a fixed-point search for configurations above the
/// current best value with a geometrically growing query budget, and keep
/// the best configuration seen.
///
/// The loop is
///
///   choose x at random, set (t, l, th) := (0, 1, f(x));
///   repeat: measure G(th, ceil(l)) |0> to get x*, add ceil(l) to t,
///           update (x, th) when f(x*) > th, multiply l by alpha,
///           stop when the stopping condition on (t, rounds, th) fires.
///
/// Two oracle backends are provided. The simulation backend builds the
/// search circuit and samples the measurement distribution of the x
/// register exactly. The model backend skips the simulator: a round
/// succeeds with the closed-form probability, and the sample is uniform
/// over the configurations above the threshold on success and uniform over
/// the rest on failure — exactly the lumped transition kernel of
/// markov.hpp, because the search state is permutation-symmetric within
/// both sets. The two backends therefore agree in distribution.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fpgas/encoder.hpp"
#include "fpgas/fpgs.hpp"
#include "fpgas/markov.hpp"
#include "fpgas/qubo.hpp"
#include "fpgas/schedule.hpp"
#include "fpgas/statevector.hpp"
#include "fpgas/util.hpp"

namespace fpgas {

/// Empirical query constant of the optimized geometric schedule: the
/// expected number of queries to exhaust a marked fraction lambda is about
/// this value times 1/sqrt(lambda). It equals the minimized schedule bound
/// to three decimals.
inline constexpr double kAdaptiveQueryConstant = 1.433;

/// How a search round obtains its sample.
enum class SearchBackend {
    /// Exact statevector simulation of the search circuit.
    simulation,
    /// Closed-form success probability plus uniform draws from the
    /// above-threshold set (success) or its complement (failure).
    model,
};

/// Experimental deviations from the plain flowchart loop, both off by
/// default.
struct SearchOptions {
    /// Restart the query budget at l = 1 after an accepted update instead
    /// of letting it keep growing.
    bool resetOnSuccess = false;
    /// Spend ceil(log2(n)^2) plain random draws (one query each) raising
    /// the threshold before the first search round.
    bool warmStart = false;
};

/// Termination test for the adaptive loop; at least one bound must be set.
struct StoppingCondition {
    /// Stop once the cumulative query count reaches this.
    std::optional<std::int64_t> maxQueries;
    /// Stop once this many rounds (warm-start draws included) completed.
    std::optional<int> maxRounds;
    /// Stop once the best seen value reaches this.
    std::optional<double> targetValue;

    void validate() const {
        if (!maxQueries && !maxRounds && !targetValue) {
            throw std::invalid_argument(
                "StoppingCondition: at least one bound must be set");
        }
        if (maxQueries && *maxQueries < 0) {
            throw std::invalid_argument(
                "StoppingCondition: maxQueries must be >= 0");
        }
        if (maxRounds && *maxRounds < 0) {
            throw std::invalid_argument(
                "StoppingCondition: maxRounds must be >= 0");
        }
    }

    bool satisfied(std::int64_t queries, int rounds, double best) const {
        if (maxQueries && queries >= *maxQueries) {
            return true;
        }
        if (maxRounds && rounds >= *maxRounds) {
            return true;
        }
        return targetValue && best >= *targetValue;
    }
};

/// One completed round of the trace.
struct SearchRound {
    std::int64_t queries = 0;  ///< queries charged by this round
    std::uint64_t sampleX = 0; ///< measured configuration x*
    double sampleValue = 0.0;  ///< f(x*)
    bool accepted = false;     ///< whether the threshold moved up
    bool warmup = false;       ///< plain random draw before the first round
};

/// Final state of one adaptive search run, plus the full per-round trace.
struct SearchState {
    std::uint64_t bestX = 0;  ///< best configuration seen
    double bestValue = 0.0;   ///< f(bestX), the current threshold
    double l = 1.0;           ///< query budget for the next round (real)
    std::int64_t tElapsed = 0; ///< cumulative query count
    std::uint64_t rngSeed = 0; ///< seed this run was started with
    std::uint64_t initialX = 0; ///< the free random draw that seeded th
    double initialValue = 0.0;  ///< f(initialX)
    std::vector<SearchRound> rounds;
};

namespace detail {

/// Uniform draw from the configurations of the classes selected by `above`
/// (strictly above the threshold, or its complement).
inline std::uint64_t draw_from_split(const ValueDistribution &dist,
                                     double threshold, bool above,
                                     Rng &rng) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < dist.num_classes(); ++c) {
        if ((dist.values()[c] > threshold) == above) {
            total += dist.counts()[c];
        }
    }
    if (total == 0) {
        throw std::logic_error(
            "adaptive search: empty sampling set for the current "
            "threshold");
    }
    std::uint64_t idx = rng.next_below(total);
    for (std::size_t c = 0; c < dist.num_classes(); ++c) {
        if ((dist.values()[c] > threshold) == above) {
            if (idx < dist.counts()[c]) {
                return dist.configs(c)[idx];
            }
            idx -= dist.counts()[c];
        }
    }
    throw std::logic_error("adaptive search: split draw fell through");
}

/// One oracle round: sample x* from the round's outcome distribution. The
/// distribution pointer is only consulted by the model backend.
inline std::uint64_t sample_round(const QuboProblem &problem,
                                  const ValueDistribution *dist,
                                  double threshold, std::int64_t l,
                                  double delta, SearchBackend backend,
                                  Rng &rng) {
    if (backend == SearchBackend::model) {
        const double lambda = dist->lambda_above(threshold);
        const double p = lambda == 0.0 ? 0.0 : p_success(lambda, delta, l);
        const bool success = rng.next_double() < p;
        return draw_from_split(*dist, threshold, success, rng);
    }
    const auto th = static_cast<std::int64_t>(std::llround(threshold));
    const Circuit c =
        build_fpgs_circuit(problem, th, fpgs_params(delta, l));
    const std::vector<double> marginal = register_marginal(c, "x");
    const double u = rng.next_double();
    double acc = 0.0;
    for (std::size_t x = 0; x < marginal.size(); ++x) {
        acc += marginal[x];
        if (u < acc) {
            return x;
        }
    }
    return marginal.size() - 1; // u landed in the rounding slack
}

} // namespace detail

/// Runs the adaptive search to completion and returns its final state with
/// the full trace. Deterministic given the seed. A precomputed value
/// distribution (with configurations retained) can be supplied to amortize
/// the enumeration across many trials; it must describe `problem`.
inline SearchState run_fpgas(const QuboProblem &problem,
                             const StoppingCondition &stop,
                             const ScheduleParams &params = {},
                             SearchBackend backend = SearchBackend::model,
                             std::uint64_t seed = 0,
                             const SearchOptions &options = {},
                             const ValueDistribution *dist = nullptr) {
    stop.validate();
    params.validate();
    if (backend == SearchBackend::simulation &&
        problem.mode() != ValueMode::integer_values) {
        throw std::invalid_argument(
            "run_fpgas: the simulation backend needs integer thresholds");
    }
    ValueDistribution local;
    if (backend == SearchBackend::model) {
        if (dist == nullptr) {
            local = ValueDistribution::compute(problem, 24,
                                               /*keep_configs=*/true);
            dist = &local;
        } else if (dist->n() != problem.n() || !dist->has_configs()) {
            throw std::invalid_argument(
                "run_fpgas: the model backend needs a distribution of the "
                "same problem with configurations retained");
        }
    }

    Rng rng(seed);
    SearchState state;
    state.rngSeed = seed;
    state.bestX = rng.next_below(std::uint64_t{1} << problem.n());
    state.bestValue = problem.evaluate_bits(state.bestX);
    state.initialX = state.bestX;
    state.initialValue = state.bestValue;
    state.l = 1.0;

    int completed = 0;
    if (options.warmStart) {
        const double lg = std::log2(static_cast<double>(problem.n()));
        const auto draws = static_cast<int>(std::ceil(lg * lg));
        for (int k = 0; k < draws; ++k) {
            if (stop.satisfied(state.tElapsed, completed,
                               state.bestValue)) {
                break;
            }
            SearchRound round;
            round.warmup = true;
            round.queries = 1;
            round.sampleX =
                rng.next_below(std::uint64_t{1} << problem.n());
            round.sampleValue = problem.evaluate_bits(round.sampleX);
            state.tElapsed += 1;
            round.accepted = round.sampleValue > state.bestValue;
            if (round.accepted) {
                state.bestX = round.sampleX;
                state.bestValue = round.sampleValue;
            }
            state.rounds.push_back(round);
            ++completed;
        }
    }

    while (!stop.satisfied(state.tElapsed, completed, state.bestValue)) {
        SearchRound round;
        round.queries = static_cast<std::int64_t>(std::ceil(state.l));
        round.sampleX =
            detail::sample_round(problem, dist, state.bestValue,
                                 round.queries, params.delta, backend, rng);
        round.sampleValue = problem.evaluate_bits(round.sampleX);
        state.tElapsed += round.queries;
        round.accepted = round.sampleValue > state.bestValue;
        if (round.accepted) {
            state.bestX = round.sampleX;
            state.bestValue = round.sampleValue;
        }
        if (round.accepted && options.resetOnSuccess) {
            state.l = 1.0;
        } else {
            state.l *= params.alpha;
        }
        state.rounds.push_back(round);
        ++completed;
    }
    return state;
}

/// Heuristic and exact expected query counts until the best seen value
/// enters the top eps-fraction of configurations.
struct TopFractionQueries {
    /// Closed-form estimate kAdaptiveQueryConstant * (1/sqrt(eps) - 1).
    double heuristic = 0.0;
    /// Exact absorption expectation of the lumped chain under the same
    /// geometric schedule.
    double exactChain = 0.0;
};

/// Expected queries until a configuration in the top eps-fraction is found,
/// per the g0 (1/sqrt(eps) - 1) estimate, alongside the exact chain value
/// for comparison.
inline TopFractionQueries
expected_queries_to_top_fraction(const QuboProblem &problem, double eps,
                                 const ScheduleParams &params = {}) {
    if (!(eps > 0.0) || !(eps <= 1.0)) {
        throw std::invalid_argument(
            "expected_queries_to_top_fraction: eps must be in (0, 1]");
    }
    TopFractionQueries out;
    out.heuristic = kAdaptiveQueryConstant * (1.0 / std::sqrt(eps) - 1.0);
    const ValueDistribution dist = ValueDistribution::compute(problem);
    out.exactChain = expected_queries_to_enter_top(dist, eps, params);
    return out;
}

} // namespace fpgas
