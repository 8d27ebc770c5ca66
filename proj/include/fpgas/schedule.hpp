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

/// @file schedule.hpp
/// Query-cost figures of merit for fixed-point search and their numerical
/// optimization: the known-lambda cost tau_delta, the geometric-schedule
/// bound tau_{delta,alpha} for unknown lambda, and the (delta, alpha)
/// phase portrait.
///
/// Costs are normalized by sqrt(lambda): tau ~ expected queries divided by
/// 1/sqrt(marked fraction), so Grover's pi/4 ~ 0.785 is the reference
/// floor. With lambda unknown, rounds run l_s = ceil(alpha^{s-1}) queries;
/// once l_s passes the critical count, each round fails with probability
/// <= delta^2, so the remaining expectation is bounded by a geometric
/// series whenever alpha * delta^2 < 1.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "fpgas/fpgs.hpp"
#include "fpgas/util.hpp"

namespace fpgas {

/// Geometric query schedule: round s runs ceil(alpha^{s-1}) fixed-point
/// queries at failure bound delta. The tail bound needs alpha * delta^2 < 1.
struct ScheduleParams {
    double delta = 0.4038;
    double alpha = 1.975;

    void validate() const {
        if (!(delta > 0.0) || !(delta < 1.0)) {
            throw std::invalid_argument(
                "ScheduleParams: delta must be in (0, 1)");
        }
        if (!(alpha > 1.0)) {
            throw std::invalid_argument("ScheduleParams: alpha must be > 1");
        }
        if (!(alpha * delta * delta < 1.0)) {
            throw std::invalid_argument(
                "ScheduleParams: alpha * delta^2 must be < 1");
        }
    }
};

/// Inclusive uniform grid lo, lo+step, ..., hi (float-tolerant endpoint).
inline std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) {
        throw std::invalid_argument("uniform_grid: need step > 0, hi >= lo");
    }
    std::vector<double> g;
    for (std::size_t i = 0;; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + step / 2) {
            break;
        }
        g.push_back(v);
    }
    return g;
}

/// Known-lambda cost tau_delta = sqrt(lambda) * l_c / p(l_c) at the
/// critical query count l_c = l_critical(lambda, delta).
inline double tau_known_lambda(double delta, double lambda) {
    const int lc = l_critical(lambda, delta);
    return std::sqrt(lambda) * static_cast<double>(lc) /
           p_success(lambda, delta, lc);
}

/// Upper bound on the schedule's normalized expected query count, split
/// into an exact head sum and a geometric tail.
struct ScheduleBound {
    double bound = 0.0; ///< sqrt(lambda) * (head + tail)
    int s0 = 1;         ///< first round with l_s >= l_critical
    int sCut = 1;       ///< round where the tail bound takes over (>= s0)
    double head = 0.0;  ///< sum_{s < sCut} ceil(alpha^{s-1}) * Q_s
    double tail = 0.0;  ///< Q_{sCut} * alpha^{sCut-1} / (1 - alpha delta^2)
    std::vector<double> roundFailure; ///< P(round s fails), s = 1..sCut-1
};

/// Evaluates the bound
///     tau <= sqrt(lambda) [ sum_{s<s0} l_s Q_s
///                           + Q_{s0} alpha^{s0-1} / (1 - alpha delta^2) ]
/// with l_s = ceil(alpha^{s-1}), Q_1 = 1, Q_{s+1} = Q_s (1 - p_success).
/// sCut = 0 places the split at s0; a later cut replaces tail terms with
/// exact ones (the bound tightens up to ceiling jitter, since the tail
/// sums the un-ceiled alpha^{s-1}).
inline ScheduleBound tau_schedule_bound(const ScheduleParams &params,
                                        double lambda, int sCut = 0) {
    params.validate();
    if (!(lambda > 0.0) || !(lambda < 1.0)) {
        throw std::invalid_argument(
            "tau_schedule_bound: lambda must be in (0, 1)");
    }
    const int lc = l_critical(lambda, params.delta);
    const auto queries = [&](int s) {
        return static_cast<std::int64_t>(
            std::ceil(std::pow(params.alpha, s - 1)));
    };
    ScheduleBound out;
    out.s0 = 1;
    while (queries(out.s0) < lc) {
        ++out.s0;
    }
    if (sCut == 0) {
        sCut = out.s0;
    }
    if (sCut < out.s0) {
        throw std::invalid_argument(
            "tau_schedule_bound: the cut cannot precede s0 (the tail's "
            "per-round failure bound delta^2 holds only past l_critical)");
    }
    out.sCut = sCut;
    double q = 1.0;
    for (int s = 1; s < sCut; ++s) {
        const auto ls = queries(s);
        out.head += static_cast<double>(ls) * q;
        const double fail =
            1.0 - p_success(lambda, params.delta,
                            static_cast<int>(std::min<std::int64_t>(
                                ls, std::numeric_limits<int>::max())));
        out.roundFailure.push_back(fail);
        q *= fail;
    }
    out.tail = q * std::pow(params.alpha, sCut - 1) /
               (1.0 - params.alpha * params.delta * params.delta);
    out.bound = std::sqrt(lambda) * (out.head + out.tail);
    return out;
}

struct KnownLambdaOptimum {
    double delta = 0.0;
    double tau = 0.0;
};

namespace detail {

/// Smooth envelope of tau_delta for small lambda: l_c ~ arccosh(1/delta) /
/// (2 sqrt(lambda)) and p -> 1 - delta^2 at criticality, so
/// tau ~ arccosh(1/delta) / (2 (1 - delta^2)). Unimodal, unlike tau_delta
/// itself, whose integer l_c puts sawtooth steps on top of this curve.
inline double tau_envelope(double delta) {
    return std::acosh(1.0 / delta) / (2.0 * (1.0 - delta * delta));
}

/// Golden-section minimization of a unimodal function on [lo, hi].
template <typename Fn>
double golden_section(Fn &&f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

} // namespace detail

/// Minimizes tau_delta over delta at fixed lambda. The ceiling in
/// l_critical makes the exact objective a sawtooth, so the minimum is
/// located on the smooth envelope by golden-section search (tolerance
/// 1e-4) and then refined on the exact objective over a +-0.002 window in
/// 1e-5 steps.
inline KnownLambdaOptimum
optimize_known_lambda(double lambda = std::ldexp(1.0, -20)) {
    if (!(lambda > 0.0) || !(lambda < 1.0)) {
        throw std::invalid_argument(
            "optimize_known_lambda: lambda must be in (0, 1)");
    }
    const double coarse =
        detail::golden_section(detail::tau_envelope, 0.3, 0.9, 1e-4);
    KnownLambdaOptimum best;
    best.tau = std::numeric_limits<double>::infinity();
    const double step = 1e-5;
    for (double delta : uniform_grid(std::max(step, coarse - 0.002),
                                     std::min(1.0 - step, coarse + 0.002),
                                     step)) {
        const double tau = tau_known_lambda(delta, lambda);
        if (tau < best.tau) {
            best.tau = tau;
            best.delta = delta;
        }
    }
    return best;
}

struct ScheduleOptimum {
    double delta = 0.0;
    double alpha = 0.0;
    double tau = 0.0;
};

namespace detail {

inline ScheduleOptimum scan_schedule_box(double lambda, double dLo,
                                         double dHi, double dStep,
                                         double aLo, double aHi,
                                         double aStep) {
    ScheduleOptimum best;
    best.tau = std::numeric_limits<double>::infinity();
    for (double delta : uniform_grid(dLo, dHi, dStep)) {
        for (double alpha : uniform_grid(aLo, aHi, aStep)) {
            if (!(alpha * delta * delta < 1.0)) {
                continue;
            }
            const double tau =
                tau_schedule_bound({delta, alpha}, lambda).bound;
            if (tau < best.tau) {
                best = {delta, alpha, tau};
            }
        }
    }
    return best;
}

} // namespace detail

/// Minimum of the schedule bound over the reference box
/// (delta, alpha) in [0.3, 0.5] x [1.5, 2.5]: coarse scan at 0.004 x 0.01,
/// then local refinement at 0.0005 x 0.001.
inline ScheduleOptimum optimized_schedule_min(double lambda) {
    const ScheduleOptimum coarse =
        detail::scan_schedule_box(lambda, 0.3, 0.5, 0.004, 1.5, 2.5, 0.01);
    return detail::scan_schedule_box(
        lambda, std::max(0.3, coarse.delta - 0.004),
        std::min(0.5, coarse.delta + 0.004), 0.0005,
        std::max(1.5, coarse.alpha - 0.01), std::min(2.5, coarse.alpha + 0.01),
        0.001);
}

/// Dense tau_{delta,alpha} evaluation over a rectangular grid. Cells with
/// alpha * delta^2 >= 1 (divergent tail) hold NaN.
struct PhasePortrait {
    double lambda = 0.0;
    std::vector<double> deltas;
    std::vector<double> alphas;
    std::vector<double> tau; ///< row-major: tau[i * alphas.size() + j]

    double at(std::size_t i, std::size_t j) const {
        return tau[i * alphas.size() + j];
    }
};

inline PhasePortrait phase_portrait(const std::vector<double> &deltas,
                                    const std::vector<double> &alphas,
                                    double lambda) {
    PhasePortrait pp;
    pp.lambda = lambda;
    pp.deltas = deltas;
    pp.alphas = alphas;
    pp.tau.assign(deltas.size() * alphas.size(),
                  std::numeric_limits<double>::quiet_NaN());
    parallel_for(deltas.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            const double delta = deltas[i];
            const double alpha = alphas[j];
            if (alpha * delta * delta < 1.0) {
                pp.tau[i * alphas.size() + j] =
                    tau_schedule_bound({delta, alpha}, lambda).bound;
            }
        }
    });
    return pp;
}

/// Long-form CSV: one row per cell, "invalid" where the tail diverges.
inline void write_portrait_csv(std::ostream &os, const PhasePortrait &pp) {
    os << "# tau schedule-bound phase portrait, lambda = "
       << format_sig(pp.lambda) << "\n";
    os << "delta,alpha,tau\n";
    for (std::size_t i = 0; i < pp.deltas.size(); ++i) {
        for (std::size_t j = 0; j < pp.alphas.size(); ++j) {
            const double t = pp.at(i, j);
            os << format_sig(pp.deltas[i]) << "," << format_sig(pp.alphas[j])
               << ",";
            if (std::isnan(t)) {
                os << "invalid";
            } else {
                os << format_sig(t);
            }
            os << "\n";
        }
    }
}

} // namespace fpgas
