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

/// @file fpgs.hpp
/// Fixed-point Grover search: the phase-angle schedule, the Chebyshev
/// closed form for its success probability, the critical query count, and
/// assembly of the search circuit from marker and diffuser.
///
/// With L = 2l + 1 queries' worth of reflections, the walk
/// G_l ... G_1 |s>, G_j = S_s(a_j) S_t(a_{l+1-j}), drives the success
/// probability to 1 - T_L(sqrt(1-lambda) T_{1/L}(1/delta))^2 delta^2, which
/// stays >= 1 - delta^2 for every l past the critical value: overshooting
/// the marked fraction can no longer hurt (the fixed-point property).
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpgas/circuit.hpp"
#include "fpgas/encoder.hpp"
#include "fpgas/qubo.hpp"
#include "fpgas/util.hpp"

namespace fpgas {

/// Chebyshev function of the first kind, generalized to real nonnegative
/// order: cos(order * arccos x) on [-1, 1], cosh(order * arccosh x) above 1
/// (continuous at 1), and the parity reflection below -1 (integer order
/// only; fractional order has no real value there).
inline double chebyshev_t(double order, double x) {
    if (!(order >= 0.0)) {
        throw std::invalid_argument("chebyshev_t: order must be >= 0");
    }
    if (x >= 1.0) {
        return std::cosh(order * std::acosh(x));
    }
    if (x >= -1.0) {
        return std::cos(order * std::acos(x));
    }
    const double rounded = std::nearbyint(order);
    if (std::abs(order - rounded) > 1e-9) {
        throw std::domain_error(
            "chebyshev_t: x < -1 requires an integer order");
    }
    const double v = std::cosh(order * std::acosh(-x));
    return std::fmod(rounded, 2.0) == 0.0 ? v : -v;
}

namespace detail {

inline void check_delta(double delta, const char *who) {
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument(std::string(who) +
                                    ": delta must be in (0, 1)");
    }
}

} // namespace detail

/// Phase angles a_j = 2 arccot(tan(2 pi j / L) tanh(arccosh(1/delta) / L)),
/// j = 1..l, L = 2l + 1, with arccot(z) = atan2(1, z) in (0, pi) so the
/// sequence is continuous across tan's pole. The target-reflection angles
/// are the same sequence reversed (b_j = a_{l+1-j}).
inline std::vector<double> fpgs_angles(double delta, int l) {
    detail::check_delta(delta, "fpgs_angles");
    if (l < 0) {
        throw std::invalid_argument("fpgs_angles: l must be >= 0");
    }
    const double big_l = 2.0 * l + 1.0;
    const double shrink = std::tanh(std::acosh(1.0 / delta) / big_l);
    std::vector<double> a(static_cast<std::size_t>(l));
    for (int j = 1; j <= l; ++j) {
        a[static_cast<std::size_t>(j - 1)] =
            2.0 * std::atan2(1.0, std::tan(2.0 * M_PI * j / big_l) * shrink);
    }
    return a;
}

/// Parameters of one fixed-point search run: failure-amplitude bound delta,
/// query count l (l = 0 degenerates to bare uniform sampling), and the
/// source-reflection angle sequence a_1..a_l.
struct FpgsParams {
    double delta = 0.5;
    int l = 0;
    std::vector<double> angles;
};

inline FpgsParams fpgs_params(double delta, int l) {
    return FpgsParams{delta, l, fpgs_angles(delta, l)};
}

/// Closed-form success probability of the l-query fixed-point search at
/// marked fraction lambda:
///     1 - T_{2l+1}(sqrt(1 - lambda) T_{1/(2l+1)}(1/delta))^2 delta^2.
/// Tiny negative float noise (>= -1e-12) is clamped to 0.
inline double p_success(double lambda, double delta, int l) {
    detail::check_delta(delta, "p_success");
    if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
        throw std::invalid_argument("p_success: lambda must be in [0, 1]");
    }
    if (l < 0) {
        throw std::invalid_argument("p_success: l must be >= 0");
    }
    const double big_l = 2.0 * l + 1.0;
    const double inner =
        std::sqrt(1.0 - lambda) * chebyshev_t(1.0 / big_l, 1.0 / delta);
    const double t = chebyshev_t(big_l, inner);
    double p = 1.0 - t * t * delta * delta;
    if (p < 0.0 && p >= -1e-12) {
        p = 0.0;
    }
    return std::min(p, 1.0);
}

/// Smallest l with sqrt(1 - lambda) T_{1/(2l+1)}(1/delta) <= 1, i.e. the
/// first query count whose success probability is guaranteed >= 1 -
/// delta^2. Closed-form jump start, then a local adjustment for float
/// safety.
inline int l_critical(double lambda, double delta) {
    detail::check_delta(delta, "l_critical");
    if (!(lambda > 0.0) || !(lambda < 1.0)) {
        throw std::invalid_argument("l_critical: lambda must be in (0, 1)");
    }
    const double u = std::acosh(1.0 / delta);
    const double v = std::acosh(1.0 / std::sqrt(1.0 - lambda));
    const auto reaches_fixed_point = [&](std::int64_t l) {
        return std::sqrt(1.0 - lambda) * std::cosh(u / (2.0 * l + 1.0)) <=
               1.0;
    };
    std::int64_t l = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil((u / v - 1.0) / 2.0)));
    while (!reaches_fixed_point(l)) {
        ++l;
    }
    while (l > 1 && reaches_fixed_point(l - 1)) {
        --l;
    }
    return static_cast<int>(l);
}

/// Assembles the full search circuit: uniform preparation H on the input
/// register, then G_1..G_l with G_j = S_s(a_j) . S_t(a_{l+1-j}) (marker
/// first in gate order). Registers are the marker's ("x", "y", optional
/// "anc"); value and ancilla qubits end at |0>.
inline Circuit build_fpgs_circuit(const QuboProblem &p,
                                  std::int64_t threshold,
                                  const FpgsParams &params,
                                  EncoderConfig cfg = marker_default_config()) {
    detail::check_delta(params.delta, "build_fpgs_circuit");
    if (params.l < 0 ||
        params.angles.size() != static_cast<std::size_t>(params.l)) {
        throw std::invalid_argument(
            "build_fpgs_circuit: params.angles must hold exactly l angles");
    }
    if (!p.negated_shifted(static_cast<double>(threshold)).values_fit()) {
        throw std::invalid_argument(
            "build_fpgs_circuit: threshold - f(x) must fit the "
            "two's-complement range of the value register for every x");
    }
    Circuit c = detail::encoder_skeleton(p, cfg);
    c.metadata()["builder"] = "fpgs";
    c.metadata()["threshold"] = std::to_string(threshold);
    c.metadata()["delta"] = format_sig(params.delta);
    c.metadata()["l"] = std::to_string(params.l);
    const std::vector<int> xs = c.reg_qubits("x");
    for (int q : xs) {
        c.h(q);
    }
    for (int j = 1; j <= params.l; ++j) {
        const double target_angle =
            params.angles[static_cast<std::size_t>(params.l - j)];
        const double source_angle =
            params.angles[static_cast<std::size_t>(j - 1)];
        c.append(build_marker(p, threshold, target_angle, cfg));
        emit_diffuser(c, xs, source_angle);
    }
    return c;
}

} // namespace fpgas
