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

/// @file qubo.hpp
/// QUBO instances f(x) = offset + x^T Q x over x in {0,1}^n, the XOR rewrite
/// coefficients used by the circuit encoders, exact value distributions, and
/// graph-cut / Erdos-Renyi instance builders.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fpgas/util.hpp"

namespace fpgas {

enum class ValueMode { integer_values, real_values };

/// Bit j of configuration x, with x_0 stored as the most significant bit so
/// that the bitstring "x_0 x_1 ... x_{n-1}" reads as the binary integer.
inline int bit_of(std::uint64_t x, int n, int j) {
    return static_cast<int>((x >> (n - 1 - j)) & 1u);
}

inline std::string format_bits(std::uint64_t x, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j) {
        s[static_cast<std::size_t>(j)] = bit_of(x, n, j) ? '1' : '0';
    }
    return s;
}

inline std::uint64_t parse_bits(const std::string &s) {
    std::uint64_t x = 0;
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("parse_bits: not a bitstring: " + s);
        }
        x = (x << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return x;
}

/// Maximize f(x) = offset + x^T Q x over x in {0,1}^n. Q is stored exactly
/// symmetric; upper-triangular input is accepted and symmetrized as
/// (U + U^T)/2 with the diagonal preserved. In integer mode every attained
/// value must fit a signed d-bit register, [-2^{d-1}, 2^{d-1}).
class QuboProblem {
  public:
    QuboProblem(int n, std::vector<double> matrix, double offset, int d,
                ValueMode mode = ValueMode::integer_values)
        : n_(n), d_(d), offset_(offset), mode_(mode), q_(std::move(matrix)) {
        if (n_ < 1) {
            throw std::invalid_argument("QuboProblem: n must be >= 1");
        }
        if (n_ > 63) {
            throw std::invalid_argument("QuboProblem: n must be <= 63");
        }
        if (d_ < 1) {
            throw std::invalid_argument("QuboProblem: d must be >= 1");
        }
        if (q_.size() != static_cast<std::size_t>(n_) * n_) {
            throw std::invalid_argument("QuboProblem: matrix must be n x n");
        }
        if (mode_ == ValueMode::integer_values) {
            for (double v : q_) {
                if (v != std::floor(v)) {
                    throw std::invalid_argument(
                        "QuboProblem: integer mode requires integer entries");
                }
            }
            if (offset_ != std::floor(offset_)) {
                throw std::invalid_argument(
                    "QuboProblem: integer mode requires an integer offset");
            }
        }
        // Symmetrize: (U + U^T)/2. A symmetric input is unchanged.
        for (int j = 0; j < n_; ++j) {
            for (int k = j + 1; k < n_; ++k) {
                const double avg = (at(j, k) + at(k, j)) / 2.0;
                at(j, k) = avg;
                at(k, j) = avg;
            }
        }
    }

    int n() const { return n_; }
    int d() const { return d_; }
    double offset() const { return offset_; }
    ValueMode mode() const { return mode_; }
    const std::vector<double> &matrix() const { return q_; }

    double &at(int j, int k) {
        return q_[static_cast<std::size_t>(j) * n_ + k];
    }
    double at(int j, int k) const {
        return q_[static_cast<std::size_t>(j) * n_ + k];
    }

    QuboProblem with_d(int d) const {
        QuboProblem p = *this;
        p.d_ = d;
        return p;
    }

    /// Problem whose objective is shift - f(x): negated matrix, shifted
    /// offset. Used by threshold markers, where the sign of shift - f(x)
    /// decides marking.
    QuboProblem negated_shifted(double shift) const {
        QuboProblem p = *this;
        for (double &v : p.q_) {
            v = -v;
        }
        p.offset_ = shift - offset_;
        return p;
    }

    /// f on a 0/1 vector.
    double evaluate(const std::vector<int> &x) const {
        if (x.size() != static_cast<std::size_t>(n_)) {
            throw std::invalid_argument("evaluate: length mismatch");
        }
        double acc = offset_;
        for (int j = 0; j < n_; ++j) {
            if (!x[static_cast<std::size_t>(j)]) {
                continue;
            }
            for (int k = 0; k < n_; ++k) {
                if (x[static_cast<std::size_t>(k)]) {
                    acc += at(j, k);
                }
            }
        }
        return acc;
    }

    /// f on a packed configuration (x_0 = MSB).
    double evaluate_bits(std::uint64_t x) const {
        double acc = offset_;
        for (int j = 0; j < n_; ++j) {
            if (!bit_of(x, n_, j)) {
                continue;
            }
            for (int k = 0; k < n_; ++k) {
                if (bit_of(x, n_, k)) {
                    acc += at(j, k);
                }
            }
        }
        return acc;
    }

    /// Interval bound on attained values: offset plus the sum of negative
    /// (resp. positive) matrix entries. Loose but valid for any x.
    std::pair<double, double> value_interval() const {
        double lo = offset_;
        double hi = offset_;
        for (double v : q_) {
            (v < 0 ? lo : hi) += v;
        }
        return {lo, hi};
    }

    /// True when every attained value fits the signed d-bit register.
    /// Exhaustive for n <= cap, interval bound beyond.
    bool values_fit(int enumeration_cap = 24) const {
        const double lo = -std::ldexp(1.0, d_ - 1);
        const double hi = std::ldexp(1.0, d_ - 1);
        if (n_ <= enumeration_cap) {
            const auto [mn, mx] = exact_value_range();
            return mn >= lo && mx < hi;
        }
        const auto [mn, mx] = value_interval();
        return mn >= lo && mx < hi;
    }

    /// Exact min/max of f by Gray-code enumeration.
    std::pair<double, double> exact_value_range() const {
        double mn = offset_;
        double mx = offset_;
        enumerate([&](std::uint64_t, double v) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        });
        return {mn, mx};
    }

    /// Visits every configuration once in Gray-code order with its value,
    /// using O(1)-amortized incremental updates (one bit flips per step).
    template <typename Fn> void enumerate(Fn &&visit) const {
        const std::uint64_t total = std::uint64_t{1} << n_;
        std::vector<int> x(static_cast<std::size_t>(n_), 0);
        // s[j] = sum_{k != j} Q_{jk} x_k, maintained across flips.
        std::vector<double> s(static_cast<std::size_t>(n_), 0.0);
        double value = offset_;
        std::uint64_t packed = 0;
        visit(packed, value);
        for (std::uint64_t i = 1; i < total; ++i) {
            // Gray codes of i-1 and i differ in bit ctz(i) (LSB = 0); map
            // LSB position p to variable j = n-1-p so x_0 is the MSB.
            const int p = std::countr_zero(i);
            const int j = n_ - 1 - p;
            const double sign = x[static_cast<std::size_t>(j)] ? -1.0 : 1.0;
            value += sign * (at(j, j) + 2.0 * s[static_cast<std::size_t>(j)]);
            x[static_cast<std::size_t>(j)] ^= 1;
            packed ^= std::uint64_t{1} << p;
            for (int k = 0; k < n_; ++k) {
                if (k != j) {
                    s[static_cast<std::size_t>(k)] += sign * at(k, j);
                }
            }
            visit(packed, value);
        }
    }

  private:
    int n_;
    int d_;
    double offset_;
    ValueMode mode_;
    std::vector<double> q_; // row-major n x n, exactly symmetric
};

/// Coefficients of the XOR rewrite
///   f(x) = offset + sum_j q_j x_j - sum_{j<k} Q_{jk} (x_j xor x_k),
/// the term structure the phase encoders act on. m counts the constant term
/// plus every nonzero linear and pair coefficient.
struct RewriteCoefficients {
    std::vector<double> qj;                              // q_j = sum_k Q_{jk}
    double q_empty = 0.0;                                // offset + tr/4 + sum/4
    std::vector<std::pair<std::pair<int, int>, double>> pair_coeffs; // (j,k)->Q_{jk}, j<k, nonzero
    int m = 0;
};

inline RewriteCoefficients rewrite(const QuboProblem &p) {
    RewriteCoefficients rc;
    const int n = p.n();
    rc.qj.assign(static_cast<std::size_t>(n), 0.0);
    double trace = 0.0;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        trace += p.at(j, j);
        for (int k = 0; k < n; ++k) {
            rc.qj[static_cast<std::size_t>(j)] += p.at(j, k);
            total += p.at(j, k);
        }
    }
    rc.q_empty = p.offset() + trace / 4.0 + total / 4.0;
    rc.m = 1;
    for (int j = 0; j < n; ++j) {
        if (rc.qj[static_cast<std::size_t>(j)] != 0.0) {
            ++rc.m;
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            if (p.at(j, k) != 0.0) {
                rc.pair_coeffs.push_back({{j, k}, p.at(j, k)});
                ++rc.m;
            }
        }
    }
    return rc;
}

/// Evaluates the rewrite form directly (test oracle for the identity).
inline double evaluate_rewrite(const QuboProblem &p,
                               const RewriteCoefficients &rc,
                               std::uint64_t x) {
    double acc = p.offset();
    for (int j = 0; j < p.n(); ++j) {
        if (bit_of(x, p.n(), j)) {
            acc += rc.qj[static_cast<std::size_t>(j)];
        }
    }
    for (const auto &[jk, c] : rc.pair_coeffs) {
        if (bit_of(x, p.n(), jk.first) ^ bit_of(x, p.n(), jk.second)) {
            acc -= c;
        }
    }
    return acc;
}

/// Exact histogram of f over all 2^n configurations: sorted distinct values,
/// counts, CDF F(y) = P(f <= y), and the top-fraction threshold driving the
/// adaptive-search analysis.
class ValueDistribution {
  public:
    static ValueDistribution compute(const QuboProblem &p,
                                     int enumeration_cap = 24,
                                     bool keep_configs = false) {
        if (p.n() > enumeration_cap) {
            throw std::invalid_argument(
                "ValueDistribution: n exceeds the enumeration cap");
        }
        std::map<double, std::uint64_t> hist;
        p.enumerate([&](std::uint64_t, double v) { ++hist[v]; });
        ValueDistribution dist;
        dist.n_ = p.n();
        dist.values_.reserve(hist.size());
        dist.counts_.reserve(hist.size());
        for (const auto &[v, c] : hist) {
            dist.values_.push_back(v);
            dist.counts_.push_back(c);
        }
        dist.cum_.resize(dist.counts_.size());
        std::partial_sum(dist.counts_.begin(), dist.counts_.end(),
                         dist.cum_.begin());
        if (keep_configs) {
            dist.configs_.resize(dist.values_.size());
            for (std::size_t c = 0; c < dist.values_.size(); ++c) {
                dist.configs_[c].reserve(dist.counts_[c]);
            }
            p.enumerate([&](std::uint64_t x, double v) {
                dist.configs_[dist.class_of_value(v)].push_back(x);
            });
        }
        return dist;
    }

    int n() const { return n_; }
    std::uint64_t total() const { return std::uint64_t{1} << n_; }
    const std::vector<double> &values() const { return values_; }
    const std::vector<std::uint64_t> &counts() const { return counts_; }
    std::size_t num_classes() const { return values_.size(); }

    double min_value() const { return values_.front(); }
    double max_value() const { return values_.back(); }

    double mean() const {
        double acc = 0.0;
        for (std::size_t c = 0; c < values_.size(); ++c) {
            acc += values_[c] * static_cast<double>(counts_[c]);
        }
        return acc / static_cast<double>(total());
    }

    double variance() const {
        const double mu = mean();
        double acc = 0.0;
        for (std::size_t c = 0; c < values_.size(); ++c) {
            const double dv = values_[c] - mu;
            acc += dv * dv * static_cast<double>(counts_[c]);
        }
        return acc / static_cast<double>(total());
    }

    /// Index of the class holding value v (must be attained).
    std::size_t class_of_value(double v) const {
        const auto it = std::lower_bound(values_.begin(), values_.end(), v);
        if (it == values_.end() || *it != v) {
            throw std::invalid_argument(
                "ValueDistribution: value not attained");
        }
        return static_cast<std::size_t>(it - values_.begin());
    }

    /// Number of configurations with f(x) > y.
    std::uint64_t count_above(double y) const {
        const auto it = std::upper_bound(values_.begin(), values_.end(), y);
        const std::size_t idx = static_cast<std::size_t>(it - values_.begin());
        return total() - (idx == 0 ? 0 : cum_[idx - 1]);
    }

    /// CDF F(y) = P(f <= y).
    double cdf(double y) const {
        return 1.0 - lambda_above(y);
    }

    /// Marked fraction lambda(y) = P(f > y).
    double lambda_above(double y) const {
        return static_cast<double>(count_above(y)) /
               static_cast<double>(total());
    }

    /// Smallest attained value v with |{x : f(x) >= v}| <= eps * 2^n; falls
    /// back to the maximum value when even its class is larger than the
    /// requested fraction (class granularity cannot split ties).
    double top_fraction_threshold(double eps) const {
        const double budget = eps * static_cast<double>(total());
        for (std::size_t c = 0; c < values_.size(); ++c) {
            const std::uint64_t at_or_above =
                total() - (c == 0 ? 0 : cum_[c - 1]);
            if (static_cast<double>(at_or_above) <= budget) {
                return values_[c];
            }
        }
        return values_.back();
    }

    /// Configurations in a class (available when computed with keep_configs).
    const std::vector<std::uint64_t> &configs(std::size_t cls) const {
        if (configs_.empty()) {
            throw std::logic_error(
                "ValueDistribution: configurations were not retained");
        }
        return configs_[cls];
    }
    bool has_configs() const { return !configs_.empty(); }

  private:
    int n_ = 0;
    std::vector<double> values_;        // ascending
    std::vector<std::uint64_t> counts_; // per class
    std::vector<std::uint64_t> cum_;    // prefix sums of counts
    std::vector<std::vector<std::uint64_t>> configs_; // optional, per class
};

/// Simple undirected graph given as an edge list over vertices 0..n-1.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Cut-value QUBO: f(x) = |{(u,v) in E : x_u != x_v}| via the graph
/// Laplacian, offset 0. A 2*ceil(log2 n)-bit value register always suffices
/// since the cut is bounded by |E| <= n^2/2.
inline QuboProblem graph_cut_problem(const Graph &g) {
    if (g.n < 2) {
        throw std::invalid_argument("graph_cut_problem: need >= 2 vertices");
    }
    std::vector<double> q(static_cast<std::size_t>(g.n) * g.n, 0.0);
    std::vector<bool> seen(static_cast<std::size_t>(g.n) * g.n, false);
    for (const auto &[u, v] : g.edges) {
        if (u < 0 || v < 0 || u >= g.n || v >= g.n || u == v) {
            throw std::invalid_argument("graph_cut_problem: bad edge");
        }
        const std::size_t a = static_cast<std::size_t>(std::min(u, v)) * g.n +
                              static_cast<std::size_t>(std::max(u, v));
        if (seen[a]) {
            throw std::invalid_argument("graph_cut_problem: duplicate edge");
        }
        seen[a] = true;
        q[static_cast<std::size_t>(u) * g.n + v] -= 1.0;
        q[static_cast<std::size_t>(v) * g.n + u] -= 1.0;
        q[static_cast<std::size_t>(u) * g.n + u] += 1.0;
        q[static_cast<std::size_t>(v) * g.n + v] += 1.0;
    }
    int lg = 0;
    while ((1 << lg) < g.n) {
        ++lg;
    }
    return QuboProblem(g.n, std::move(q), 0.0, 2 * std::max(lg, 1),
                       ValueMode::integer_values);
}

/// Seeded Erdos-Renyi G(n, p): each pair drawn in lexicographic order from
/// one RNG stream; the whole draw repeats on the same stream until the graph
/// is connected, so (n, p, seed) determines the result.
inline Graph er_graph(int n, double p, std::uint64_t seed) {
    if (n < 2 || p <= 0.0 || p > 1.0) {
        throw std::invalid_argument("er_graph: need n >= 2, p in (0,1]");
    }
    Rng rng(seed);
    for (;;) {
        Graph g;
        g.n = n;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (rng.next_double() < p) {
                    g.edges.push_back({u, v});
                }
            }
        }
        // Connectivity by union-find.
        std::vector<int> root(static_cast<std::size_t>(n));
        std::iota(root.begin(), root.end(), 0);
        const std::function<int(int)> find = [&](int a) {
            while (root[static_cast<std::size_t>(a)] != a) {
                a = root[static_cast<std::size_t>(a)] =
                    root[static_cast<std::size_t>(
                        root[static_cast<std::size_t>(a)])];
            }
            return a;
        };
        int components = n;
        for (const auto &[u, v] : g.edges) {
            const int ru = find(u);
            const int rv = find(v);
            if (ru != rv) {
                root[static_cast<std::size_t>(ru)] = rv;
                --components;
            }
        }
        if (components == 1) {
            return g;
        }
    }
}

} // namespace fpgas
