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

/// @file qubo_io.hpp
/// File formats for problem inputs: a JSON schema for QUBO instances and a
/// plain-text edge list for graphs (see docs/formats.md). Schema errors
/// throw std::invalid_argument; unreadable files throw std::runtime_error.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpgas/qubo.hpp"

namespace fpgas {

/// Parses a QUBO instance from its JSON form:
///
///   {"n": 5, "d": 4, "offset": 0.0, "mode": "integer",
///    "matrix": [2, -1, ...]}   // row-major n*n entries
///
/// "mode" is optional and defaults to "integer"; "offset" defaults to 0.
inline QuboProblem qubo_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("qubo json: expected an object");
    }
    for (const char *key : {"n", "d", "matrix"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(
                std::string("qubo json: missing required member \"") + key +
                "\"");
        }
    }
    if (!j["n"].is_number_integer() || !j["d"].is_number_integer()) {
        throw std::invalid_argument("qubo json: \"n\" and \"d\" must be "
                                    "integers");
    }
    const int n = j["n"].get<int>();
    const int d = j["d"].get<int>();
    if (!j["matrix"].is_array()) {
        throw std::invalid_argument("qubo json: \"matrix\" must be an array");
    }
    std::vector<double> matrix;
    matrix.reserve(j["matrix"].size());
    for (const auto &entry : j["matrix"]) {
        if (!entry.is_number()) {
            throw std::invalid_argument(
                "qubo json: \"matrix\" entries must be numbers");
        }
        matrix.push_back(entry.get<double>());
    }
    if (n > 0 && matrix.size() != static_cast<std::size_t>(n) *
                                      static_cast<std::size_t>(n)) {
        throw std::invalid_argument(
            "qubo json: \"matrix\" must hold n*n row-major entries");
    }
    const double offset = j.value("offset", 0.0);
    ValueMode mode = ValueMode::integer_values;
    if (j.contains("mode")) {
        const std::string s = j["mode"].get<std::string>();
        if (s == "integer") {
            mode = ValueMode::integer_values;
        } else if (s == "real") {
            mode = ValueMode::real_values;
        } else {
            throw std::invalid_argument(
                "qubo json: \"mode\" must be \"integer\" or \"real\"");
        }
    }
    return QuboProblem(n, std::move(matrix), offset, d, mode);
}

/// Inverse of qubo_from_json (matrix in the symmetrized internal form).
inline nlohmann::json qubo_to_json(const QuboProblem &p) {
    return nlohmann::json{
        {"n", p.n()},
        {"d", p.d()},
        {"offset", p.offset()},
        {"mode",
         p.mode() == ValueMode::integer_values ? "integer" : "real"},
        {"matrix", p.matrix()}};
}

/// Loads a QUBO instance from a JSON file.
inline QuboProblem load_qubo(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open qubo file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return qubo_from_json(j);
}

/// Parses a graph from edge-list text: `#` starts a comment, the first data
/// line is the vertex count, and every following data line is one
/// space-separated `u v` edge over vertices 0..n-1.
inline Graph read_edge_list(std::istream &is) {
    Graph g;
    bool haveCount = false;
    std::string line;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        if (!haveCount) {
            int n = 0;
            if (!(fields >> n)) {
                continue; // blank or pure-comment line before the count
            }
            int extra = 0;
            if (fields >> extra) {
                throw std::invalid_argument(
                    "edge list line " + std::to_string(lineNo) +
                    ": the first data line must hold the vertex count only");
            }
            g.n = n;
            haveCount = true;
            continue;
        }
        int u = 0;
        int v = 0;
        if (!(fields >> u)) {
            continue; // blank or pure-comment line
        }
        int extra = 0;
        if (!(fields >> v) || (fields >> extra)) {
            throw std::invalid_argument(
                "edge list line " + std::to_string(lineNo) +
                ": expected exactly two vertex indices");
        }
        g.edges.emplace_back(u, v);
    }
    if (!haveCount) {
        throw std::invalid_argument("edge list: missing vertex-count line");
    }
    return g;
}

/// Loads a graph from an edge-list file.
inline Graph load_graph(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file: " + path);
    }
    return read_edge_list(in);
}

} // namespace fpgas
