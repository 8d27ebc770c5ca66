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

/// @file manifest.hpp
/// Run manifest attached to every CLI output: the subcommand, the full flag
/// set, the seed, the library version, and a timestamp. Rerunning a command
/// with the same flags reproduces the output byte for byte except for the
/// timestamp field, so the manifest doubles as a replay recipe.
#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpgas/version.hpp"

namespace fpgas {

/// Provenance record for one CLI invocation.
struct RunManifest {
    std::string subcommand;
    /// Flag/value pairs in the order given on the command line; boolean
    /// switches carry "true".
    std::vector<std::pair<std::string, std::string>> flags;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    /// ISO-8601 UTC creation time. The only field allowed to differ between
    /// two runs of the same command line.
    std::string timestamp;
};

/// Current time as an ISO-8601 UTC string (e.g. "2026-02-14T09:30:00Z").
inline std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
#if defined(_WIN32)
    gmtime_s(&tm, &now);
#else
    gmtime_r(&now, &tm);
#endif
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Builds a manifest stamped with the library version and the current time.
inline RunManifest make_manifest(
    std::string subcommand,
    std::vector<std::pair<std::string, std::string>> flags,
    std::uint64_t seed) {
    RunManifest m;
    m.subcommand = std::move(subcommand);
    m.flags = std::move(flags);
    m.seed = seed;
    m.timestamp = utc_timestamp();
    return m;
}

/// JSON form, embedded as the "manifest" member of JSON outputs.
inline nlohmann::json manifest_to_json(const RunManifest &m) {
    nlohmann::json flags = nlohmann::json::object();
    for (const auto &[key, value] : m.flags) {
        flags[key] = value;
    }
    return nlohmann::json{{"subcommand", m.subcommand},
                          {"flags", flags},
                          {"seed", m.seed},
                          {"version", m.version},
                          {"timestamp", m.timestamp}};
}

/// Comment-line form, prepended to CSV and QASM outputs. Every line starts
/// with the given prefix ("#" for CSV, "//" for QASM).
inline void write_manifest_comments(std::ostream &os, const RunManifest &m,
                                    const std::string &prefix) {
    os << prefix << " fpgas " << m.version << " " << m.subcommand;
    for (const auto &[key, value] : m.flags) {
        os << " " << key << "=" << value;
    }
    os << "\n";
    os << prefix << " seed=" << m.seed << " timestamp=" << m.timestamp
       << "\n";
}

} // namespace fpgas
