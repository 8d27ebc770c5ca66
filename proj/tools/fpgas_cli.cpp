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

/// @file fpgas_cli.cpp
/// Command-line front end for the fpgas library. One binary, six
/// subcommands (encode, simulate, optimize, search, benchmark, resources);
/// every output carries a run manifest, all randomness flows from --seed,
/// and numeric output is printed with 12 significant digits. Exit codes:
/// 0 success, 1 input error, 2 internal invariant violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fpgas/adaptive.hpp"
#include "fpgas/circuit_io.hpp"
#include "fpgas/encoder.hpp"
#include "fpgas/fpgs.hpp"
#include "fpgas/lowering.hpp"
#include "fpgas/manifest.hpp"
#include "fpgas/markov.hpp"
#include "fpgas/qubo.hpp"
#include "fpgas/qubo_io.hpp"
#include "fpgas/resources.hpp"
#include "fpgas/schedule.hpp"
#include "fpgas/statevector.hpp"
#include "fpgas/util.hpp"
#include "fpgas/version.hpp"

namespace {

using nlohmann::json;

/// Rounds to 12 significant digits before JSON serialization so numeric
/// output matches the text formatter used for CSV.
double sig(double v) { return std::stod(fpgas::format_sig(v)); }

/// Writes text to the given path, or to stdout for "-".
void write_text(const std::string &path, const std::string &text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << text;
}

json report_to_json(const fpgas::ResourceReport &r) {
    return json{{"total_depth", r.totalDepth},
                {"rz_depth", r.rzDepth},
                {"rz_count", r.rzCount},
                {"cnot_count", r.cnotCount},
                {"non_clifford_count", r.nonCliffordCount},
                {"qubit_count", r.qubitCount},
                {"max_qubit_degree", r.maxQubitDegree}};
}

/// Accepts either a bare document or one wrapped as {"manifest":..., key:...}
/// (the CLI's own output format round-trips).
json unwrap(const json &doc, const char *key) {
    if (doc.is_object() && doc.contains(key)) {
        return doc[key];
    }
    return doc;
}

json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

/// Parses "lo:hi:step" into a uniform grid.
std::vector<double> parse_range(const std::string &text, const char *flag) {
    std::istringstream ss(text);
    std::string part;
    std::vector<double> v;
    while (std::getline(ss, part, ':')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
        } catch (const std::exception &) {
            throw std::invalid_argument(std::string(flag) +
                                        ": bad number '" + part + "'");
        }
    }
    if (v.size() != 3 || !(v[2] > 0.0) || !(v[0] <= v[1])) {
        throw std::invalid_argument(
            std::string(flag) + ": expected lo:hi:step with lo <= hi and "
                                "step > 0");
    }
    return fpgas::uniform_grid(v[0], v[1], v[2]);
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// encode

struct EncodeArgs {
    std::string quboPath;
    int d = 0; // 0 keeps the file's width
    int lambda = 1;
    bool garbageFree = false;
    std::string emit; // "", "json", "qasm"
    bool report = false;
    std::string out = "-";
    std::uint64_t seed = 0;
};

int run_encode(const EncodeArgs &a) {
    fpgas::QuboProblem p = fpgas::load_qubo(a.quboPath);
    if (a.d > 0) {
        p = p.with_d(a.d);
    }
    fpgas::EncoderConfig cfg;
    cfg.lambdaAncilla = a.lambda;
    cfg.eliminateGarbagePhases = a.garbageFree;
    const fpgas::Circuit c = fpgas::build_encoder(p, cfg);

    const fpgas::RunManifest m = fpgas::make_manifest(
        "encode",
        {{"--qubo", a.quboPath},
         {"--d", std::to_string(p.d())},
         {"--lambda", std::to_string(a.lambda)},
         {"--garbage-free", a.garbageFree ? "true" : "false"},
         {"--emit", a.emit.empty() ? "none" : a.emit},
         {"--report", a.report ? "true" : "false"}},
        a.seed);

    if (a.emit == "qasm") {
        std::ostringstream os;
        fpgas::write_manifest_comments(os, m, "//");
        os << fpgas::to_qasm3(fpgas::lowered_for_export(c));
        write_text(a.out, os.str());
        return 0;
    }
    json doc{{"manifest", fpgas::manifest_to_json(m)}};
    if (a.emit == "json") {
        doc["circuit"] = fpgas::circuit_to_json(c);
    }
    if (a.report || a.emit.empty()) {
        doc["report"] = report_to_json(fpgas::resources(c));
    }
    write_text(a.out, dump(doc));
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string circuitPath;
    std::string markedPath;
    bool reportJson = false;
    std::string out = "-";
    std::uint64_t seed = 0;
};

int run_simulate(const SimulateArgs &a) {
    const fpgas::Circuit c =
        fpgas::circuit_from_json(unwrap(load_json_file(a.circuitPath),
                                        "circuit"));
    const json markedDoc = unwrap(load_json_file(a.markedPath), "marked");
    if (!markedDoc.is_array()) {
        throw std::invalid_argument(a.markedPath +
                                    ": expected a JSON array of marked "
                                    "configurations");
    }
    std::unordered_set<std::uint64_t> marked;
    for (const auto &entry : markedDoc) {
        if (!entry.is_number_unsigned() && !entry.is_number_integer()) {
            throw std::invalid_argument(
                a.markedPath + ": marked entries must be integers >= 0");
        }
        const std::int64_t v = entry.get<std::int64_t>();
        if (v < 0) {
            throw std::invalid_argument(
                a.markedPath + ": marked entries must be integers >= 0");
        }
        marked.insert(static_cast<std::uint64_t>(v));
    }
    const fpgas::SuccessProbability sp = fpgas::success_probability(c, marked);

    const fpgas::RunManifest m = fpgas::make_manifest(
        "simulate",
        {{"--circuit", a.circuitPath},
         {"--marked", a.markedPath},
         {"--report-json", a.reportJson ? "true" : "false"}},
        a.seed);
    if (a.reportJson) {
        write_text(a.out,
                   dump(json{{"manifest", fpgas::manifest_to_json(m)},
                             {"marked_count", marked.size()},
                             {"probability", sig(sp.probability)},
                             {"leakage", sig(sp.leakage)}}));
    } else {
        std::ostringstream os;
        os << "probability = " << fpgas::format_sig(sp.probability) << "\n"
           << "leakage = " << fpgas::format_sig(sp.leakage) << "\n";
        write_text(a.out, os.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// optimize

struct OptimizeArgs {
    std::string mode;
    double lambda = 0.0;
    double delta = 0.4038;
    double alpha = 1.975;
    bool deltaGiven = false;
    bool alphaGiven = false;
    std::string deltaRange = "0.3:0.5:0.004";
    std::string alphaRange = "1.5:2.5:0.01";
    std::string out = "-";
    std::uint64_t seed = 0;
};

int run_optimize(const OptimizeArgs &a) {
    std::vector<std::pair<std::string, std::string>> flags{
        {"--mode", a.mode}, {"--lambda", fpgas::format_sig(a.lambda)}};

    if (a.mode == "known-lambda") {
        const fpgas::KnownLambdaOptimum opt =
            fpgas::optimize_known_lambda(a.lambda);
        const fpgas::RunManifest m =
            fpgas::make_manifest("optimize", flags, a.seed);
        write_text(a.out, dump(json{{"manifest", fpgas::manifest_to_json(m)},
                                    {"mode", a.mode},
                                    {"lambda", sig(a.lambda)},
                                    {"delta", sig(opt.delta)},
                                    {"tau", sig(opt.tau)}}));
        return 0;
    }
    if (a.mode == "schedule") {
        json doc;
        if (a.deltaGiven || a.alphaGiven) {
            // Point evaluation of the query bound at the given schedule.
            const fpgas::ScheduleParams params{a.delta, a.alpha};
            const fpgas::ScheduleBound b =
                fpgas::tau_schedule_bound(params, a.lambda);
            flags.emplace_back("--delta", fpgas::format_sig(a.delta));
            flags.emplace_back("--alpha", fpgas::format_sig(a.alpha));
            doc = json{{"mode", a.mode},          {"lambda", sig(a.lambda)},
                       {"delta", sig(a.delta)},   {"alpha", sig(a.alpha)},
                       {"tau", sig(b.bound)},     {"s0", b.s0},
                       {"head", sig(b.head)},     {"tail", sig(b.tail)}};
        } else {
            // No point given: minimize the bound over the reference box.
            const fpgas::ScheduleOptimum opt =
                fpgas::optimized_schedule_min(a.lambda);
            doc = json{{"mode", a.mode},
                       {"lambda", sig(a.lambda)},
                       {"delta", sig(opt.delta)},
                       {"alpha", sig(opt.alpha)},
                       {"tau", sig(opt.tau)}};
        }
        const fpgas::RunManifest m =
            fpgas::make_manifest("optimize", flags, a.seed);
        doc["manifest"] = fpgas::manifest_to_json(m);
        write_text(a.out, dump(doc));
        return 0;
    }
    if (a.mode == "portrait") {
        const std::vector<double> deltas =
            parse_range(a.deltaRange, "--delta-range");
        const std::vector<double> alphas =
            parse_range(a.alphaRange, "--alpha-range");
        flags.emplace_back("--delta-range", a.deltaRange);
        flags.emplace_back("--alpha-range", a.alphaRange);
        const fpgas::PhasePortrait pp =
            fpgas::phase_portrait(deltas, alphas, a.lambda);

        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            for (std::size_t j = 0; j < alphas.size(); ++j) {
                const double t = pp.at(i, j);
                if (!std::isnan(t) && t < best) {
                    best = t;
                    bi = i;
                    bj = j;
                }
            }
        }
        const fpgas::RunManifest m =
            fpgas::make_manifest("optimize", flags, a.seed);
        std::ostringstream os;
        fpgas::write_manifest_comments(os, m, "#");
        if (best < std::numeric_limits<double>::infinity()) {
            os << "# min tau = " << fpgas::format_sig(best) << " at delta="
               << fpgas::format_sig(deltas[bi]) << " alpha="
               << fpgas::format_sig(alphas[bj]) << "\n";
        }
        fpgas::write_portrait_csv(os, pp);
        write_text(a.out, os.str());
        return 0;
    }
    throw std::invalid_argument("optimize: unknown --mode '" + a.mode + "'");
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
    std::string quboPath;
    double delta = 0.4038;
    double alpha = 1.975;
    std::optional<std::int64_t> maxQueries;
    std::optional<int> maxRounds;
    std::optional<double> target;
    std::uint64_t seed = 0;
    int trials = 1;
    std::string backend = "model";
    bool warmStart = false;
    bool resetOnSuccess = false;
    std::string out = "-";
};

json round_to_json(const fpgas::SearchRound &r) {
    return json{{"queries", r.queries},
                {"x", r.sampleX},
                {"value", sig(r.sampleValue)},
                {"accepted", r.accepted},
                {"warmup", r.warmup}};
}

int run_search(const SearchArgs &a) {
    if (a.trials < 1) {
        throw std::invalid_argument("search: --trials must be >= 1");
    }
    const fpgas::QuboProblem p = fpgas::load_qubo(a.quboPath);
    const fpgas::ScheduleParams params{a.delta, a.alpha};
    fpgas::StoppingCondition stop{a.maxQueries, a.maxRounds, a.target};
    const fpgas::SearchBackend backend =
        a.backend == "sim" ? fpgas::SearchBackend::simulation
                           : fpgas::SearchBackend::model;
    fpgas::SearchOptions options;
    options.warmStart = a.warmStart;
    options.resetOnSuccess = a.resetOnSuccess;

    // Share one configuration-keeping distribution across model trials.
    fpgas::ValueDistribution dist;
    const fpgas::ValueDistribution *distPtr = nullptr;
    if (backend == fpgas::SearchBackend::model) {
        dist = fpgas::ValueDistribution::compute(p, 24, true);
        distPtr = &dist;
    }

    std::vector<std::pair<std::string, std::string>> flags{
        {"--qubo", a.quboPath},
        {"--delta", fpgas::format_sig(a.delta)},
        {"--alpha", fpgas::format_sig(a.alpha)}};
    if (a.maxQueries) {
        flags.emplace_back("--max-queries", std::to_string(*a.maxQueries));
    }
    if (a.maxRounds) {
        flags.emplace_back("--max-rounds", std::to_string(*a.maxRounds));
    }
    if (a.target) {
        flags.emplace_back("--target", fpgas::format_sig(*a.target));
    }
    flags.emplace_back("--trials", std::to_string(a.trials));
    flags.emplace_back("--backend", a.backend);
    flags.emplace_back("--warm-start", a.warmStart ? "true" : "false");
    flags.emplace_back("--reset-on-success",
                       a.resetOnSuccess ? "true" : "false");
    const fpgas::RunManifest m = fpgas::make_manifest("search", flags, a.seed);

    json trialsOut = json::array();
    for (int t = 0; t < a.trials; ++t) {
        const fpgas::SearchState s =
            fpgas::run_fpgas(p, stop, params, backend, a.seed + t, options,
                             distPtr);
        json roundsOut = json::array();
        for (const fpgas::SearchRound &r : s.rounds) {
            roundsOut.push_back(round_to_json(r));
        }
        trialsOut.push_back(json{
            {"seed", s.rngSeed},
            {"initial", json{{"x", s.initialX}, {"value", sig(s.initialValue)}}},
            {"best", json{{"x", s.bestX}, {"value", sig(s.bestValue)}}},
            {"queries", s.tElapsed},
            {"rounds", roundsOut}});
    }
    write_text(a.out, dump(json{{"manifest", fpgas::manifest_to_json(m)},
                                {"backend", a.backend},
                                {"n", p.n()},
                                {"trials", trialsOut}}));
    return 0;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkArgs {
    std::string graphPath;
    std::string quboPath;
    int rounds = 4;
    double delta = 0.4038;
    double alpha = 1.975;
    double gasGrowth = 1.2;
    std::string out = "-";
    std::uint64_t seed = 0;
};

int run_benchmark(const BenchmarkArgs &a) {
    if (a.graphPath.empty() == a.quboPath.empty()) {
        throw std::invalid_argument(
            "benchmark: give exactly one of --graph or --qubo");
    }
    const fpgas::QuboProblem p =
        a.graphPath.empty()
            ? fpgas::load_qubo(a.quboPath)
            : fpgas::graph_cut_problem(fpgas::load_graph(a.graphPath));
    const fpgas::ScheduleParams params{a.delta, a.alpha};
    const fpgas::BenchmarkReport report =
        fpgas::benchmark(p, a.rounds, params, a.gasGrowth);

    std::vector<std::pair<std::string, std::string>> flags;
    if (!a.graphPath.empty()) {
        flags.emplace_back("--graph", a.graphPath);
    } else {
        flags.emplace_back("--qubo", a.quboPath);
    }
    flags.emplace_back("--rounds", std::to_string(a.rounds));
    flags.emplace_back("--delta", fpgas::format_sig(a.delta));
    flags.emplace_back("--alpha", fpgas::format_sig(a.alpha));
    flags.emplace_back("--gas-growth", fpgas::format_sig(a.gasGrowth));
    const fpgas::RunManifest m =
        fpgas::make_manifest("benchmark", flags, a.seed);

    std::ostringstream os;
    fpgas::write_manifest_comments(os, m, "#");
    os << "# uniform: expected-pct=" << fpgas::format_sig(report.uniformExpectedPct)
       << " stddev-pct=" << fpgas::format_sig(report.uniformStdDevPct)
       << " top-probability=" << fpgas::format_sig(report.uniformTopProbability)
       << "\n";
    const auto summary = [&os](const char *name,
                               const fpgas::MethodReport &mr) {
        os << "# " << name << ": total-queries=" << mr.totalQueries
           << " expected-pct=" << fpgas::format_sig(mr.expectedPct)
           << " stddev-pct=" << fpgas::format_sig(mr.stdDevPct)
           << " top-amplification=" << fpgas::format_sig(mr.topAmplification)
           << "\n";
    };
    summary("fpgs", report.fpgs);
    summary("gas", report.gas);
    fpgas::write_benchmark_csv(os, report);
    write_text(a.out, os.str());
    return 0;
}

// ---------------------------------------------------------------------------
// resources

struct ResourcesArgs {
    std::string circuitPath;
    std::string quboPath;
    int d = 0;
    int lambda = 1;
    bool garbageFree = false;
    std::string out = "-";
    std::uint64_t seed = 0;
};

int run_resources(const ResourcesArgs &a) {
    if (a.circuitPath.empty() == a.quboPath.empty()) {
        throw std::invalid_argument(
            "resources: give exactly one of --circuit or --qubo");
    }
    std::vector<std::pair<std::string, std::string>> flags;
    fpgas::ResourceReport report;
    if (!a.circuitPath.empty()) {
        const fpgas::Circuit c = fpgas::circuit_from_json(
            unwrap(load_json_file(a.circuitPath), "circuit"));
        report = fpgas::resources(c);
        flags.emplace_back("--circuit", a.circuitPath);
    } else {
        fpgas::QuboProblem p = fpgas::load_qubo(a.quboPath);
        if (a.d > 0) {
            p = p.with_d(a.d);
        }
        fpgas::EncoderConfig cfg;
        cfg.lambdaAncilla = a.lambda;
        cfg.eliminateGarbagePhases = a.garbageFree;
        report = fpgas::resources(fpgas::build_encoder(p, cfg));
        flags.emplace_back("--qubo", a.quboPath);
        flags.emplace_back("--d", std::to_string(p.d()));
        flags.emplace_back("--lambda", std::to_string(a.lambda));
        flags.emplace_back("--garbage-free", a.garbageFree ? "true" : "false");
    }
    const fpgas::RunManifest m =
        fpgas::make_manifest("resources", flags, a.seed);
    write_text(a.out, dump(json{{"manifest", fpgas::manifest_to_json(m)},
                                {"report", report_to_json(report)}}));
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"fpgas: QUBO-to-circuit compiler and fixed-point Grover "
                 "search toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fpgas::kVersion);

    EncodeArgs enc;
    CLI::App *encCmd = app.add_subcommand(
        "encode", "Compile a QUBO into a quantum dictionary encoder");
    encCmd->add_option("--qubo", enc.quboPath, "QUBO instance (JSON)")
        ->required();
    encCmd->add_option("--d", enc.d, "value-register width override");
    encCmd->add_option("--lambda", enc.lambda,
                       "terms phased in parallel per batch (1..m)");
    encCmd->add_flag("--garbage-free", enc.garbageFree,
                     "cancel garbage phases on the input register");
    encCmd->add_option("--emit", enc.emit, "emit the circuit itself")
        ->check(CLI::IsMember({"json", "qasm"}));
    encCmd->add_flag("--report", enc.report,
                     "include the resource report (default when --emit is "
                     "not given)");
    encCmd->add_option("--out", enc.out, "output file ('-' = stdout)");
    encCmd->add_option("--seed", enc.seed, "run seed (recorded)");

    SimulateArgs simArgs;
    CLI::App *simCmd = app.add_subcommand(
        "simulate", "Exact statevector run reporting marked-state mass");
    simCmd->add_option("--circuit", simArgs.circuitPath, "circuit JSON file")
        ->required();
    simCmd->add_option("--marked", simArgs.markedPath,
                       "JSON array of marked configurations")
        ->required();
    simCmd->add_flag("--report-json", simArgs.reportJson,
                     "emit a JSON report instead of plain text");
    simCmd->add_option("--out", simArgs.out, "output file ('-' = stdout)");
    simCmd->add_option("--seed", simArgs.seed, "run seed (recorded)");

    OptimizeArgs opt;
    CLI::App *optCmd = app.add_subcommand(
        "optimize", "Query-count optimization for fixed-point schedules");
    optCmd
        ->add_option("--mode", opt.mode,
                     "known-lambda, schedule, or portrait")
        ->required()
        ->check(CLI::IsMember({"known-lambda", "schedule", "portrait"}));
    optCmd->add_option("--lambda", opt.lambda, "marked fraction")->required();
    CLI::Option *optDelta =
        optCmd->add_option("--delta", opt.delta, "contraction parameter");
    CLI::Option *optAlpha =
        optCmd->add_option("--alpha", opt.alpha, "schedule growth factor");
    optCmd->add_option("--delta-range", opt.deltaRange,
                       "portrait delta grid lo:hi:step");
    optCmd->add_option("--alpha-range", opt.alphaRange,
                       "portrait alpha grid lo:hi:step");
    optCmd->add_option("--out", opt.out, "output file ('-' = stdout)");
    optCmd->add_option("--seed", opt.seed, "run seed (recorded)");

    SearchArgs sea;
    CLI::App *seaCmd = app.add_subcommand(
        "search", "Adaptive fixed-point search on a QUBO instance");
    seaCmd->add_option("--qubo", sea.quboPath, "QUBO instance (JSON)")
        ->required();
    seaCmd->add_option("--delta", sea.delta, "contraction parameter");
    seaCmd->add_option("--alpha", sea.alpha, "schedule growth factor");
    std::int64_t seaMaxQueries = 0;
    int seaMaxRounds = 0;
    double seaTarget = 0.0;
    CLI::Option *oq = seaCmd->add_option("--max-queries", seaMaxQueries,
                                         "stop after this many queries");
    CLI::Option *orr = seaCmd->add_option("--max-rounds", seaMaxRounds,
                                          "stop after this many rounds");
    CLI::Option *ot = seaCmd->add_option("--target", seaTarget,
                                         "stop once this value is reached");
    seaCmd->add_option("--seed", sea.seed, "base RNG seed (trial t uses "
                                           "seed + t)");
    seaCmd->add_option("--trials", sea.trials, "independent repetitions");
    seaCmd->add_option("--backend", sea.backend, "sim or model")
        ->check(CLI::IsMember({"sim", "model"}));
    seaCmd->add_flag("--warm-start", sea.warmStart,
                     "spend ceil(log2(n)^2) classical draws first");
    seaCmd->add_flag("--reset-on-success", sea.resetOnSuccess,
                     "restart the budget at l = 1 after each improvement");
    seaCmd->add_option("--out", sea.out, "output file ('-' = stdout)");

    BenchmarkArgs ben;
    CLI::App *benCmd = app.add_subcommand(
        "benchmark",
        "Exact chain comparison: fixed-point vs classic adaptive search");
    benCmd->add_option("--graph", ben.graphPath,
                       "max-cut graph (edge-list file)");
    benCmd->add_option("--qubo", ben.quboPath, "QUBO instance (JSON)");
    benCmd->add_option("--rounds", ben.rounds, "threshold-update rounds");
    benCmd->add_option("--delta", ben.delta, "fixed-point contraction");
    benCmd->add_option("--alpha", ben.alpha, "fixed-point growth factor");
    benCmd->add_option("--gas-growth", ben.gasGrowth,
                       "classic-schedule growth factor");
    benCmd->add_option("--out", ben.out, "output file ('-' = stdout)");
    benCmd->add_option("--seed", ben.seed, "run seed (recorded)");

    ResourcesArgs res;
    CLI::App *resCmd = app.add_subcommand(
        "resources", "Resource report for a circuit or encoder");
    resCmd->add_option("--circuit", res.circuitPath, "circuit JSON file");
    resCmd->add_option("--qubo", res.quboPath, "QUBO instance (JSON)");
    resCmd->add_option("--d", res.d, "value-register width override");
    resCmd->add_option("--lambda", res.lambda,
                       "terms phased in parallel per batch (1..m)");
    resCmd->add_flag("--garbage-free", res.garbageFree,
                     "cancel garbage phases on the input register");
    resCmd->add_option("--out", res.out, "output file ('-' = stdout)");
    resCmd->add_option("--seed", res.seed, "run seed (recorded)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*encCmd) {
            return run_encode(enc);
        }
        if (*simCmd) {
            return run_simulate(simArgs);
        }
        if (*optCmd) {
            opt.deltaGiven = optDelta->count() > 0;
            opt.alphaGiven = optAlpha->count() > 0;
            return run_optimize(opt);
        }
        if (*seaCmd) {
            if (oq->count() > 0) {
                sea.maxQueries = seaMaxQueries;
            }
            if (orr->count() > 0) {
                sea.maxRounds = seaMaxRounds;
            }
            if (ot->count() > 0) {
                sea.target = seaTarget;
            }
            return run_search(sea);
        }
        if (*benCmd) {
            return run_benchmark(ben);
        }
        if (*resCmd) {
            return run_resources(res);
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2; // unreachable: require_subcommand guarantees a dispatch
}
