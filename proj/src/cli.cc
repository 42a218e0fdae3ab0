// Copyright 2026 The qlut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlut/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

namespace qlut {

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw QlutError(ErrorCode::IoError, "cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw QlutError(ErrorCode::IoError, "cannot write " + path);
    }
    out << text;
    out.flush();
    if (!out) {
        throw QlutError(ErrorCode::IoError, "write failed for " + path);
    }
}

nlohmann::json parse_json(const std::string &text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        size_t upto = std::min<size_t>(e.byte ? e.byte - 1 : 0, text.size());
        size_t line = 1 + (size_t)std::count(text.begin(), text.begin() + (std::ptrdiff_t)upto, '\n');
        throw QlutError(ErrorCode::ConfigParse, "line " + std::to_string(line) + ": " + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

LongRangeMode parse_long_range_mode(const std::string &s) {
    if (s == "Fixed") {
        return LongRangeMode::Fixed;
    }
    if (s == "Ghz") {
        return LongRangeMode::Ghz;
    }
    if (s == "Distilled") {
        return LongRangeMode::Distilled;
    }
    throw QlutError(ErrorCode::InvalidParams, "unknown longRangeMode '" + s + "'");
}

nlohmann::json breakdown_json(const FidelityBreakdown &f) {
    nlohmann::json j;
    j["coefficients"] = f.coefficients;
    if (!f.survivalExponents.empty()) {
        j["survivalExponents"] = f.survivalExponents;
    }
    j["total"] = f.total;
    j["idleModeled"] = f.idleModeled;
    return j;
}

}  // namespace

RunConfig parse_config(const std::string &text) {
    nlohmann::json j = parse_json(text);
    RunConfig c;
    try {
        if (!j.is_object()) {
            throw QlutError(ErrorCode::ConfigParse, "config must be a JSON object");
        }
        c.params = j.at("params").get<ArchParams>();
        if (j.contains("rates")) {
            c.rates = j.at("rates").get<ErrorRates>();
        }
        c.table.b = c.params.b;
        if (j.contains("data")) {
            c.table.words = j.at("data").get<std::vector<uint64_t>>();
        } else {
            std::mt19937_64 rng(j.value("dataSeed", uint64_t{1}));
            c.table = DataTable::random(c.params.N, c.params.b, rng);
        }
        c.table.validate(c.params.N);
        c.build.merged_routers = j.value("mergedRouters", false);
        c.build.resets = j.value("resets", true);
        c.distillation = j.value("distillation", false);
        c.longRange = parse_long_range_mode(j.value("longRangeMode", std::string("Fixed")));
        c.schedule.include_distillation_depth = j.value("includeDistillationDepth", false);
        c.schedule.c1 = j.value("c1", 1.0);
        c.decomposition = Decomposition::parse(j.value("decomposition", std::string("t7")));
        c.trials = j.value("trials", uint64_t{1000});
        c.seed = j.value("seed", uint64_t{1});
    } catch (const nlohmann::json::exception &e) {
        throw QlutError(ErrorCode::ConfigParse, e.what());
    }
    return c;
}

RunConfig load_config(const std::string &path) {
    return parse_config(read_file(path));
}

const char *k_rule_name(KRule r) {
    switch (r) {
        case KRule::Zero:
            return "Zero";
        case KRule::QuarterDPrime:
            return "QuarterDPrime";
        case KRule::HalfDPrime:
            return "HalfDPrime";
        case KRule::ThreeQuarterDPrime:
            return "ThreeQuarterDPrime";
        case KRule::FullDPrime:
            return "FullDPrime";
    }
    return "?";
}

KRule parse_k_rule(const std::string &s) {
    for (KRule r : {KRule::Zero, KRule::QuarterDPrime, KRule::HalfDPrime, KRule::ThreeQuarterDPrime,
                    KRule::FullDPrime}) {
        if (s == k_rule_name(r)) {
            return r;
        }
    }
    throw QlutError(ErrorCode::InvalidParams, "unknown kRule '" + s + "'");
}

double k_rule_fraction(KRule r) {
    switch (r) {
        case KRule::Zero:
            return 0;
        case KRule::QuarterDPrime:
            return 0.25;
        case KRule::HalfDPrime:
            return 0.5;
        case KRule::ThreeQuarterDPrime:
            return 0.75;
        case KRule::FullDPrime:
            return 1;
    }
    return 0;
}

const char *metric_name(Metric m) {
    switch (m) {
        case Metric::InfidelityExponent:
            return "InfidelityExponent";
        case Metric::TCountExponent:
            return "TCountExponent";
        case Metric::QubitExponent:
            return "QubitExponent";
        case Metric::DepthExponent:
            return "DepthExponent";
    }
    return "?";
}

Metric parse_metric(const std::string &s) {
    for (Metric m : {Metric::InfidelityExponent, Metric::TCountExponent, Metric::QubitExponent,
                     Metric::DepthExponent}) {
        if (s == metric_name(m)) {
            return m;
        }
    }
    throw QlutError(ErrorCode::InvalidParams, "unknown metric '" + s + "'");
}

SweepSpec parse_sweep_spec(const nlohmann::json &j) {
    SweepSpec s;
    try {
        if (j.contains("nRange")) {
            s.nRange = j.at("nRange").get<std::vector<int>>();
        }
        if (j.contains("dFractions")) {
            s.dFractions = j.at("dFractions").get<std::vector<double>>();
        }
        if (j.contains("dPrimeFractions")) {
            s.dPrimeFractions = j.at("dPrimeFractions").get<std::vector<double>>();
        }
        if (j.contains("kRules")) {
            s.kRules.clear();
            for (const auto &r : j.at("kRules")) {
                s.kRules.push_back(parse_k_rule(r.get<std::string>()));
            }
        }
        if (j.contains("rates")) {
            s.rates = j.at("rates").get<ErrorRates>();
        }
        if (j.contains("metric")) {
            s.metric = parse_metric(j.at("metric").get<std::string>());
        }
    } catch (const nlohmann::json::exception &e) {
        throw QlutError(ErrorCode::ConfigParse, e.what());
    }
    for (int n : s.nRange) {
        if (n < 1 || n > 1000) {
            throw QlutError(ErrorCode::InvalidParams, "n out of range in nRange");
        }
    }
    for (const auto *fr : {&s.dFractions, &s.dPrimeFractions}) {
        for (double f : *fr) {
            if (!(f >= 0 && f <= 1)) {
                throw QlutError(ErrorCode::InvalidParams, "fractions must lie in [0, 1]");
            }
        }
    }
    return s;
}

namespace {

std::optional<double> sweep_cell(const SweepSpec &spec, KRule rule, double df, double dpf) {
    if (df + dpf > 1 + 1e-9) {
        return std::nullopt;
    }
    std::vector<double> sizes, values;
    for (int n : spec.nRange) {
        CostShape s;
        s.n = n;
        s.d = (int)std::floor(df * n + 1e-9);
        s.dPrime = (int)std::floor(dpf * n + 1e-9);
        if (s.d + s.dPrime > n) {
            continue;
        }
        int k = (int)std::floor(k_rule_fraction(rule) * s.dPrime + 1e-9);
        double v = 0;
        try {
            switch (spec.metric) {
                case Metric::InfidelityExponent:
                    v = budgeted_infidelity(s, spec.rates, k).total;
                    break;
                case Metric::TCountExponent:
                    v = t_count_formula(s);
                    break;
                case Metric::QubitExponent:
                    v = qubit_count_formula(s);
                    break;
                case Metric::DepthExponent:
                    v = depth_formula(s);
                    break;
            }
        } catch (const QlutError &) {
            continue;
        }
        if (v > 0 && std::isfinite(v)) {
            sizes.push_back(std::exp2((double)n));
            values.push_back(v);
        }
    }
    if (sizes.size() < 5) {
        return std::nullopt;
    }
    try {
        return fit_exponent(sizes, values).slope;
    } catch (const QlutError &) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<SweepTable> run_sweep(const SweepSpec &spec) {
    std::vector<SweepTable> out;
    for (KRule rule : spec.kRules) {
        SweepTable t;
        t.label = k_rule_name(rule);
        t.rows = spec.dFractions;
        t.cols = spec.dPrimeFractions;
        for (double df : spec.dFractions) {
            std::vector<std::optional<double>> row;
            for (double dpf : spec.dPrimeFractions) {
                row.push_back(sweep_cell(spec, rule, df, dpf));
            }
            t.cells.push_back(row);
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::string emit_csv(const SweepTable &table) {
    std::string s = "d/n";
    for (double c : table.cols) {
        s += "," + fmt(c);
    }
    s += "\n";
    for (size_t i = 0; i < table.rows.size(); i++) {
        s += fmt(table.rows[i]);
        for (const auto &cell : table.cells[i]) {
            s += "," + (cell ? fmt(*cell) : std::string("null"));
        }
        s += "\n";
    }
    return s;
}

SweepTable parse_csv(const std::string &text) {
    SweepTable t;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    auto number = [](const std::string &field) {
        char *end = nullptr;
        double v = std::strtod(field.c_str(), &end);
        if (field.empty() || *end != '\0') {
            throw QlutError(ErrorCode::ConfigParse, "bad CSV number '" + field + "'");
        }
        return v;
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) {
            fields.push_back(f);
        }
        if (header) {
            for (size_t k = 1; k < fields.size(); k++) {
                t.cols.push_back(number(fields[k]));
            }
            header = false;
            continue;
        }
        if (fields.size() != t.cols.size() + 1) {
            throw QlutError(ErrorCode::ConfigParse, "CSV row has the wrong number of fields");
        }
        t.rows.push_back(number(fields[0]));
        std::vector<std::optional<double>> row;
        for (size_t k = 1; k < fields.size(); k++) {
            if (fields[k] == "null") {
                row.push_back(std::nullopt);
            } else {
                row.push_back(number(fields[k]));
            }
        }
        t.cells.push_back(row);
    }
    return t;
}

nlohmann::json sweep_json(const SweepSpec &spec, const std::vector<SweepTable> &tables) {
    nlohmann::json j;
    j["metric"] = metric_name(spec.metric);
    j["nRange"] = spec.nRange;
    j["dFractions"] = spec.dFractions;
    j["dPrimeFractions"] = spec.dPrimeFractions;
    nlohmann::json tabs = nlohmann::json::object();
    for (const auto &t : tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &r : t.cells) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto &c : r) {
                row.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
            }
            rows.push_back(row);
        }
        tabs[t.label] = rows;
    }
    j["tables"] = tabs;
    return j;
}

namespace {

constexpr uint64_t kMaxBuildN = uint64_t{1} << 16;
constexpr uint64_t kMaxSimulateN = 256;

struct Built {
    Circuit circuit;
    GridPlacement placement;
    std::vector<LongRangeLink> links;
    Schedule schedule;
};

Built build_all(const RunConfig &c) {
    Built b;
    b.circuit = build_lookup(c.params, c.table, c.build);
    b.placement = place_htree(b.circuit);
    b.links = classify_links(b.circuit, b.placement, c.distillation);
    annotate_lengths(b.circuit, b.links);
    b.schedule = build_schedule(b.circuit, b.links, c.schedule);
    return b;
}

NoiseModel noise_of(const RunConfig &c) {
    NoiseModel m;
    m.rates = c.rates;
    m.long_range = c.longRange;
    return m;
}

}  // namespace

nlohmann::json run_report(const RunConfig &c) {
    const ArchParams &p = c.params;
    nlohmann::json r;
    r["params"] = p;
    r["specialization"] = specialization_name(specialization(p));
    r["theoremRegime"] = p.theorem_regime();
    r["repetitions"] = p.repetitions();

    CostShape shape = CostShape::of(p);
    nlohmann::json formulas;
    formulas["tCount"] = t_count_formula(shape);
    formulas["tCountPrinted"] = t_count_formula(shape, TCountForm::Printed);
    formulas["qubitCount"] = qubit_count_formula(shape);
    formulas["queryDepth"] = depth_formula(shape);
    r["formulas"] = formulas;

    FidelityBreakdown fid = multi_bit_infidelity(shape, c.rates);
    r["fidelity"] = breakdown_json(fid);
    r["budgetedFidelity"] = breakdown_json(budgeted_infidelity(shape, c.rates, p.longRangeBudgetK));

    if (p.N > kMaxBuildN) {
        r["counts"] = nullptr;
        r["layout"] = nullptr;
        r["schedule"] = nullptr;
        r["simulation"] = nullptr;
        return r;
    }
    Built b = build_all(c);
    ResourceCounts counts = count_resources(b.circuit, c.decomposition);
    nlohmann::json cj;
    cj["tCount"] = counts.tCount;
    cj["qubitCount"] = counts.qubitCount;
    cj["queryDepth"] = counts.queryDepth;
    cj["gateHistogram"] = counts.gateHistogram;
    r["counts"] = cj;
    r["formulas"]["tCountCalibration"] = (double)counts.tCount / formulas["tCount"].get<double>();
    r["formulas"]["qubitCountCalibration"] = (double)counts.qubitCount / formulas["qubitCount"].get<double>();

    if (specialization(p) == Specialization::BucketBrigade) {
        r["bucketBrigadeFidelity"] = breakdown_json(bucket_brigade_infidelity(p.N, c.rates, &b.circuit, &b.schedule));
    }

    int max_m = 0;
    for (const auto &l : b.links) {
        max_m = std::max(max_m, l.m);
    }
    nlohmann::json lj;
    lj["width"] = b.placement.bounds.width();
    lj["height"] = b.placement.bounds.height();
    lj["frameWidth"] = b.placement.frame.width();
    lj["frameHeight"] = b.placement.frame.height();
    lj["area"] = b.placement.area();
    lj["areaPerLocation"] = (double)b.placement.area() / (double)p.N;
    lj["longRangeLinks"] = b.links.size();
    lj["maxM"] = max_m;
    r["layout"] = lj;

    nlohmann::json sj;
    sj["depth"] = b.schedule.totalDepth;
    sj["totalIdle"] = b.schedule.total_idle();
    sj["tau"] = b.schedule.tau;
    r["schedule"] = sj;

    SimOptions opts;
    if (p.N > kMaxSimulateN || b.circuit.num_qubits() > opts.qubit_cap) {
        r["simulation"] = nullptr;
        return r;
    }
    nlohmann::json sim;
    bool correct = true;
    for (uint64_t a = 0; a < p.N; a++) {
        SparseState out = simulate_ideal(b.circuit, basis_input(b.circuit, a), opts);
        correct = correct && success_probability(b.circuit, out, a) > 1 - 1e-9;
    }
    sim["correct"] = correct;
    sim["addressesChecked"] = p.N;
    auto locs = error_locations(b.circuit, b.schedule, b.links, noise_of(c));
    MonteCarloResult mc = monte_carlo_infidelity(b.circuit, locs, c.trials, c.seed, opts);
    sim["monteCarlo"] = {{"trials", mc.trials},
                         {"failures", mc.failures},
                         {"infidelity", mc.infidelity},
                         {"stderr", mc.stderr_},
                         {"seed", c.seed}};
    r["simulation"] = sim;
    return r;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigParse:
        case ErrorCode::IoError:
            return 2;
        case ErrorCode::Internal:
        case ErrorCode::PlacementOverflow:
            return 4;
        default:
            return 3;
    }
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"qlut: quantum lookup table architecture toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    bool distill_depth = false;
    std::string decomposition;
    app.add_flag("--include-distillation-depth", distill_depth, "Add distillation depth to long-range gates");
    app.add_option("--decomposition", decomposition, "T gates per CSWAP/CCNOT")
        ->check(CLI::IsMember({"t7", "t4"}));

    std::string config, out_path, log_path;
    uint64_t trials = 0, seed = 0;
    bool have_seed = false;

    auto *report = app.add_subcommand("report", "Single-instance cost, layout and simulation report");
    report->add_option("--config", config, "JSON config")->required();
    report->add_option("--out", out_path, "Write the report here instead of stdout");

    auto *sweep = app.add_subcommand("sweep", "Exponent tables over (d/n, d'/n)");
    sweep->add_option("--config", config, "JSON sweep spec")->required();
    sweep->add_option("--out", out_path, "Output directory")->required();

    auto *gates = app.add_subcommand("export-gates", "Write the gate list");
    gates->add_option("--config", config, "JSON config")->required();
    gates->add_option("--out", out_path, "Output file")->required();

    auto *layout = app.add_subcommand("export-layout", "Write <out>.json, <out>.links.csv and <out>.grid.txt");
    layout->add_option("--config", config, "JSON config")->required();
    layout->add_option("--out", out_path, "Output path prefix")->required();

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo infidelity");
    simulate->add_option("--config", config, "JSON config")->required();
    simulate->add_option("--trials", trials, "Number of trials");
    simulate->add_option("--seed", seed, "Master seed")->each([&](const std::string &) { have_seed = true; });
    simulate->add_option("--log", log_path, "JSON-lines trial log of trials with events");

    std::vector<std::string> args;
    for (int k = argc - 1; k >= 1; k--) {
        args.emplace_back(argv[k]);
    }
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        auto load = [&]() {
            RunConfig c = load_config(config);
            if (distill_depth) {
                c.schedule.include_distillation_depth = true;
            }
            if (!decomposition.empty()) {
                c.decomposition = Decomposition::parse(decomposition);
            }
            return c;
        };
        if (*report) {
            std::string text = run_report(load()).dump(2) + "\n";
            if (out_path.empty()) {
                out << text;
            } else {
                write_file(out_path, text);
            }
        } else if (*sweep) {
            SweepSpec spec = parse_sweep_spec(parse_json(read_file(config)));
            auto tables = run_sweep(spec);
            std::error_code ec;
            std::filesystem::create_directories(out_path, ec);
            if (ec) {
                throw QlutError(ErrorCode::IoError, "cannot create " + out_path);
            }
            for (const auto &t : tables) {
                write_file(out_path + "/sweep_" + t.label + ".csv", emit_csv(t));
            }
            write_file(out_path + "/sweep.json", sweep_json(spec, tables).dump(2) + "\n");
            out << "wrote " << tables.size() << " tables to " << out_path << "\n";
        } else if (*gates) {
            Built b = build_all(load());
            write_file(out_path, export_gate_list(b.circuit));
        } else if (*layout) {
            RunConfig c = load();
            Built b = build_all(c);
            write_file(out_path + ".json", export_layout_json(b.placement));
            write_file(out_path + ".links.csv", export_links_csv(b.links));
            write_file(out_path + ".grid.txt", export_grid_text(b.circuit, b.placement));
        } else if (*simulate) {
            RunConfig c = load();
            if (trials) {
                c.trials = trials;
            }
            if (have_seed) {
                c.seed = seed;
            }
            Built b = build_all(c);
            auto locs = error_locations(b.circuit, b.schedule, b.links, noise_of(c));
            SimOptions opts;
            if (!log_path.empty()) {
                std::string lines;
                for (uint64_t t = 0; t < c.trials; t++) {
                    TrialResult tr = inject_and_simulate(b.circuit, locs, trial_seed(c.seed, t), opts);
                    if (tr.events.empty()) {
                        continue;
                    }
                    nlohmann::json ev = nlohmann::json::array();
                    for (const auto &e : tr.events) {
                        std::string paulis;
                        for (auto [q, p] : e.paulis) {
                            paulis += std::string(1, p) + std::to_string(q) + " ";
                        }
                        if (!paulis.empty()) {
                            paulis.pop_back();
                        }
                        ev.push_back({{"location", e.location},
                                      {"rate", rate_kind_name(e.rate)},
                                      {"paulis", paulis}});
                    }
                    nlohmann::json line = {{"trial", t}, {"address", tr.address}, {"success", tr.success},
                                           {"events", ev}};
                    lines += line.dump() + "\n";
                }
                write_file(log_path, lines);
            }
            MonteCarloResult mc = monte_carlo_infidelity(b.circuit, locs, c.trials, c.seed, opts);
            nlohmann::json j = {{"trials", mc.trials},   {"failures", mc.failures}, {"infidelity", mc.infidelity},
                                {"stderr", mc.stderr_}, {"seed", c.seed},          {"locations", locs.size()}};
            out << j.dump(2) << "\n";
        }
    } catch (const QlutError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code);
    } catch (const nlohmann::json::exception &e) {
        err << "error: ConfigParse: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: Internal: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

}  // namespace qlut
