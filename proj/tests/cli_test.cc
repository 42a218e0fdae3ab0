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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qlut/cli.h"

using namespace qlut;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path &path, const std::string &text) {
    std::ofstream out(path);
    out << text;
}

fs::path scratch(const std::string &name) {
    fs::path dir = fs::temp_directory_path() / ("qlut_cli_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qlut");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run_cli((int)argv.size(), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

/// Exit status of the real binary; -1 when the binary is not available.
int run_binary(const std::string &args) {
    const char *bin = std::getenv("QLUT_CLI_BIN");
    if (bin == nullptr) {
        return -1;
    }
    int status = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char *kUnified16 = R"({"params": {"N": 16, "lambda": 4, "gamma": 2},
  "rates": {"epsI":1e-3,"epsQ":1e-3,"epsL":1e-3,"epsS":1e-3,"epsCS":1e-3,"epsC":1e-3,"epsCC":1e-3},
  "trials": 200})";

// Only the first word set, as in the frozen schedule values.
const char *kBB16 = R"({"params": {"N": 16, "lambda": 16, "gamma": 1},
  "data": [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]})";

std::string data(const std::string &name) {
    return std::string(QLUT_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST(parse_config, malformed_json_reports_line) {
    try {
        parse_config("{\n  \"params\": {\"N\": 16,\n  oops\n}");
        FAIL() << "expected ConfigParse";
    } catch (const QlutError &e) {
        EXPECT_EQ(e.code, ErrorCode::ConfigParse);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(parse_config, defaults_and_fields) {
    RunConfig c = parse_config(kUnified16);
    EXPECT_EQ(c.params.N, 16u);
    EXPECT_EQ(c.params.lambda, 4u);
    EXPECT_EQ(c.params.gamma, 2u);
    EXPECT_EQ(c.trials, 200u);
    EXPECT_EQ(c.seed, 1u);
    EXPECT_EQ(c.table.words.size(), 16u);
    EXPECT_EQ(parse_config(kUnified16).table, c.table);
}

TEST(parse_config, invalid_params) {
    try {
        parse_config(R"({"params": {"N": 12, "lambda": 4, "gamma": 2}})");
        FAIL() << "expected a validation error";
    } catch (const QlutError &e) {
        EXPECT_EQ(exit_code_for(e.code), 3);
    }
}

TEST(report, unified_instance) {
    nlohmann::json r = run_report(parse_config(kUnified16));
    EXPECT_EQ(r["repetitions"], 4);
    EXPECT_EQ(r["counts"]["tCount"], 196);
    EXPECT_EQ(r["counts"]["qubitCount"], 20);
    EXPECT_EQ(r["schedule"]["tau"], nlohmann::json::array({2, 6}));
    EXPECT_TRUE(r["simulation"]["correct"].get<bool>());
    EXPECT_EQ(r["simulation"]["monteCarlo"]["trials"], 200);
}

TEST(report, bucket_brigade_instance) {
    nlohmann::json r = run_report(parse_config(kBB16));
    EXPECT_EQ(r["specialization"], "BucketBrigade");
    EXPECT_EQ(r["schedule"]["depth"], 52);
    EXPECT_TRUE(r.contains("bucketBrigadeFidelity"));
    EXPECT_EQ(r["layout"]["frameWidth"], 17);
    EXPECT_EQ(r["layout"]["frameHeight"], 10);
}

TEST(report, large_instance_skips_construction) {
    nlohmann::json r = run_report(parse_config(R"({"params": {"N": 1048576, "lambda": 1024, "gamma": 32}, "rates": {"epsI": 1e-4}})"));
    EXPECT_TRUE(r["counts"].is_null());
    EXPECT_TRUE(r["simulation"].is_null());
    EXPECT_GT(r["fidelity"]["total"].get<double>(), 0);
}

TEST(cli, report_to_stdout_and_file) {
    fs::path dir = scratch("report");
    spit(dir / "c.json", kUnified16);
    CliResult a = invoke({"report", "--config", (dir / "c.json").string()});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(nlohmann::json::parse(a.out)["repetitions"], 4);
    CliResult b = invoke({"report", "--config", (dir / "c.json").string(), "--out", (dir / "r.json").string()});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "r.json")), nlohmann::json::parse(a.out));
}

TEST(cli, decomposition_flag_changes_t_count) {
    fs::path dir = scratch("decomp");
    spit(dir / "c.json", kUnified16);
    CliResult t7 = invoke({"report", "--config", (dir / "c.json").string()});
    CliResult t4 = invoke({"--decomposition", "t4", "report", "--config", (dir / "c.json").string()});
    ASSERT_EQ(t7.code, 0) << t7.err;
    ASSERT_EQ(t4.code, 0) << t4.err;
    EXPECT_EQ(nlohmann::json::parse(t7.out)["counts"]["tCount"], 196);
    EXPECT_EQ(nlohmann::json::parse(t4.out)["counts"]["tCount"], 112);
    EXPECT_EQ(invoke({"--decomposition", "t9", "report", "--config", (dir / "c.json").string()}).code, 2);
}

TEST(cli, distillation_depth_flag_changes_depth) {
    fs::path dir = scratch("distill");
    spit(dir / "c.json", kBB16);
    CliResult plain = invoke({"report", "--config", (dir / "c.json").string()});
    CliResult deep = invoke({"--include-distillation-depth", "report", "--config", (dir / "c.json").string()});
    ASSERT_EQ(plain.code, 0) << plain.err;
    ASSERT_EQ(deep.code, 0) << deep.err;
    EXPECT_EQ(nlohmann::json::parse(plain.out)["schedule"]["depth"], 52);
    EXPECT_EQ(nlohmann::json::parse(deep.out)["schedule"]["depth"], 68);
}

TEST(cli, error_exit_codes) {
    fs::path dir = scratch("errors");
    spit(dir / "bad.json", "{\n\"params\": [\n");
    spit(dir / "n12.json", R"({"params": {"N": 12, "lambda": 4, "gamma": 2}})");
    spit(dir / "ok.json", kUnified16);

    CliResult bad = invoke({"report", "--config", (dir / "bad.json").string()});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("line"), std::string::npos) << bad.err;
    EXPECT_EQ(invoke({"report", "--config", (dir / "n12.json").string()}).code, 3);
    EXPECT_EQ(invoke({"report", "--config", (dir / "missing.json").string()}).code, 2);
    EXPECT_EQ(invoke({"bogus"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"export-gates", "--config", (dir / "ok.json").string(), "--out",
                   (dir / "no_such_dir" / "g.txt").string()})
                  .code,
              2);
}

TEST(cli, binary_exit_codes) {
    fs::path dir = scratch("binary");
    spit(dir / "bad.json", "{ nope");
    spit(dir / "n12.json", R"({"params": {"N": 12, "lambda": 4, "gamma": 2}})");
    spit(dir / "ok.json", kUnified16);
    if (run_binary("--help") < 0) {
        GTEST_SKIP() << "QLUT_CLI_BIN not set";
    }
    EXPECT_EQ(run_binary("report --config " + (dir / "ok.json").string()), 0);
    EXPECT_EQ(run_binary("report --config " + (dir / "bad.json").string()), 2);
    EXPECT_EQ(run_binary("report --config " + (dir / "n12.json").string()), 3);
    EXPECT_EQ(run_binary("report --config " + (dir / "missing.json").string()), 2);
    EXPECT_EQ(run_binary("frobnicate"), 2);
    EXPECT_EQ(run_binary("report --config " + (dir / "ok.json").string() + " --out /proc/nope/r.json"), 2);
}

TEST(cli, export_gates_toy_matches_golden) {
    fs::path dir = scratch("gates");
    CliResult r = invoke({"export-gates", "--config", data("toy_n2.json"), "--out", (dir / "g.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(dir / "g.txt"), slurp(data("toy_n2_gates.txt")));
}

TEST(cli, export_layout_matches_fixture) {
    fs::path dir = scratch("layout");
    spit(dir / "c.json", kBB16);
    CliResult r = invoke({"export-layout", "--config", (dir / "c.json").string(), "--out", (dir / "l").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "l.json")), nlohmann::json::parse(slurp(data("htree_n16_bb.json"))));
    EXPECT_TRUE(fs::exists(dir / "l.links.csv"));
    std::string grid = slurp(dir / "l.grid.txt");
    EXPECT_EQ(std::count(grid.begin(), grid.end(), '\n'), 10);
}

TEST(cli, simulate_is_deterministic_and_logs) {
    fs::path dir = scratch("simulate");
    std::string cfg = data("toy_n2.json");
    CliResult a = invoke({"simulate", "--config", cfg, "--seed", "11", "--trials", "3000"});
    CliResult b = invoke({"simulate", "--config", cfg, "--seed", "11", "--trials", "3000", "--log",
                 (dir / "t.jsonl").string()});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    nlohmann::json ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    EXPECT_EQ(ja, jb);
    EXPECT_EQ(ja["trials"], 3000);
    EXPECT_EQ(ja["seed"], 11);

    std::ifstream log(dir / "t.jsonl");
    std::string line;
    size_t lines = 0, failures = 0;
    while (std::getline(log, line)) {
        nlohmann::json t = nlohmann::json::parse(line);
        EXPECT_FALSE(t["events"].empty());
        EXPECT_LT(t["trial"].get<uint64_t>(), 3000u);
        failures += t["success"].get<bool>() ? 0 : 1;
        lines++;
    }
    EXPECT_GT(lines, 0u);
    EXPECT_EQ(failures, ja["failures"].get<size_t>());

    // Config seed is used when no flag is given.
    CliResult c = invoke({"simulate", "--config", cfg});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(nlohmann::json::parse(c.out)["seed"], 7);
}

TEST(sweep, csv_round_trip) {
    SweepTable t;
    t.label = "";
    t.rows = {0, 0.5, 1};
    t.cols = {0, 0.5, 1};
    t.cells = {{0.1, 0.2, 1.0 / 3}, {0.4, 0.5, std::nullopt}, {0.7, std::nullopt, std::nullopt}};
    EXPECT_EQ(parse_csv(emit_csv(t)), t);
}

class SweepFiles : public ::testing::Test {
   protected:
    static void SetUpTestSuite() {
        dir_ = scratch("sweep");
        spit(dir_ / "s.json", "{}");
        CliResult r = invoke({"sweep", "--config", (dir_ / "s.json").string(), "--out", (dir_ / "out").string()});
        ASSERT_EQ(r.code, 0) << r.err;
    }

    static SweepTable table(const std::string &rule) {
        return parse_csv(slurp(dir_ / "out" / ("sweep_" + rule + ".csv")));
    }

    static fs::path dir_;
};

fs::path SweepFiles::dir_;

TEST_F(SweepFiles, writes_every_rule) {
    for (const char *rule : {"Zero", "QuarterDPrime", "HalfDPrime", "ThreeQuarterDPrime", "FullDPrime"}) {
        fs::path p = dir_ / "out" / (std::string("sweep_") + rule + ".csv");
        ASSERT_TRUE(fs::exists(p)) << p;
        SweepTable t = table(rule);
        EXPECT_EQ(t.rows.size(), 9u);
        EXPECT_EQ(t.cols.size(), 9u);
        EXPECT_EQ(emit_csv(t), slurp(p));
    }
    nlohmann::json j = nlohmann::json::parse(slurp(dir_ / "out" / "sweep.json"));
    EXPECT_EQ(j["tables"].size(), 5u);
}

TEST_F(SweepFiles, cells_outside_triangle_are_empty) {
    SweepTable t = table("Zero");
    for (size_t i = 0; i < t.rows.size(); i++) {
        for (size_t j = 0; j < t.cols.size(); j++) {
            EXPECT_EQ(t.cells[i][j].has_value(), t.rows[i] + t.cols[j] <= 1 + 1e-12) << i << "," << j;
        }
    }
}

TEST_F(SweepFiles, full_budget_corner_is_near_zero) {
    SweepTable t = table("FullDPrime");
    ASSERT_TRUE(t.cells[0].back().has_value());
    EXPECT_LT(*t.cells[0].back(), 0.2);
}

TEST_F(SweepFiles, no_budget_planar_corner_is_near_half) {
    // lambda = N with a large tree: the planar bucket-brigade regime.
    SweepTable t = table("Zero");
    for (size_t j = 6; j < t.cols.size(); j++) {
        ASSERT_TRUE(t.cells[0][j].has_value());
        EXPECT_NEAR(*t.cells[0][j], 0.5, 0.05) << "d'/n=" << t.cols[j];
    }
    // Pure QROM corner is linear up to log factors.
    EXPECT_GE(*t.cells.back()[0], 1.0);
    EXPECT_LT(*t.cells.back()[0], 1.1);
}

TEST_F(SweepFiles, larger_budget_never_hurts) {
    std::vector<SweepTable> ts;
    for (const char *rule : {"Zero", "QuarterDPrime", "HalfDPrime", "ThreeQuarterDPrime", "FullDPrime"}) {
        ts.push_back(table(rule));
    }
    for (size_t r = 1; r < ts.size(); r++) {
        for (size_t i = 0; i < ts[r].rows.size(); i++) {
            for (size_t j = 0; j < ts[r].cols.size(); j++) {
                if (ts[r].cells[i][j] && ts[r - 1].cells[i][j]) {
                    EXPECT_LE(*ts[r].cells[i][j], *ts[r - 1].cells[i][j] + 1e-3) << r << ":" << i << "," << j;
                }
            }
        }
    }
}
