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

#ifndef QLUT_CLI_H
#define QLUT_CLI_H

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlut/builder.h"
#include "qlut/costs.h"
#include "qlut/simulator.h"

namespace qlut {

/// Everything a single-instance command needs, read from a JSON config.
struct RunConfig {
    ArchParams params;
    ErrorRates rates;
    DataTable table;
    BuildOptions build;
    bool distillation = false;
    LongRangeMode longRange = LongRangeMode::Fixed;
    ScheduleOptions schedule;
    Decomposition decomposition;
    uint64_t trials = 1000;
    uint64_t seed = 1;
};

/// Throws ConfigParse (with the line number) on malformed JSON and
/// InvalidParams / InvalidTable on bad content.
RunConfig parse_config(const std::string &text);
/// Throws IoError when the file cannot be read.
RunConfig load_config(const std::string &path);

enum class KRule { Zero, QuarterDPrime, HalfDPrime, ThreeQuarterDPrime, FullDPrime };
enum class Metric { InfidelityExponent, TCountExponent, QubitExponent, DepthExponent };

const char *k_rule_name(KRule r);
KRule parse_k_rule(const std::string &s);
double k_rule_fraction(KRule r);
const char *metric_name(Metric m);
Metric parse_metric(const std::string &s);

struct SweepSpec {
    std::vector<int> nRange{32, 40, 48, 56, 64};
    std::vector<double> dFractions{0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1};
    std::vector<double> dPrimeFractions{0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1};
    std::vector<KRule> kRules{KRule::Zero, KRule::QuarterDPrime, KRule::HalfDPrime, KRule::ThreeQuarterDPrime,
                              KRule::FullDPrime};
    ErrorRates rates = ErrorRates::uniform(1e-3);
    Metric metric = Metric::InfidelityExponent;
};

SweepSpec parse_sweep_spec(const nlohmann::json &j);

/// Exponent matrix: rows over d/n, columns over d'/n; empty cells are
/// outside d + d' <= n or had fewer than five valid sizes.
struct SweepTable {
    std::string label;
    std::vector<double> rows;
    std::vector<double> cols;
    std::vector<std::vector<std::optional<double>>> cells;

    bool operator==(const SweepTable &other) const = default;
};

std::vector<SweepTable> run_sweep(const SweepSpec &spec);

std::string emit_csv(const SweepTable &table);
SweepTable parse_csv(const std::string &text);
nlohmann::json sweep_json(const SweepSpec &spec, const std::vector<SweepTable> &tables);

nlohmann::json run_report(const RunConfig &config);

int exit_code_for(ErrorCode code);

/// Entry point of the qlut binary.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qlut

#endif
