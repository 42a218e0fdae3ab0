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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "qlut/builder.h"
#include "qlut/cli.h"
#include "qlut/costs.h"
#include "qlut/layout.h"
#include "qlut/simulator.h"

using namespace qlut;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<uint64_t> powers_up_to(uint64_t N) {
    std::vector<uint64_t> v;
    for (uint64_t x = 1; x <= N; x *= 2) {
        v.push_back(x);
    }
    return v;
}

// 1. Every instance at n <= 4 returns x_i for every basis address i.
Outcome functional_oracle() {
    std::mt19937_64 rng(2026);
    uint64_t instances = 0, checks = 0, failures = 0;
    std::string first;
    for (int n = 1; n <= 4; n++) {
        uint64_t N = uint64_t{1} << n;
        for (uint64_t lambda : powers_up_to(N)) {
            for (uint64_t gamma : powers_up_to(lambda)) {
                std::vector<std::pair<uint64_t, Readout>> modes = {{1, Readout::SingleBit},
                                                                   {1, Readout::ParallelMultiBit},
                                                                   {1, Readout::SequentialMultiBit},
                                                                   {2, Readout::ParallelMultiBit},
                                                                   {2, Readout::SequentialMultiBit}};
                for (auto [b, readout] : modes) {
                    ArchParams p = derive_params(N, lambda, gamma, b, readout, 0);
                    for (int rep = 0; rep < 10; rep++) {
                        DataTable t = DataTable::random(N, b, rng);
                        Circuit c = build_lookup(p, t);
                        instances++;
                        for (uint64_t a = 0; a < N; a++) {
                            checks++;
                            SparseState out = simulate_ideal(c, basis_input(c, a));
                            if (success_probability(c, out, a) <= 1 - 1e-9) {
                                failures++;
                                if (first.empty()) {
                                    first = " first failure N=" + std::to_string(N) + " lambda=" +
                                            std::to_string(lambda) + " gamma=" + std::to_string(gamma) +
                                            " b=" + std::to_string(b) + " " + readout_name(readout);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return {failures == 0, std::to_string(instances) + " circuits, " + std::to_string(checks) +
                               " address checks, " + std::to_string(failures) + " failures" + first};
}

// 2. Uniform superposition queries, run through compute and uncompute, equal
// Sum alpha_i |i>|x_i> with every ancilla back at |0>.
Outcome superposition_semantics() {
    std::mt19937_64 rng(7);
    double worst = 1;
    int runs = 0;
    for (int n = 1; n <= 3; n++) {
        uint64_t N = uint64_t{1} << n;
        std::vector<Amp> alphas(N, Amp(1.0 / std::sqrt((double)N)));
        for (uint64_t lambda : powers_up_to(N)) {
            for (uint64_t gamma : powers_up_to(lambda)) {
                for (auto [b, readout] : std::vector<std::pair<uint64_t, Readout>>{
                         {1, Readout::SingleBit}, {2, Readout::ParallelMultiBit}, {2, Readout::SequentialMultiBit}}) {
                    ArchParams p = derive_params(N, lambda, gamma, b, readout, 0);
                    Circuit c = build_uncompute(build_lookup(p, DataTable::random(N, b, rng)));
                    SparseState out = simulate_ideal(c, superposition_input(c, alphas));
                    worst = std::min(worst, out.overlap(lookup_target(c, alphas)));
                    runs++;
                }
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d instances, min overlap %.12f", runs, worst);
    return {worst > 1 - 1e-9, buf};
}

// 3. Off-path X/Y injections on bucket-brigade routers never corrupt the
// output; a Z on a CNOT-router child kicks back only under a superposed address.
Outcome containment() {
    std::mt19937_64 rng(3);
    uint64_t injections = 0, harmful = 0;
    std::string example;
    for (int n = 1; n <= 4; n++) {
        uint64_t N = uint64_t{1} << n;
        Circuit c = build_reference(ReferenceKind::BucketBrigade, N, DataTable::random(N, 1, rng));
        ContainmentReport r = offpath_containment(c, "XY");
        injections += r.injections;
        harmful += r.harmful;
        if (!r.harmful_examples.empty() && example.empty()) {
            example = " e.g. " + r.harmful_examples.front();
        }
    }
    KickbackReport k = cnot_router_kickback();
    bool kick = k.x_other_branch_benign && k.z_overlap_superposed < 1 - 1e-6 && k.z_overlap_basis > 1 - 1e-9;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%llu off-path injections, %llu harmful; kickback overlap superposed %.3f, basis %.3f",
                  (unsigned long long)injections, (unsigned long long)harmful, k.z_overlap_superposed,
                  k.z_overlap_basis);
    return {harmful == 0 && injections > 0 && kick, buf + example};
}

double fit_counts(const std::vector<double> &sizes, const std::vector<double> &values) {
    return fit_exponent(sizes, values).slope;
}

// 4. T-count and qubit-count exponents of the four schemes over N = 2^4..2^12.
Outcome table_exponents() {
    std::mt19937_64 rng(4);
    struct Series {
        std::string name;
        std::vector<double> sizes, tcount, qubits, tformula;
    };
    Series qrom{"QROM"}, ss{"SelectSwapVariant"}, bb{"BucketBrigade"}, uni{"Unified"};
    for (int n = 4; n <= 12; n++) {
        uint64_t N = uint64_t{1} << n;
        DataTable t = DataTable::random(N, 1, rng);
        auto add = [&](Series &s, const ArchParams &p) {
            ResourceCounts rc = count_resources(build_lookup(p, t));
            s.sizes.push_back((double)N);
            s.tcount.push_back((double)rc.tCount);
            s.qubits.push_back((double)rc.qubitCount);
            s.tformula.push_back(t_count_formula(p));
        };
        add(qrom, derive_params(N, 1, 1, 1, Readout::SingleBit, 0));
        add(ss, derive_params(N, uint64_t{1} << (n / 2), 1, 1, Readout::SingleBit, 0));
        add(bb, derive_params(N, N, 1, 1, Readout::SingleBit, 0));
        add(uni, derive_params(N, uint64_t{1} << (n / 2), uint64_t{1} << (n / 4), 1, Readout::SingleBit, 0));
    }
    // The QROM qubit count is logarithmic; its exponent is fitted after
    // dividing out log N.
    std::vector<double> qrom_per_log;
    for (size_t k = 0; k < qrom.sizes.size(); k++) {
        qrom_per_log.push_back(qrom.qubits[k] / std::log2(qrom.sizes[k]));
    }
    struct Check {
        std::string what;
        double got, want;
    };
    std::vector<Check> checks = {
        {"QROM T", fit_counts(qrom.sizes, qrom.tcount), 1.0},
        {"SelectSwap T", fit_counts(ss.sizes, ss.tcount), fit_counts(ss.sizes, ss.tformula)},
        {"BB T", fit_counts(bb.sizes, bb.tcount), 1.0},
        {"Unified T", fit_counts(uni.sizes, uni.tcount), 0.75},
        {"QROM qubits/log", fit_counts(qrom.sizes, qrom_per_log), 0.0},
        {"SelectSwap qubits", fit_counts(ss.sizes, ss.qubits), 0.5},
        {"BB qubits", fit_counts(bb.sizes, bb.qubits), 1.0},
        {"Unified qubits", fit_counts(uni.sizes, uni.qubits), 0.5},
    };
    bool ok = true;
    std::ostringstream os;
    for (const auto &c : checks) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s %.3f (want %.2f); ", c.what.c_str(), c.got, c.want);
        os << buf;
        ok = ok && std::abs(c.got - c.want) <= 0.15;
    }
    return {ok, os.str()};
}

// 5. Analytic infidelity exponent at lambda = sqrt N, gamma = N^(1/4).
Outcome infidelity_exponent() {
    std::vector<double> sizes, values;
    ErrorRates r = ErrorRates::uniform(1e-6);
    for (int n = 6; n <= 16; n++) {
        CostShape s;
        s.n = n;
        s.d = n - n / 2;
        s.dPrime = n / 2 - n / 4;
        sizes.push_back(std::exp2(n));
        values.push_back(general_infidelity(s, r).total);
    }
    ExponentFit f = fit_exponent(sizes, values);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "slope %.3f +- %.3f (want 0.75 +- 0.15)", f.slope, f.ci);
    return {std::abs(f.slope - 0.75) <= 0.15, buf};
}

// 6. Long-range budget sweep tables.
Outcome budget_sweep() {
    SweepSpec spec;
    std::vector<SweepTable> tables = run_sweep(spec);
    if (tables.size() != 5) {
        return {false, "expected 5 tables"};
    }
    // Round trip through CSV, as emitted by the CLI.
    for (const auto &t : tables) {
        SweepTable back = parse_csv(emit_csv(t));
        back.label = t.label;
        if (!(back == t)) {
            return {false, "CSV round trip differs for " + t.label};
        }
    }
    int violations = 0, cells = 0;
    double sat = 0;
    for (size_t i = 0; i < spec.dFractions.size(); i++) {
        for (size_t j = 0; j < spec.dPrimeFractions.size(); j++) {
            for (size_t r = 0; r + 1 < tables.size(); r++) {
                auto a = tables[r].cells[i][j], b = tables[r + 1].cells[i][j];
                if (a && b) {
                    cells++;
                    violations += *b > *a + 1e-3;
                }
            }
            auto half = tables[2].cells[i][j], three = tables[3].cells[i][j];
            if (half && three) {
                sat = std::max(sat, std::abs(*half - *three));
            }
        }
    }
    // lambda = N is d = 0; the all-CSWAP column is d' = n.
    auto corner = tables[4].cells[0][spec.dPrimeFractions.size() - 1];
    bool ok = violations == 0 && sat < 0.1 && corner && *corner < 0.2;
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%d monotonicity violations in %d pairs, saturation diff %.3f, k=d' lambda=N %.3f",
                  violations, cells, sat, corner ? *corner : NAN);
    return {ok, buf};
}

// 7. Monte Carlo infidelity per error type against harmful-location
// enumeration, one rate switched on at a time.
Outcome monte_carlo_agreement() {
    const double delta = 1e-4;
    const uint64_t trials = 1000000;
    std::mt19937_64 rng(8);
    // d = 2 gives the unary ladder CCNOTs; d' = 1 and g = 0 give CSWAP
    // routers, long-range links and data CNOTs.
    ArchParams p = derive_params(8, 2, 1, 1, Readout::SingleBit, 0);
    Circuit c = build_lookup(p, DataTable::random(8, 1, rng));
    GridPlacement pl = place_htree(c);
    auto links = classify_links(c, pl);
    annotate_lengths(c, links);
    Schedule sched = build_schedule(c, links);
    struct Type {
        std::string name;
        double ErrorRates::*rate;
        LongRangeMode mode;
    };
    std::vector<Type> types = {{"I", &ErrorRates::epsI, LongRangeMode::Fixed},
                               {"Q", &ErrorRates::epsQ, LongRangeMode::Ghz},
                               {"L", &ErrorRates::epsL, LongRangeMode::Fixed},
                               {"s", &ErrorRates::epsS, LongRangeMode::Fixed},
                               {"cs", &ErrorRates::epsCS, LongRangeMode::Fixed},
                               {"c", &ErrorRates::epsC, LongRangeMode::Fixed},
                               {"cc", &ErrorRates::epsCC, LongRangeMode::Fixed}};
    bool ok = true;
    std::ostringstream os;
    uint64_t seed = 100;
    for (const auto &t : types) {
        NoiseModel m;
        m.rates.*(t.rate) = delta;
        m.long_range = t.mode;
        auto locs = error_locations(c, sched, links, m);
        EnumerationResult e = enumerate_infidelity(c, locs);
        MonteCarloResult mc = monte_carlo_infidelity(c, locs, trials, seed++);
        double sigma = std::max(mc.stderr_, 1.0 / (double)trials);
        bool agree = std::abs(mc.infidelity - e.infidelity) <= 3 * sigma && !locs.empty();
        ok = ok && agree;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s slope mc %.1f enum %.1f; ", t.name.c_str(), mc.infidelity / delta,
                      e.infidelity / delta);
        os << buf;
    }
    return {ok, os.str()};
}

// 8. Layout: area per location, locality soundness, link halving, N=16 frame.
Outcome layout_properties() {
    std::mt19937_64 rng(9);
    double worst_area = 0;
    uint64_t unflagged = 0;
    bool halving = true;
    for (int n = 1; n <= 12; n++) {
        uint64_t N = uint64_t{1} << n;
        DataTable t = DataTable::random(N, 1, rng);
        std::vector<Circuit> circuits;
        circuits.push_back(build_reference(ReferenceKind::BucketBrigade, N, t));
        circuits.push_back(build_lookup(derive_params(N, N, 1, 1, Readout::SingleBit, 0), t));
        circuits.push_back(
            build_lookup(derive_params(N, uint64_t{1} << (n / 2), uint64_t{1} << (n / 4), 1, Readout::SingleBit, 0), t));
        circuits.push_back(build_lookup(derive_params(N, 1, 1, 1, Readout::SingleBit, 0), t));
        for (size_t k = 0; k < circuits.size(); k++) {
            const Circuit &c = circuits[k];
            GridPlacement pl = place_htree(c);
            worst_area = std::max(worst_area, (double)pl.area() / (double)N);
            auto links = classify_links(c, pl);
            std::vector<bool> flagged(c.gates.size(), false);
            for (const auto &l : links) {
                flagged[l.gate] = true;
            }
            for (size_t g = 0; g < c.gates.size(); g++) {
                unflagged += !flagged[g] && !is_local(c.gates[g], pl);
            }
            if (k == 0) {
                auto m = mean_link_length(c, links);
                for (size_t l = 0; l + 2 < m.size(); l++) {
                    halving = halving && m[l + 2] * 2 == m[l];
                }
            }
        }
    }
    Circuit c16 = build_reference(ReferenceKind::BucketBrigade, 16, DataTable::random(16, 1, rng));
    GridPlacement pl16 = place_htree(c16);
    std::string fixture_path = std::string(QLUT_TEST_DATA_DIR) + "/htree_n16_bb.json";
    std::string fixture;
    if (FILE *f = std::fopen(fixture_path.c_str(), "rb")) {
        char buf[4096];
        size_t got;
        while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) {
            fixture.append(buf, got);
        }
        std::fclose(f);
    }
    bool fixture_ok = !fixture.empty() && nlohmann::ordered_json::parse(fixture) ==
                                              nlohmann::ordered_json::parse(export_layout_json(pl16));
    bool frame_ok = pl16.frame.width() == 17 && pl16.frame.height() == 10;
    char buf[192];
    std::snprintf(buf, sizeof(buf), "max area/N %.2f, unflagged long gates %llu, halving %s, N=16 frame %dx%d, fixture %s",
                  worst_area, (unsigned long long)unflagged, halving ? "exact" : "broken", pl16.frame.width(),
                  pl16.frame.height(), fixture_ok ? "match" : "mismatch");
    return {worst_area <= 12 && unflagged == 0 && halving && frame_ok && fixture_ok, buf};
}

// 9. lambda = N, gamma = 1 equals the bucket-brigade reference; b = 1
// multi-bit builders equal the single-bit one; uncompute cleans every ancilla.
Outcome degeneration() {
    std::mt19937_64 rng(10);
    bool multiset = true, multi = true;
    double worst = 1;
    for (int n = 1; n <= 6; n++) {
        uint64_t N = uint64_t{1} << n;
        DataTable t = DataTable::random(N, 1, rng);
        ArchParams bbp = derive_params(N, N, 1, 1, Readout::SingleBit, 0);
        multiset = multiset &&
                   gate_multiset(build_lookup(bbp, t)) == gate_multiset(build_reference(ReferenceKind::BucketBrigade, N, t));
        for (uint64_t lambda : powers_up_to(N)) {
            for (uint64_t gamma : powers_up_to(lambda)) {
                ArchParams single = derive_params(N, lambda, gamma, 1, Readout::SingleBit, 0);
                std::string ref = export_gate_list(build_lookup(single, t));
                for (Readout r : {Readout::ParallelMultiBit, Readout::SequentialMultiBit}) {
                    ArchParams mp = derive_params(N, lambda, gamma, 1, r, 0);
                    Circuit a = r == Readout::ParallelMultiBit ? build_multi_bit_parallel(mp, t)
                                                               : build_multi_bit_sequential(mp, t);
                    multi = multi && export_gate_list(a) == ref;
                }
                if (n <= 3) {
                    for (auto [b, r] : std::vector<std::pair<uint64_t, Readout>>{
                             {1, Readout::SingleBit}, {2, Readout::ParallelMultiBit}, {2, Readout::SequentialMultiBit}}) {
                        ArchParams p = derive_params(N, lambda, gamma, b, r, 0);
                        DataTable tb = DataTable::random(N, b, rng);
                        Circuit u = build_uncompute(build_lookup(p, tb));
                        for (uint64_t a = 0; a < N; a++) {
                            std::vector<Amp> alpha(N, Amp(0));
                            alpha[a] = 1;
                            SparseState out = simulate_ideal(u, basis_input(u, a));
                            worst = std::min(worst, out.overlap(lookup_target(u, alpha)));
                        }
                    }
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "BB multiset %s, b=1 builders %s, uncompute min overlap %.12f",
                  multiset ? "equal" : "differ", multi ? "identical" : "differ", worst);
    return {multiset && multi && worst > 1 - 1e-9, buf};
}

// 10. Distilled long-range error is min(m epsQ, epsF): monotone in m and
// capped at epsF.
Outcome long_range_model() {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> mdist(1, 4096);
    std::uniform_real_distribution<double> edist(-7, -1);
    int bad = 0;
    for (int k = 0; k < 1000; k++) {
        int m = mdist(rng);
        ErrorRates r;
        r.epsQ = std::pow(10.0, edist(rng));
        r.epsF = std::pow(10.0, edist(rng));
        double got = long_range_error(m, LinkResource::DistilledBell, r, true);
        double next = long_range_error(m + 1, LinkResource::DistilledBell, r, true);
        bad += got != std::min(m * r.epsQ, r.epsF);
        bad += next < got;
        bad += got > r.epsF;
        bad += long_range_error(m, LinkResource::FreeBudget, r, true) != 0;
    }
    return {bad == 0, "1000 random triples, " + std::to_string(bad) + " violations"};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"functional correctness oracle", functional_oracle},
        {"superposition semantics", superposition_semantics},
        {"error containment", containment},
        {"T-count and qubit exponents", table_exponents},
        {"infidelity exponent", infidelity_exponent},
        {"long-range budget sweep", budget_sweep},
        {"Monte Carlo vs enumeration", monte_carlo_agreement},
        {"layout properties", layout_properties},
        {"degeneration identities", degeneration},
        {"long-range error model", long_range_model},
    };
    int failed = 0;
    for (size_t k = 0; k < criteria.size(); k++) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %zu: %s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    secs, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
