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

#include "qlut/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace qlut {

size_t default_qubit_cap() {
    if (const char *env = std::getenv("QLUT_QUBIT_CAP")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return (size_t)v;
        }
    }
    return 1024;
}

namespace {

void check_cap(const Circuit &c, const SimOptions &options) {
    if (c.num_qubits() > options.qubit_cap) {
        throw QlutError(ErrorCode::TooManyQubits, std::to_string(c.num_qubits()) + " qubits exceed the cap of " +
                                                      std::to_string(options.qubit_cap));
    }
}

std::vector<uint32_t> address_ones(const Circuit &c, uint64_t address) {
    std::vector<uint32_t> ones;
    size_t n = c.address.size();
    for (size_t j = 0; j < n; j++) {
        if ((address >> (n - 1 - j)) & 1) {
            ones.push_back(c.address[j]);
        }
    }
    return ones;
}

uint64_t read_word(const Circuit &c, const SparseState &s, size_t term) {
    uint64_t v = 0;
    for (size_t w = 0; w < c.outputs.size(); w++) {
        v |= (uint64_t)s.bit(term, c.outputs[w]) << w;
    }
    return v;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

void apply_paulis(SparseState &s, const std::vector<std::pair<uint32_t, char>> &paulis) {
    for (auto [q, p] : paulis) {
        s.pauli(p, q);
    }
}

/// Locations bucketed by probability for geometric skipping.
struct Sampler {
    std::vector<std::pair<double, std::vector<size_t>>> groups;

    explicit Sampler(const std::vector<ErrorLocation> &locations) {
        std::map<double, std::vector<size_t>> by_p;
        for (size_t k = 0; k < locations.size(); k++) {
            if (locations[k].p > 0) {
                by_p[locations[k].p].push_back(k);
            }
        }
        groups.assign(by_p.begin(), by_p.end());
    }

    std::vector<ErrorEvent> sample(const std::vector<ErrorLocation> &locations, std::mt19937_64 &rng) const {
        std::vector<ErrorEvent> events;
        for (const auto &[p, members] : groups) {
            if (p >= 1) {
                for (size_t k : members) {
                    events.push_back({k, {}, locations[k].rate});
                }
                continue;
            }
            std::geometric_distribution<uint64_t> skip(p);
            for (uint64_t pos = skip(rng); pos < members.size(); pos += 1 + skip(rng)) {
                events.push_back({members[pos], {}, locations[members[pos]].rate});
            }
        }
        for (auto &e : events) {
            const ErrorLocation &loc = locations[e.location];
            int k = std::uniform_int_distribution<int>(0, loc.patterns() - 1)(rng);
            e.paulis = error_pattern(loc, k);
        }
        return events;
    }
};

/// Ideal basis-query states before every gate.
std::vector<SparseState> snapshots(const Circuit &c, uint64_t address) {
    std::vector<SparseState> snaps;
    snaps.reserve(c.gates.size() + 1);
    SparseState s = basis_input(c, address);
    snaps.push_back(s);
    for (const auto &g : c.gates) {
        s.apply(g);
        snaps.push_back(s);
    }
    return snaps;
}

bool finish_ok(const Circuit &c, SparseState s, size_t from, uint64_t address) {
    for (size_t i = from; i < c.gates.size(); i++) {
        s.apply(c.gates[i]);
    }
    return success_probability(c, s, address) > 0.5;
}

}  // namespace

SparseState basis_input(const Circuit &circuit, uint64_t address) {
    SparseState s(circuit.num_qubits());
    s.set_bits(circuit.address, address);
    return s;
}

SparseState superposition_input(const Circuit &circuit, const std::vector<Amp> &alphas) {
    SparseState s(circuit.num_qubits());
    s.clear();
    for (uint64_t i = 0; i < alphas.size(); i++) {
        if (alphas[i] != Amp(0)) {
            s.add_term(address_ones(circuit, i), alphas[i]);
        }
    }
    return s;
}

SparseState lookup_target(const Circuit &circuit, const std::vector<Amp> &alphas) {
    SparseState s(circuit.num_qubits());
    s.clear();
    for (uint64_t i = 0; i < alphas.size(); i++) {
        if (alphas[i] == Amp(0)) {
            continue;
        }
        auto ones = address_ones(circuit, i);
        for (size_t w = 0; w < circuit.outputs.size(); w++) {
            if (circuit.data.bit(i, w)) {
                ones.push_back(circuit.outputs[w]);
            }
        }
        s.add_term(ones, alphas[i]);
    }
    return s;
}

SparseState simulate_ideal(const Circuit &circuit, const SparseState &input, const SimOptions &options) {
    return simulate_filtered(circuit, input, [](const Gate &) { return true; }, options);
}

SparseState simulate_filtered(const Circuit &circuit, const SparseState &input,
                              const std::function<bool(const Gate &)> &keep, const SimOptions &options) {
    check_cap(circuit, options);
    if (input.num_qubits() != circuit.num_qubits()) {
        throw QlutError(ErrorCode::Internal, "input state does not match the circuit");
    }
    SparseState s = input;
    for (const auto &g : circuit.gates) {
        if (keep(g)) {
            s.apply(g);
        }
    }
    return s;
}

double success_probability(const Circuit &circuit, const SparseState &state, uint64_t address) {
    uint64_t want = circuit.data.words.at(address);
    double p = 0;
    for (size_t t = 0; t < state.num_terms(); t++) {
        if (read_word(circuit, state, t) == want) {
            p += std::norm(state.amp(t));
        }
    }
    return p;
}

const char *rate_kind_name(RateKind k) {
    switch (k) {
        case RateKind::Idle:
            return "epsI";
        case RateKind::Qubit:
            return "epsQ";
        case RateKind::LongRange:
            return "epsL";
        case RateKind::Swap:
            return "epsS";
        case RateKind::Cswap:
            return "epsCS";
        case RateKind::Cnot:
            return "epsC";
        case RateKind::Ccnot:
            return "epsCC";
    }
    return "?";
}

std::vector<ErrorLocation> error_locations(const Circuit &circuit, const Schedule &schedule,
                                           const std::vector<LongRangeLink> &links, const NoiseModel &noise) {
    const ErrorRates &r = noise.rates;
    std::map<size_t, const LongRangeLink *> flagged;
    for (const auto &l : links) {
        flagged[l.gate] = &l;
    }
    std::vector<ErrorLocation> locs;
    for (size_t i = 0; i < circuit.gates.size(); i++) {
        const Gate &g = circuit.gates[i];
        ErrorLocation loc;
        loc.gate = i;
        loc.arity = g.arity;
        std::copy(g.q.begin(), g.q.end(), loc.qubits.begin());
        auto it = flagged.find(i);
        if (it != flagged.end()) {
            const LongRangeLink &l = *it->second;
            loc.pair = true;
            switch (noise.long_range) {
                case LongRangeMode::Fixed:
                    loc.rate = RateKind::LongRange;
                    loc.p = l.resource == LinkResource::FreeBudget ? 0 : r.epsL;
                    break;
                case LongRangeMode::Ghz:
                    loc.rate = RateKind::Qubit;
                    loc.p = long_range_error(l.m, l.resource, r, false);
                    break;
                case LongRangeMode::Distilled:
                    loc.rate = RateKind::Qubit;
                    loc.p = long_range_error(l.m, l.resource, r, true);
                    break;
            }
        } else {
            switch (g.kind) {
                case GateKind::SWAP:
                    loc.rate = RateKind::Swap;
                    loc.p = r.epsS;
                    break;
                case GateKind::CSWAP:
                    loc.rate = RateKind::Cswap;
                    loc.p = r.epsCS;
                    break;
                case GateKind::CNOT:
                    loc.rate = RateKind::Cnot;
                    loc.p = r.epsC;
                    break;
                case GateKind::CCNOT:
                    loc.rate = RateKind::Ccnot;
                    loc.p = r.epsCC;
                    break;
                default:
                    continue;
            }
        }
        if (loc.p > 0) {
            locs.push_back(loc);
        }
    }
    if (r.epsI > 0) {
        double keep = 1 - 4 * r.epsI / 3;
        for (const auto &gap : schedule.gaps) {
            ErrorLocation loc;
            loc.idle = true;
            loc.gate = gap.before_gate;
            loc.rate = RateKind::Idle;
            loc.qubits[0] = gap.qubit;
            loc.arity = 1;
            loc.p = std::min(1.0, 0.75 * (1 - std::pow(keep, (double)gap.length)));
            locs.push_back(loc);
        }
    }
    return locs;
}

std::vector<std::pair<uint32_t, char>> error_pattern(const ErrorLocation &loc, int k) {
    static const char kPauli[] = "IXYZ";
    if (loc.pair) {
        int a = (k + 1) / 4;
        int b = (k + 1) % 4;
        std::vector<std::pair<uint32_t, char>> out;
        if (a) {
            out.push_back({loc.qubits[0], kPauli[a]});
        }
        if (b) {
            out.push_back({loc.qubits[loc.arity - 1], kPauli[b]});
        }
        return out;
    }
    return {{loc.qubits[k / 3], kPauli[1 + k % 3]}};
}

bool run_with_events(const Circuit &circuit, const std::vector<ErrorLocation> &locations,
                     const std::vector<ErrorEvent> &events, uint64_t address, const SimOptions &options) {
    check_cap(circuit, options);
    auto key = [&](const ErrorEvent &e) {
        const ErrorLocation &l = locations[e.location];
        return l.idle ? 2 * l.gate : 2 * l.gate + 1;
    };
    std::vector<const ErrorEvent *> order;
    for (const auto &e : events) {
        order.push_back(&e);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](const ErrorEvent *a, const ErrorEvent *b) { return key(*a) < key(*b); });
    SparseState s = basis_input(circuit, address);
    size_t next = 0;
    size_t G = circuit.gates.size();
    for (size_t slot = 0; slot <= 2 * G; slot++) {
        while (next < order.size() && key(*order[next]) == slot) {
            apply_paulis(s, order[next]->paulis);
            next++;
        }
        if (slot % 2 == 0 && slot / 2 < G) {
            s.apply(circuit.gates[slot / 2]);
        }
    }
    return success_probability(circuit, s, address) > 0.5;
}

uint64_t trial_seed(uint64_t master, uint64_t index) {
    return splitmix64(master ^ splitmix64(index));
}

TrialResult inject_and_simulate(const Circuit &circuit, const std::vector<ErrorLocation> &locations, uint64_t seed,
                                const SimOptions &options) {
    Sampler sampler(locations);
    std::mt19937_64 rng(seed);
    TrialResult r;
    r.address = std::uniform_int_distribution<uint64_t>(0, circuit.params.N - 1)(rng);
    r.events = sampler.sample(locations, rng);
    r.success = r.events.empty() || run_with_events(circuit, locations, r.events, r.address, options);
    return r;
}

MonteCarloResult monte_carlo_infidelity(const Circuit &circuit, const std::vector<ErrorLocation> &locations,
                                        uint64_t trials, uint64_t seed, const SimOptions &options) {
    if (trials == 0) {
        throw QlutError(ErrorCode::InvalidParams, "trials must be at least 1");
    }
    check_cap(circuit, options);
    Sampler sampler(locations);
    MonteCarloResult out;
    out.trials = trials;
    for (uint64_t t = 0; t < trials; t++) {
        std::mt19937_64 rng(trial_seed(seed, t));
        uint64_t address = std::uniform_int_distribution<uint64_t>(0, circuit.params.N - 1)(rng);
        auto events = sampler.sample(locations, rng);
        if (!events.empty() && !run_with_events(circuit, locations, events, address, options)) {
            out.failures++;
        }
    }
    double p = (double)out.failures / (double)trials;
    out.infidelity = p;
    out.stderr_ = std::sqrt(p * (1 - p) / (double)trials);
    return out;
}

std::vector<double> harmful_fractions(const Circuit &circuit, const std::vector<ErrorLocation> &locations,
                                      uint64_t address, const SimOptions &options) {
    check_cap(circuit, options);
    auto snaps = snapshots(circuit, address);
    std::vector<double> h(locations.size(), 0);
    for (size_t k = 0; k < locations.size(); k++) {
        const ErrorLocation &loc = locations[k];
        size_t from = loc.idle ? loc.gate : loc.gate + 1;
        int bad = 0;
        for (int pat = 0; pat < loc.patterns(); pat++) {
            SparseState s = snaps[from];
            apply_paulis(s, error_pattern(loc, pat));
            bad += !finish_ok(circuit, std::move(s), from, address);
        }
        h[k] = (double)bad / loc.patterns();
    }
    return h;
}

EnumerationResult enumerate_infidelity(const Circuit &circuit, const std::vector<ErrorLocation> &locations,
                                       const SimOptions &options) {
    EnumerationResult r;
    uint64_t N = circuit.params.N;
    for (uint64_t a = 0; a < N; a++) {
        auto h = harmful_fractions(circuit, locations, a, options);
        double survive = 1;
        for (size_t k = 0; k < h.size(); k++) {
            survive *= 1 - locations[k].p * h[k];
            r.first_order += locations[k].p * h[k];
            r.harmful_weight += h[k];
        }
        r.infidelity += 1 - survive;
    }
    r.infidelity /= (double)N;
    r.first_order /= (double)N;
    r.harmful_weight /= (double)N;
    return r;
}

ContainmentReport offpath_containment(const Circuit &circuit, const std::string &paulis, const SimOptions &options) {
    check_cap(circuit, options);
    ContainmentReport rep;
    int n = circuit.params.n;
    int d = circuit.params.d;
    for (uint64_t a = 0; a < circuit.params.N; a++) {
        Address addr = Address::from_value(a, n);
        std::vector<uint32_t> off;
        for (const auto &r : circuit.routers) {
            bool on_path = r.word == 0 && (uint64_t)r.pos == addr.slice(d, d + r.level);
            if (!on_path) {
                for (uint32_t q : {r.t, r.in, r.left, r.right}) {
                    if (std::find(off.begin(), off.end(), q) == off.end()) {
                        off.push_back(q);
                    }
                }
            }
        }
        auto snaps = snapshots(circuit, a);
        for (size_t i = 0; i <= circuit.gates.size(); i++) {
            for (uint32_t q : off) {
                for (char p : paulis) {
                    SparseState s = snaps[i];
                    s.pauli(p, q);
                    rep.injections++;
                    if (finish_ok(circuit, std::move(s), i, a)) {
                        rep.benign++;
                    } else {
                        rep.harmful++;
                        if (rep.harmful_examples.size() < 10) {
                            std::ostringstream msg;
                            msg << "address " << a << " " << p << " on " << circuit.qubits[q].label() << " before gate "
                                << i;
                            rep.harmful_examples.push_back(msg.str());
                        }
                    }
                }
            }
        }
    }
    return rep;
}

KickbackReport cnot_router_kickback() {
    // Qubits: address a, parent c, children l and r.
    enum : uint32_t { A, C, L, R };
    auto run = [](SparseState s, bool superposed, char pauli, uint32_t where) {
        if (superposed) {
            s.h(A);
        }
        s.cnot(A, C);
        s.cnot(C, L);
        s.cnot(C, R);
        s.pauli(pauli, where);
        s.cnot(C, R);
        s.cnot(C, L);
        s.cnot(A, C);
        return s;
    };
    KickbackReport rep;
    rep.x_other_branch_benign = true;
    for (int a = 0; a < 2; a++) {
        SparseState in(4);
        if (a) {
            in.x(A);
        }
        SparseState s = run(in, false, 'X', L);
        for (uint32_t q : {A, C, R}) {
            if (s.probability_one(q) != (q == A ? a : 0)) {
                rep.x_other_branch_benign = false;
            }
        }
    }
    SparseState zero(4);
    rep.z_overlap_superposed = run(zero, true, 'Z', L).overlap(run(zero, true, 'I', L));
    rep.z_overlap_basis = run(zero, false, 'Z', L).overlap(run(zero, false, 'I', L));
    return rep;
}

}  // namespace qlut
