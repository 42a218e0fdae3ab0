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

#ifndef QLUT_SIMULATOR_H
#define QLUT_SIMULATOR_H

#include <functional>
#include <string>
#include <vector>

#include "qlut/layout.h"
#include "qlut/state.h"

namespace qlut {

/// Qubit cap for simulation; QLUT_QUBIT_CAP overrides the default of 1024.
size_t default_qubit_cap();

struct SimOptions {
    size_t qubit_cap = default_qubit_cap();
};

/// Basis input |address>|0...0>.
SparseState basis_input(const Circuit &circuit, uint64_t address);
/// Sum_i alpha_i |i>|0...0>; alphas has N entries.
SparseState superposition_input(const Circuit &circuit, const std::vector<Amp> &alphas);
/// Sum_i alpha_i |i>|x_i>|0...0>, the ideal query result with clean ancillas.
SparseState lookup_target(const Circuit &circuit, const std::vector<Amp> &alphas);

/// Runs the circuit without noise. Throws TooManyQubits above the cap.
SparseState simulate_ideal(const Circuit &circuit, const SparseState &input, const SimOptions &options = {});
/// Runs only the gates accepted by `keep`, in circuit order.
SparseState simulate_filtered(const Circuit &circuit, const SparseState &input,
                              const std::function<bool(const Gate &)> &keep, const SimOptions &options = {});

/// Probability that the output register reads x_address.
double success_probability(const Circuit &circuit, const SparseState &state, uint64_t address);

enum class RateKind { Idle, Qubit, LongRange, Swap, Cswap, Cnot, Ccnot };

const char *rate_kind_name(RateKind k);

/// How the long-range rate is derived from a link.
enum class LongRangeMode {
    /// Every long-range operation fails with epsL.
    Fixed,
    /// GHZ chain: min(m epsQ, 1), zero for budgeted links.
    Ghz,
    /// Distilled Bell pairs: min(m epsQ, epsF), zero for budgeted links.
    Distilled,
};

struct NoiseModel {
    ErrorRates rates;
    LongRangeMode long_range = LongRangeMode::Fixed;
};

/// One place where an error may strike. Gate locations act after their gate;
/// idle locations act before the gate that ends the idle period.
struct ErrorLocation {
    bool idle = false;
    size_t gate = 0;
    double p = 0;
    RateKind rate = RateKind::Swap;
    std::array<uint32_t, 3> qubits{};
    uint8_t arity = 1;
    /// Two-qubit Pauli on (first, last operand) instead of one Pauli on one operand.
    bool pair = false;

    /// Number of equally likely error patterns.
    int patterns() const {
        return pair ? 15 : 3 * arity;
    }
};

struct ErrorEvent {
    size_t location = 0;
    /// (qubit, Pauli) factors.
    std::vector<std::pair<uint32_t, char>> paulis;
    RateKind rate = RateKind::Swap;
};

struct TrialResult {
    uint64_t address = 0;
    bool success = true;
    std::vector<ErrorEvent> events;
};

/// Error locations of a circuit under a noise model. Single-qubit Clifford
/// gates and resets are noiseless; idle runs of L steps form one location with
/// the composed depolarizing probability 3/4 (1 - (1 - 4 epsI / 3)^L).
std::vector<ErrorLocation> error_locations(const Circuit &circuit, const Schedule &schedule,
                                           const std::vector<LongRangeLink> &links, const NoiseModel &noise);

/// Pattern `k` of a location as Pauli factors.
std::vector<std::pair<uint32_t, char>> error_pattern(const ErrorLocation &loc, int k);

/// Runs a basis query with the given events and reports whether the output
/// register reads x_address.
bool run_with_events(const Circuit &circuit, const std::vector<ErrorLocation> &locations,
                     const std::vector<ErrorEvent> &events, uint64_t address, const SimOptions &options = {});

/// Seed of trial `index` derived from the master seed.
uint64_t trial_seed(uint64_t master, uint64_t index);

/// Samples events at every location and runs one basis query with a uniformly
/// drawn address.
TrialResult inject_and_simulate(const Circuit &circuit, const std::vector<ErrorLocation> &locations, uint64_t seed,
                                const SimOptions &options = {});

struct MonteCarloResult {
    uint64_t trials = 0;
    uint64_t failures = 0;
    double infidelity = 0;
    double stderr_ = 0;
};

MonteCarloResult monte_carlo_infidelity(const Circuit &circuit, const std::vector<ErrorLocation> &locations,
                                        uint64_t trials, uint64_t seed, const SimOptions &options = {});

/// Harmful fraction of every location for one address, by exhaustive single
/// error injection.
std::vector<double> harmful_fractions(const Circuit &circuit, const std::vector<ErrorLocation> &locations,
                                      uint64_t address, const SimOptions &options = {});

struct EnumerationResult {
    /// Average over addresses of 1 - prod(1 - p h).
    double infidelity = 0;
    /// Average over addresses of sum p h.
    double first_order = 0;
    /// Harmful (location, pattern) pairs, each weighted by 1/patterns and
    /// averaged over addresses.
    double harmful_weight = 0;
};

EnumerationResult enumerate_infidelity(const Circuit &circuit, const std::vector<ErrorLocation> &locations,
                                       const SimOptions &options = {});

struct ContainmentReport {
    uint64_t injections = 0;
    uint64_t benign = 0;
    uint64_t harmful = 0;
    std::vector<std::string> harmful_examples;

    double benign_fraction() const {
        return injections ? (double)benign / (double)injections : 1.0;
    }
};

/// Injects every Pauli in `paulis` on every qubit of every router off the
/// query path, before every gate, for every basis address.
ContainmentReport offpath_containment(const Circuit &circuit, const std::string &paulis = "XY",
                                      const SimOptions &options = {});

/// Phase kickback through a CNOT router: an address qubit feeds a parent
/// node that diffuses into two children.
struct KickbackReport {
    /// X on one child leaves the other child and the parent intact.
    bool x_other_branch_benign = false;
    /// Z on a child, address in |+>: overlap with the ideal state.
    double z_overlap_superposed = 0;
    /// Z on a child, address in a basis state: overlap with the ideal state.
    double z_overlap_basis = 0;
};

KickbackReport cnot_router_kickback();

}  // namespace qlut

#endif
