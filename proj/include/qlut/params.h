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

#ifndef QLUT_PARAMS_H
#define QLUT_PARAMS_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlut/errors.h"

namespace qlut {

enum class Readout { SingleBit, ParallelMultiBit, SequentialMultiBit };

enum class Specialization { QROM, SelectSwapVariant, BucketBrigade, General };

const char *readout_name(Readout r);
Readout parse_readout(const std::string &text);
const char *specialization_name(Specialization s);

/// The tuning tuple of the lookup architecture plus its derived exponents.
///
/// N = 2^n memory words, partition size lambda = 2^(n-d), CNOT tree size
/// gamma = 2^(n-d-dPrime), word size b = 2^dDoublePrime.
struct ArchParams {
    uint64_t N = 1;
    int n = 0;
    uint64_t lambda = 1;
    uint64_t gamma = 1;
    uint64_t b = 1;
    int d = 0;
    int dPrime = 0;
    int dDoublePrime = 0;
    Readout readout = Readout::SingleBit;
    int longRangeBudgetK = 0;

    /// log2(gamma): number of CNOT-tree levels below the CSWAP tree.
    int g() const {
        return n - d - dPrime;
    }
    /// Depth of the Stage III routing tree (n - d).
    int tree_depth() const {
        return n - d;
    }
    uint64_t repetitions() const {
        return N / lambda;
    }
    /// Whether the infidelity theorem's precondition dPrime <= d <= n holds.
    bool theorem_regime() const {
        return dPrime <= d && d <= n;
    }
    bool operator==(const ArchParams &other) const = default;
};

/// Validates the tuple and computes d, dPrime, dDoublePrime.
///
/// Throws NonPowerOfTwo or OrderingViolation (gamma > lambda, lambda > N,
/// k outside [0, n - d]).
ArchParams derive_params(uint64_t N, uint64_t lambda, uint64_t gamma, uint64_t b, Readout readout, int k);

Specialization specialization(const ArchParams &params);

/// Per-location error probabilities.
struct ErrorRates {
    double epsI = 0;
    double epsQ = 0;
    double epsL = 0;
    double epsS = 0;
    double epsCS = 0;
    double epsC = 0;
    double epsCC = 0;
    double epsF = 0;
    double epsInitial = 0;

    void validate() const;
    /// Every rate set to eps (the "generic" setting).
    static ErrorRates uniform(double eps);
    bool operator==(const ErrorRates &other) const = default;
};

/// Classical data x_0 .. x_{N-1}, each word b bits wide.
struct DataTable {
    uint64_t b = 1;
    std::vector<uint64_t> words;

    uint64_t size() const {
        return words.size();
    }
    bool bit(uint64_t index, uint64_t w) const {
        return (words[index] >> w) & 1;
    }
    void validate(uint64_t N) const;
    static DataTable random(uint64_t N, uint64_t b, std::mt19937_64 &rng);
    bool operator==(const DataTable &other) const = default;
};

/// Address bits a_0 .. a_{n-1}, most significant first.
struct Address {
    std::vector<uint8_t> bits;

    static Address from_value(uint64_t value, int n);
    uint64_t value() const;
    /// Integer formed by bits [begin, end).
    uint64_t slice(int begin, int end) const;
};

bool is_power_of_two(uint64_t v);
int log2_exact(uint64_t v);

void to_json(nlohmann::json &j, const ArchParams &p);
void from_json(const nlohmann::json &j, ArchParams &p);
void to_json(nlohmann::json &j, const ErrorRates &r);
void from_json(const nlohmann::json &j, ErrorRates &r);

}  // namespace qlut

#endif
