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

#ifndef QLUT_COSTS_H
#define QLUT_COSTS_H

#include <map>
#include <string>
#include <vector>

#include "qlut/layout.h"
#include "qlut/params.h"

namespace qlut {

/// Exponents of an instance, usable beyond 64-bit N (the sweeps go to 2^64).
struct CostShape {
    int n = 0;
    int d = 0;
    int dPrime = 0;
    int dDoublePrime = 0;
    Readout readout = Readout::SingleBit;

    static CostShape of(const ArchParams &p);
    /// Throws OrderingViolation unless 0 <= d, 0 <= dPrime and d + dPrime <= n.
    void validate() const;
};

/// Multipliers of the big-O terms. All default to 1.
struct CostConstants {
    double cL = 1;
    double cS = 1;
    double cI = 1;
    double cC = 1;
    double cCC = 1;
    double cCS = 1;
    double cQ = 1;
};

struct FidelityBreakdown {
    /// Coefficient of each rate, keyed by rate name (epsL, epsS, ...).
    std::map<std::string, double> coefficients;
    /// Survival exponents P_L, P_s, P_cs, P_I (bucket-brigade form only).
    std::map<std::string, double> survivalExponents;
    double total = 0;
    /// Whether the idle term is a fitted envelope rather than a count.
    bool idleModeled = false;

    /// Sets total = sum of rate * coefficient.
    void sum(const ErrorRates &rates);
};

double rate_by_name(const ErrorRates &rates, const std::string &name);

/// First-order infidelity of the single-bit framework: every term of the
/// general theorem with its big-O constant.
FidelityBreakdown general_infidelity(const CostShape &s, const ErrorRates &rates, const CostConstants &c = {});
FidelityBreakdown general_infidelity(const ArchParams &p, const ErrorRates &rates, const CostConstants &c = {});

/// Planar bucket-brigade form with survival exponents
/// P_L = 3T(T-1)/2, P_s = 2T, P_cs = T(T+1), P_I = T^3 or the path idle total
/// of a schedule when one is given.
FidelityBreakdown bucket_brigade_infidelity(uint64_t N, const ErrorRates &rates, const Circuit *circuit = nullptr,
                                            const Schedule *schedule = nullptr);

/// Parallel: b copies plus the fan-out terms; sequential: b copies plus the
/// word-transfer idle term. b = 1 reduces to general_infidelity.
FidelityBreakdown multi_bit_infidelity(const CostShape &s, const ErrorRates &rates, const CostConstants &c = {});
FidelityBreakdown multi_bit_infidelity(const ArchParams &p, const ErrorRates &rates, const CostConstants &c = {});

/// Long-range free budget on the top k levels. The long-range terms are
/// replaced by the two epsQ branches (k <= dPrime and dPrime < k <= n - d).
/// Throws KOutOfRange.
FidelityBreakdown budgeted_infidelity(const CostShape &s, const ErrorRates &rates, int k, const CostConstants &c = {});
FidelityBreakdown budgeted_infidelity(const ArchParams &p, const ErrorRates &rates, int k, const CostConstants &c = {});
/// Bucket-brigade variant: 2^(-k/2) log N sqrt(N) epsQ + log N epsS
/// + log^2 N epsCS + log^2 N epsI.
FidelityBreakdown budgeted_bucket_brigade_infidelity(int n, const ErrorRates &rates, int k);

enum class TCountForm {
    /// 2^d (2^d' + 1) + 2^(n-d): unary iteration costs O(1) amortized per step.
    Amortized,
    /// 2^d (2^d' + d) + 2^(n-d).
    Printed,
};

double t_count_formula(const CostShape &s, TCountForm form = TCountForm::Amortized);
double t_count_formula(const ArchParams &p, TCountForm form = TCountForm::Amortized);
double qubit_count_formula(const CostShape &s);
double qubit_count_formula(const ArchParams &p);
double depth_formula(const CostShape &s);
double depth_formula(const ArchParams &p);

struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    /// Half width of the 95% confidence interval of the slope.
    double ci = 0;
    size_t points = 0;
};

/// Least-squares slope of log2(value) against log2(size).
/// Throws DegenerateInput for fewer than 5 points, non-positive values or a
/// single distinct size.
ExponentFit fit_exponent(const std::vector<double> &sizes, const std::vector<double> &values);

}  // namespace qlut

#endif
