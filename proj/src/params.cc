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

#include "qlut/params.h"

#include <bit>
#include <cmath>

namespace qlut {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPowerOfTwo:
            return "NonPowerOfTwo";
        case ErrorCode::OrderingViolation:
            return "OrderingViolation";
        case ErrorCode::InvalidParams:
            return "InvalidParams";
        case ErrorCode::InvalidTable:
            return "InvalidTable";
        case ErrorCode::KOutOfRange:
            return "KOutOfRange";
        case ErrorCode::TooManyQubits:
            return "TooManyQubits";
        case ErrorCode::PlacementOverflow:
            return "PlacementOverflow";
        case ErrorCode::InitialErrorTooLarge:
            return "InitialErrorTooLarge";
        case ErrorCode::DegenerateInput:
            return "DegenerateInput";
        case ErrorCode::ConfigParse:
            return "ConfigParse";
        case ErrorCode::IoError:
            return "IoError";
        case ErrorCode::Internal:
            return "Internal";
    }
    return "Unknown";
}

QlutError::QlutError(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code(code) {
}

const char *readout_name(Readout r) {
    switch (r) {
        case Readout::SingleBit:
            return "SingleBit";
        case Readout::ParallelMultiBit:
            return "ParallelMultiBit";
        case Readout::SequentialMultiBit:
            return "SequentialMultiBit";
    }
    return "?";
}

Readout parse_readout(const std::string &text) {
    if (text == "SingleBit") {
        return Readout::SingleBit;
    }
    if (text == "ParallelMultiBit") {
        return Readout::ParallelMultiBit;
    }
    if (text == "SequentialMultiBit") {
        return Readout::SequentialMultiBit;
    }
    throw QlutError(ErrorCode::InvalidParams, "unknown readout '" + text + "'");
}

const char *specialization_name(Specialization s) {
    switch (s) {
        case Specialization::QROM:
            return "QROM";
        case Specialization::SelectSwapVariant:
            return "SelectSwapVariant";
        case Specialization::BucketBrigade:
            return "BucketBrigade";
        case Specialization::General:
            return "General";
    }
    return "?";
}

bool is_power_of_two(uint64_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

int log2_exact(uint64_t v) {
    if (!is_power_of_two(v)) {
        throw QlutError(ErrorCode::NonPowerOfTwo, std::to_string(v) + " is not a power of two");
    }
    return std::countr_zero(v);
}

ArchParams derive_params(uint64_t N, uint64_t lambda, uint64_t gamma, uint64_t b, Readout readout, int k) {
    for (auto [name, v] : {std::pair{"N", N}, {"lambda", lambda}, {"gamma", gamma}, {"b", b}}) {
        if (!is_power_of_two(v)) {
            throw QlutError(ErrorCode::NonPowerOfTwo, std::string(name) + "=" + std::to_string(v));
        }
    }
    if (gamma > lambda) {
        throw QlutError(ErrorCode::OrderingViolation, "gamma > lambda");
    }
    if (lambda > N) {
        throw QlutError(ErrorCode::OrderingViolation, "lambda > N");
    }
    ArchParams p;
    p.N = N;
    p.n = log2_exact(N);
    p.lambda = lambda;
    p.gamma = gamma;
    p.b = b;
    p.d = p.n - log2_exact(lambda);
    p.dPrime = log2_exact(lambda) - log2_exact(gamma);
    p.dDoublePrime = log2_exact(b);
    p.readout = readout;
    if (k < 0 || k > p.n - p.d) {
        throw QlutError(ErrorCode::OrderingViolation, "k=" + std::to_string(k) + " outside [0, n-d]");
    }
    p.longRangeBudgetK = k;
    if (readout == Readout::SingleBit && b != 1) {
        throw QlutError(ErrorCode::InvalidParams, "SingleBit readout requires b=1");
    }
    return p;
}

Specialization specialization(const ArchParams &p) {
    if (p.lambda == p.N && p.gamma == 1) {
        return Specialization::BucketBrigade;
    }
    if (p.gamma == 1 && p.lambda * p.lambda == p.N) {
        return Specialization::SelectSwapVariant;
    }
    if (p.lambda == 1 && p.gamma == 1) {
        return Specialization::QROM;
    }
    return Specialization::General;
}

void ErrorRates::validate() const {
    const double vals[] = {epsI, epsQ, epsL, epsS, epsCS, epsC, epsCC, epsF, epsInitial};
    for (double v : vals) {
        if (!(v >= 0 && v <= 1)) {
            throw QlutError(ErrorCode::InvalidParams, "error rate outside [0, 1]");
        }
    }
}

ErrorRates ErrorRates::uniform(double eps) {
    ErrorRates r;
    r.epsI = r.epsQ = r.epsL = r.epsS = r.epsCS = r.epsC = r.epsCC = r.epsF = r.epsInitial = eps;
    return r;
}

void DataTable::validate(uint64_t N) const {
    if (words.size() != N) {
        throw QlutError(ErrorCode::InvalidTable, "table has " + std::to_string(words.size()) + " words, expected " +
                                                     std::to_string(N));
    }
    if (b < 64) {
        for (uint64_t w : words) {
            if (w >> b) {
                throw QlutError(ErrorCode::InvalidTable, "word does not fit in b bits");
            }
        }
    }
}

DataTable DataTable::random(uint64_t N, uint64_t b, std::mt19937_64 &rng) {
    DataTable t;
    t.b = b;
    t.words.resize(N);
    uint64_t mask = b >= 64 ? ~uint64_t{0} : ((uint64_t{1} << b) - 1);
    for (auto &w : t.words) {
        w = rng() & mask;
    }
    return t;
}

Address Address::from_value(uint64_t value, int n) {
    Address a;
    a.bits.resize(n);
    for (int j = 0; j < n; j++) {
        a.bits[j] = (value >> (n - 1 - j)) & 1;
    }
    return a;
}

uint64_t Address::value() const {
    return slice(0, (int)bits.size());
}

uint64_t Address::slice(int begin, int end) const {
    uint64_t v = 0;
    for (int j = begin; j < end; j++) {
        v = (v << 1) | bits[j];
    }
    return v;
}

void to_json(nlohmann::json &j, const ArchParams &p) {
    j = nlohmann::json{
        {"N", p.N},
        {"n", p.n},
        {"lambda", p.lambda},
        {"gamma", p.gamma},
        {"b", p.b},
        {"d", p.d},
        {"dPrime", p.dPrime},
        {"dDoublePrime", p.dDoublePrime},
        {"readout", readout_name(p.readout)},
        {"longRangeBudgetK", p.longRangeBudgetK},
    };
}

void from_json(const nlohmann::json &j, ArchParams &p) {
    uint64_t N = j.at("N").get<uint64_t>();
    uint64_t lambda = j.at("lambda").get<uint64_t>();
    uint64_t gamma = j.at("gamma").get<uint64_t>();
    uint64_t b = j.value("b", uint64_t{1});
    Readout r = parse_readout(j.value("readout", std::string("SingleBit")));
    int k = j.value("longRangeBudgetK", 0);
    p = derive_params(N, lambda, gamma, b, r, k);
    // Derived fields are optional; when present they must agree.
    for (auto [key, v] : {std::pair{"n", p.n}, {"d", p.d}, {"dPrime", p.dPrime}, {"dDoublePrime", p.dDoublePrime}}) {
        if (j.contains(key) && j.at(key).get<int>() != v) {
            throw QlutError(ErrorCode::InvalidParams, std::string("inconsistent derived field ") + key);
        }
    }
}

void to_json(nlohmann::json &j, const ErrorRates &r) {
    j = nlohmann::json{
        {"epsI", r.epsI},
        {"epsQ", r.epsQ},
        {"epsL", r.epsL},
        {"epsS", r.epsS},
        {"epsCS", r.epsCS},
        {"epsC", r.epsC},
        {"epsCC", r.epsCC},
        {"epsF", r.epsF},
        {"epsInitial", r.epsInitial},
    };
}

void from_json(const nlohmann::json &j, ErrorRates &r) {
    r = ErrorRates{};
    r.epsI = j.value("epsI", 0.0);
    r.epsQ = j.value("epsQ", 0.0);
    r.epsL = j.value("epsL", 0.0);
    r.epsS = j.value("epsS", 0.0);
    r.epsCS = j.value("epsCS", 0.0);
    r.epsC = j.value("epsC", 0.0);
    r.epsCC = j.value("epsCC", 0.0);
    r.epsF = j.value("epsF", 0.0);
    r.epsInitial = j.value("epsInitial", 0.0);
    r.validate();
}

}  // namespace qlut
