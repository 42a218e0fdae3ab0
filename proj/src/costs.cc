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

#include "qlut/costs.h"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <set>

namespace qlut {

CostShape CostShape::of(const ArchParams &p) {
    return {p.n, p.d, p.dPrime, p.dDoublePrime, p.readout};
}

void CostShape::validate() const {
    if (d < 0 || dPrime < 0 || dDoublePrime < 0 || d + dPrime > n) {
        throw QlutError(ErrorCode::OrderingViolation, "need 0 <= d, 0 <= d' and d + d' <= n");
    }
}

void FidelityBreakdown::sum(const ErrorRates &rates) {
    total = 0;
    for (const auto &[name, coef] : coefficients) {
        total += rate_by_name(rates, name) * coef;
    }
}

double rate_by_name(const ErrorRates &r, const std::string &name) {
    if (name == "epsI") {
        return r.epsI;
    }
    if (name == "epsQ") {
        return r.epsQ;
    }
    if (name == "epsL") {
        return r.epsL;
    }
    if (name == "epsS") {
        return r.epsS;
    }
    if (name == "epsCS") {
        return r.epsCS;
    }
    if (name == "epsC") {
        return r.epsC;
    }
    if (name == "epsCC") {
        return r.epsCC;
    }
    if (name == "epsF") {
        return r.epsF;
    }
    if (name == "epsInitial") {
        return r.epsInitial;
    }
    throw QlutError(ErrorCode::Internal, "unknown rate " + name);
}

namespace {

double p2(double e) {
    return std::exp2(e);
}

/// All terms of the general theorem.
std::map<std::string, double> general_terms(const CostShape &s, const CostConstants &c) {
    double n = s.n, d = s.d, dp = s.dPrime;
    double reps = p2(d);            // N / lambda
    double gamma = p2(n - d - dp);  // CNOT tree size
    double log_lambda = n - d;
    std::map<std::string, double> t;
    t["epsL"] = c.cL * (gamma * reps + reps * dp);
    t["epsS"] = c.cS * (log_lambda + dp);
    t["epsI"] = c.cI * (reps * n * ((d + dp) + gamma + dp) + log_lambda * log_lambda * log_lambda);
    t["epsC"] = c.cC * gamma * reps;
    t["epsCC"] = c.cCC * reps * d;
    t["epsCS"] = c.cCS * (reps * dp + dp * dp + log_lambda * log_lambda);
    return t;
}

}  // namespace

FidelityBreakdown general_infidelity(const CostShape &s, const ErrorRates &rates, const CostConstants &c) {
    s.validate();
    FidelityBreakdown f;
    f.coefficients = general_terms(s, c);
    f.idleModeled = true;
    f.sum(rates);
    return f;
}

FidelityBreakdown general_infidelity(const ArchParams &p, const ErrorRates &rates, const CostConstants &c) {
    if (p.readout != Readout::SingleBit) {
        throw QlutError(ErrorCode::InvalidParams, "general infidelity is defined for single-bit readout");
    }
    return general_infidelity(CostShape::of(p), rates, c);
}

FidelityBreakdown bucket_brigade_infidelity(uint64_t N, const ErrorRates &rates, const Circuit *circuit,
                                            const Schedule *schedule) {
    double T = log2_exact(N);
    FidelityBreakdown f;
    f.survivalExponents["P_L"] = 3 * T * (T - 1) / 2;
    f.survivalExponents["P_s"] = 2 * T;
    f.survivalExponents["P_cs"] = T * (T + 1);
    f.survivalExponents["P_I"] = T * T * T;
    f.idleModeled = true;
    if (circuit && schedule) {
        // Idle time of everything the all-zero address touches.
        std::set<uint32_t> path(circuit->address.begin(), circuit->address.end());
        path.insert(circuit->outputs.begin(), circuit->outputs.end());
        for (const auto &r : circuit->routers) {
            if (r.word == 0 && r.pos == 0) {
                path.insert({r.t, r.in, r.left, r.right});
            }
        }
        for (uint32_t q = 0; q < circuit->num_qubits(); q++) {
            const QubitRole &role = circuit->qubits[q];
            if (role.word == 0 && (role.role == Role::Input || role.role == Role::ControlQ ||
                                   (role.role == Role::IntermediateQ && role.pos == 0))) {
                path.insert(q);
            }
        }
        double idle = 0;
        for (uint32_t q : path) {
            idle += (double)schedule->idle.at(q);
        }
        f.survivalExponents["P_I"] = idle;
        f.idleModeled = false;
    }
    f.coefficients["epsL"] = f.survivalExponents["P_L"];
    f.coefficients["epsS"] = f.survivalExponents["P_s"];
    f.coefficients["epsCS"] = f.survivalExponents["P_cs"];
    f.coefficients["epsI"] = f.survivalExponents["P_I"];
    f.sum(rates);
    return f;
}

FidelityBreakdown multi_bit_infidelity(const CostShape &s, const ErrorRates &rates, const CostConstants &c) {
    s.validate();
    if (s.readout == Readout::SingleBit && s.dDoublePrime != 0) {
        throw QlutError(ErrorCode::InvalidParams, "single-bit readout requires b=1");
    }
    FidelityBreakdown f = general_infidelity(s, rates, c);
    if (s.dDoublePrime == 0) {
        return f;
    }
    double b = p2(s.dDoublePrime);
    for (auto &[name, coef] : f.coefficients) {
        coef *= b;
    }
    double n = s.n, d = s.d, dp = s.dPrime, ddp = s.dDoublePrime;
    if (s.readout == Readout::ParallelMultiBit) {
        // Address bits copied to b trees in stage I, q_i fanned out 2^d times.
        double span = p2((n - d) / 2);
        f.coefficients["epsL"] += c.cL * (b * span * dp + p2(d) * b * span);
    } else {
        // Memory qubits and status bits idle while b bits leave one by one.
        f.coefficients["epsI"] += c.cI * (b + dp) * (b + n - d + ddp);
    }
    f.sum(rates);
    return f;
}

FidelityBreakdown multi_bit_infidelity(const ArchParams &p, const ErrorRates &rates, const CostConstants &c) {
    return multi_bit_infidelity(CostShape::of(p), rates, c);
}

FidelityBreakdown budgeted_infidelity(const CostShape &s, const ErrorRates &rates, int k, const CostConstants &c) {
    s.validate();
    if (k < 0 || k > s.n - s.d) {
        throw QlutError(ErrorCode::KOutOfRange, "k=" + std::to_string(k) + " outside [0, n-d]");
    }
    FidelityBreakdown f;
    f.coefficients = general_terms(s, c);
    f.coefficients.erase("epsL");
    f.idleModeled = true;
    double n = s.n, d = s.d, dp = s.dPrime;
    double N = p2(n);
    double sqrt_lambda = p2((n - d) / 2);
    double gamma_reps = p2(n - dp);
    double shrink = p2(-k / 2.0);
    double q;
    if (k <= s.dPrime) {
        q = shrink * sqrt_lambda + shrink * N / sqrt_lambda + gamma_reps;
    } else {
        q = p2(-k) * N + shrink * sqrt_lambda;
    }
    f.coefficients["epsQ"] = c.cQ * q;
    f.sum(rates);
    return f;
}

FidelityBreakdown budgeted_infidelity(const ArchParams &p, const ErrorRates &rates, int k, const CostConstants &c) {
    return budgeted_infidelity(CostShape::of(p), rates, k, c);
}

FidelityBreakdown budgeted_bucket_brigade_infidelity(int n, const ErrorRates &rates, int k) {
    if (k < 0 || k > n) {
        throw QlutError(ErrorCode::KOutOfRange, "k=" + std::to_string(k) + " outside [0, n]");
    }
    FidelityBreakdown f;
    double logN = n;
    f.coefficients["epsQ"] = p2(-k / 2.0) * logN * p2(n / 2.0);
    f.coefficients["epsS"] = logN;
    f.coefficients["epsCS"] = logN * logN;
    f.coefficients["epsI"] = logN * logN;
    f.idleModeled = true;
    f.sum(rates);
    return f;
}

double t_count_formula(const CostShape &s, TCountForm form) {
    double n = s.n, d = s.d, dp = s.dPrime;
    double b = p2(s.dDoublePrime);
    double reps = p2(d);
    double lambda = p2(n - d);
    if (s.dDoublePrime > 0 && s.readout == Readout::ParallelMultiBit) {
        return reps * d + b * reps * p2(dp) + b * lambda;
    }
    if (s.dDoublePrime > 0 && s.readout == Readout::SequentialMultiBit) {
        return reps * p2(dp) + reps * d + b * lambda;
    }
    double ladder = form == TCountForm::Amortized ? 1 : d;
    return reps * (p2(dp) + ladder) + lambda;
}

double t_count_formula(const ArchParams &p, TCountForm form) {
    return t_count_formula(CostShape::of(p), form);
}

double qubit_count_formula(const CostShape &s) {
    return s.d + p2(s.dDoublePrime) * p2(s.n - s.d);
}

double qubit_count_formula(const ArchParams &p) {
    return qubit_count_formula(CostShape::of(p));
}

double depth_formula(const CostShape &s) {
    double reps = p2(s.d);
    if (s.dDoublePrime == 0) {
        return reps * std::max(s.n, 1);
    }
    double depth = reps * (s.n + s.dDoublePrime);
    if (s.readout == Readout::SequentialMultiBit) {
        depth += p2(s.dDoublePrime);
    }
    return depth;
}

double depth_formula(const ArchParams &p) {
    return depth_formula(CostShape::of(p));
}

ExponentFit fit_exponent(const std::vector<double> &sizes, const std::vector<double> &values) {
    if (sizes.size() != values.size()) {
        throw QlutError(ErrorCode::DegenerateInput, "sizes and values differ in length");
    }
    size_t n = sizes.size();
    if (n < 5) {
        throw QlutError(ErrorCode::DegenerateInput, "need at least 5 points");
    }
    std::vector<double> x(n), y(n);
    for (size_t i = 0; i < n; i++) {
        if (!(sizes[i] > 0) || !(values[i] > 0)) {
            throw QlutError(ErrorCode::DegenerateInput, "sizes and values must be positive");
        }
        x[i] = std::log2(sizes[i]);
        y[i] = std::log2(values[i]);
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= (double)n;
    my /= (double)n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0) {
        throw QlutError(ErrorCode::DegenerateInput, "all sizes are equal");
    }
    ExponentFit f;
    f.points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (size_t i = 0; i < n; i++) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        sse += r * r;
    }
    double se = std::sqrt(sse / (double)(n - 2) / sxx);
    boost::math::students_t dist((double)(n - 2));
    f.ci = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
    return f;
}

}  // namespace qlut
