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

#include "qlut/circuit.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qlut {

const char *role_name(Role r) {
    switch (r) {
        case Role::AddressBit:
            return "AddressBit";
        case Role::RouterStatus:
            return "RouterStatus";
        case Role::RouterInput:
            return "RouterInput";
        case Role::RouterLeft:
            return "RouterLeft";
        case Role::RouterRight:
            return "RouterRight";
        case Role::LinearRouter:
            return "LinearRouter";
        case Role::ControlQ:
            return "ControlQ";
        case Role::IntermediateQ:
            return "IntermediateQ";
        case Role::CnotTreeNode:
            return "CnotTreeNode";
        case Role::Bus:
            return "Bus";
        case Role::Input:
            return "Input";
        case Role::GhzAncilla:
            return "GhzAncilla";
        case Role::BellAncilla:
            return "BellAncilla";
    }
    return "?";
}

std::string QubitRole::label() const {
    std::ostringstream out;
    out << role_name(role) << "[" << level << "," << pos << "," << word << "]";
    return out.str();
}

const char *gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::X:
            return "X";
        case GateKind::Z:
            return "Z";
        case GateKind::H:
            return "H";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::SWAP:
            return "SWAP";
        case GateKind::CSWAP:
            return "CSWAP";
        case GateKind::CCNOT:
            return "CCNOT";
        case GateKind::ClassicallyControlledX:
            return "CX_CLASSICAL";
        case GateKind::Reset:
            return "RESET";
        case GateKind::LongRangeCNOT:
            return "LR_CNOT";
        case GateKind::LongRangeSWAP:
            return "LR_SWAP";
    }
    return "?";
}

int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::X:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::ClassicallyControlledX:
        case GateKind::Reset:
            return 1;
        case GateKind::CNOT:
        case GateKind::SWAP:
        case GateKind::LongRangeCNOT:
        case GateKind::LongRangeSWAP:
            return 2;
        case GateKind::CSWAP:
        case GateKind::CCNOT:
            return 3;
    }
    return 0;
}

bool is_long_range_kind(GateKind k) {
    return k == GateKind::LongRangeCNOT || k == GateKind::LongRangeSWAP;
}

std::string StageTag::str() const {
    std::string s = uncompute ? "U-" : "";
    switch (phase) {
        case Phase::I:
            return s + "I";
        case Phase::II:
            return s + "II:" + std::to_string(index);
        case Phase::III:
            return s + "III:" + std::to_string(index);
    }
    return s;
}

uint32_t Circuit::add_qubit(QubitRole role) {
    qubits.push_back(role);
    return (uint32_t)(qubits.size() - 1);
}

void Circuit::append(GateKind kind, std::initializer_list<uint32_t> operands, StageTag stage, int link_level) {
    Gate g;
    g.kind = kind;
    g.arity = (uint8_t)operands.size();
    if ((int)g.arity != gate_arity(kind)) {
        throw QlutError(ErrorCode::Internal, std::string("bad arity for ") + gate_kind_name(kind));
    }
    size_t k = 0;
    for (uint32_t q : operands) {
        if (q >= qubits.size()) {
            throw QlutError(ErrorCode::Internal, "operand out of range");
        }
        g.q[k++] = q;
    }
    g.stage = stage;
    g.link_level = link_level;
    gates.push_back(g);
}

void Circuit::finalize() {
    std::vector<int> last(qubits.size(), -1);
    for (auto &g : gates) {
        int layer = 0;
        for (int k = 0; k < g.arity; k++) {
            layer = std::max(layer, last[g.q[k]] + 1);
        }
        g.layer = layer;
        for (int k = 0; k < g.arity; k++) {
            last[g.q[k]] = layer;
        }
    }
    std::stable_sort(gates.begin(), gates.end(), [](const Gate &a, const Gate &b) {
        return a.layer < b.layer;
    });
}

int Circuit::depth() const {
    return gates.empty() ? 0 : gates.back().layer + 1;
}

uint32_t Circuit::find(const QubitRole &role) const {
    for (size_t k = 0; k < qubits.size(); k++) {
        if (qubits[k] == role) {
            return (uint32_t)k;
        }
    }
    throw QlutError(ErrorCode::Internal, "no qubit with role " + role.label());
}

void Circuit::check_invariants() const {
    int cur = -1;
    std::set<uint32_t> used;
    for (const auto &g : gates) {
        if (g.layer < cur) {
            throw QlutError(ErrorCode::Internal, "gates not layer ordered");
        }
        if (g.layer != cur) {
            cur = g.layer;
            used.clear();
        }
        for (int k = 0; k < g.arity; k++) {
            if (!used.insert(g.q[k]).second) {
                throw QlutError(ErrorCode::Internal, "qubit used twice in layer " + std::to_string(g.layer));
            }
        }
        if (g.arity > 3) {
            throw QlutError(ErrorCode::Internal, "gate touches more than three qubits");
        }
    }
    for (const auto &r : routers) {
        std::set<uint32_t> parts{r.t, r.in, r.left, r.right};
        if (parts.size() != (r.merged ? 3u : 4u)) {
            throw QlutError(ErrorCode::Internal, "incomplete router quadruple");
        }
    }
    std::set<int> reps;
    for (const auto &g : gates) {
        if (g.stage.phase == Phase::II && !g.stage.uncompute) {
            reps.insert(g.stage.index);
        }
    }
    bool staged = kind == "unified" || kind == "parallel" || kind == "sequential";
    if (staged && reps.size() != params.repetitions()) {
        throw QlutError(ErrorCode::Internal, "stage II repetition count mismatch");
    }
}

Decomposition Decomposition::parse(const std::string &name) {
    if (name == "t7") {
        return {7, 7};
    }
    if (name == "t4") {
        return {4, 4};
    }
    throw QlutError(ErrorCode::InvalidParams, "unknown decomposition '" + name + "'");
}

ResourceCounts count_resources(const Circuit &c, const Decomposition &dec) {
    ResourceCounts r;
    r.qubitCount = c.num_qubits();
    r.queryDepth = (uint64_t)c.depth();
    for (const auto &g : c.gates) {
        r.gateHistogram[gate_kind_name(g.kind)]++;
        if (g.kind == GateKind::CSWAP) {
            r.tCount += (uint64_t)dec.t_per_cswap;
        } else if (g.kind == GateKind::CCNOT) {
            r.tCount += (uint64_t)dec.t_per_ccnot;
        }
    }
    return r;
}

std::string export_gate_list(const Circuit &c) {
    std::ostringstream out;
    for (const auto &g : c.gates) {
        out << "LAYER " << g.layer << " STAGE " << g.stage.str() << " " << gate_kind_name(g.kind);
        for (int k = 0; k < g.arity; k++) {
            out << " " << g.q[k];
        }
        if (g.length > 0) {
            out << " len=" << g.length;
        }
        out << "\n";
    }
    return out.str();
}

std::map<std::string, int> gate_multiset(const Circuit &c) {
    std::map<std::string, int> m;
    for (const auto &g : c.gates) {
        std::string key = gate_kind_name(g.kind);
        key += "|";
        key += g.stage.str();
        for (int k = 0; k < g.arity; k++) {
            key += "|" + c.qubits[g.q[k]].label();
        }
        m[key]++;
    }
    return m;
}

}  // namespace qlut
