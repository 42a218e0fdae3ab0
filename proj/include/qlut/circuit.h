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

#ifndef QLUT_CIRCUIT_H
#define QLUT_CIRCUIT_H

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlut/params.h"

namespace qlut {

enum class Role {
    AddressBit,
    RouterStatus,
    RouterInput,
    RouterLeft,
    RouterRight,
    LinearRouter,
    ControlQ,
    IntermediateQ,
    CnotTreeNode,
    Bus,
    Input,
    GhzAncilla,
    BellAncilla,
};

const char *role_name(Role r);

/// Role of a qubit plus its structural coordinates. Unused coordinates are -1.
struct QubitRole {
    Role role;
    int level = -1;
    int pos = -1;
    int word = 0;

    bool operator==(const QubitRole &other) const = default;
    auto operator<=>(const QubitRole &other) const = default;
    std::string label() const;
};

enum class GateKind {
    X,
    Z,
    H,
    CNOT,
    SWAP,
    CSWAP,
    CCNOT,
    ClassicallyControlledX,
    Reset,
    LongRangeCNOT,
    LongRangeSWAP,
};

const char *gate_kind_name(GateKind k);
int gate_arity(GateKind k);
bool is_long_range_kind(GateKind k);

enum class Phase { I, II, III };

struct StageTag {
    Phase phase = Phase::I;
    /// Repetition index for stage II, word index for stage III, unused for I.
    int index = 0;
    bool uncompute = false;

    std::string str() const;
    bool operator==(const StageTag &other) const = default;
    auto operator<=>(const StageTag &other) const = default;
};

/// One gate event. Operands are ordered: controls first, targets last
/// (CSWAP: control, a, b).
struct Gate {
    GateKind kind;
    std::array<uint32_t, 3> q{};
    uint8_t arity = 0;
    int layer = -1;
    StageTag stage;
    /// Tree depth of the parent router for inter-level links, -1 otherwise.
    int link_level = -1;
    /// Classical bit for ClassicallyControlledX.
    bool cbit = false;
    /// Resolved long-range path length m once a layout is attached, 0 otherwise.
    int length = 0;
};

/// A CSWAP router quadruple. With merged routers left == in.
struct RouterRec {
    int word = 0;
    int level = 0;
    int pos = 0;
    uint32_t t = 0;
    uint32_t in = 0;
    uint32_t left = 0;
    uint32_t right = 0;
    bool merged = false;
};

class Circuit {
   public:
    ArchParams params;
    DataTable data;
    std::vector<QubitRole> qubits;
    std::vector<Gate> gates;
    std::vector<RouterRec> routers;
    /// Address qubits a_0 .. a_{n-1}.
    std::vector<uint32_t> address;
    /// Output (bus) qubit of each word bit.
    std::vector<uint32_t> outputs;
    /// Free-form tag naming the builder ("unified", "reference:BucketBrigade", ...).
    std::string kind;

    uint32_t add_qubit(QubitRole role);
    void append(GateKind kind, std::initializer_list<uint32_t> operands, StageTag stage, int link_level = -1);
    /// Assigns as-soon-as-possible layers and sorts gates by (layer, insertion).
    void finalize();

    size_t num_qubits() const {
        return qubits.size();
    }
    int depth() const;
    /// First qubit with the given role, throws Internal if absent.
    uint32_t find(const QubitRole &role) const;
    /// Checks the structural invariants: layer disjointness, router completeness,
    /// arity limits, repetition count. Throws Internal on violation.
    void check_invariants() const;
};

struct Decomposition {
    int t_per_cswap = 7;
    int t_per_ccnot = 7;

    static Decomposition parse(const std::string &name);
};

struct ResourceCounts {
    uint64_t tCount = 0;
    uint64_t qubitCount = 0;
    uint64_t queryDepth = 0;
    std::map<std::string, uint64_t> gateHistogram;
};

ResourceCounts count_resources(const Circuit &c, const Decomposition &dec = {});

/// One gate per line: LAYER <k> STAGE <s> <KIND> <ids...> [len=<m>].
std::string export_gate_list(const Circuit &c);

/// Multiset of gates keyed by kind, stage phase and operand role labels;
/// independent of qubit numbering and layer assignment.
std::map<std::string, int> gate_multiset(const Circuit &c);

}  // namespace qlut

#endif
