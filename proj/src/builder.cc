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

#include "qlut/builder.h"

#include <bit>

#include "builder_internal.h"

namespace qlut {
namespace internal {

void Seq::add(GateKind kind, std::initializer_list<uint32_t> operands, int link_level) {
    Gate g;
    g.kind = kind;
    g.arity = (uint8_t)operands.size();
    if ((int)g.arity != gate_arity(kind)) {
        throw QlutError(ErrorCode::Internal, std::string("bad arity for ") + gate_kind_name(kind));
    }
    size_t k = 0;
    for (uint32_t q : operands) {
        g.q[k++] = q;
    }
    g.link_level = link_level;
    ops.push_back(g);
}

void Seq::append(const Seq &other) {
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

void emit(Circuit &c, const Seq &s, StageTag stage, bool reversed) {
    size_t n = s.ops.size();
    for (size_t k = 0; k < n; k++) {
        Gate g = s.ops[reversed ? n - 1 - k : k];
        for (int j = 0; j < g.arity; j++) {
            if (g.q[j] >= c.qubits.size()) {
                throw QlutError(ErrorCode::Internal, "operand out of range");
            }
        }
        g.stage = stage;
        c.gates.push_back(g);
    }
}

void router_ops(Seq &s, uint32_t t, uint32_t in, uint32_t left, uint32_t right, bool merged) {
    if (!merged) {
        s.add(GateKind::X, {t});
        s.add(GateKind::CSWAP, {t, in, left});
        s.add(GateKind::X, {t});
    }
    s.add(GateKind::CSWAP, {t, in, right});
}

void cnot_tree_ops(Seq &s, uint32_t root, const std::vector<uint32_t> &leaves, bool input_as_output) {
    std::vector<uint32_t> outs;
    if (input_as_output) {
        outs.push_back(root);
    } else if (!leaves.empty()) {
        s.add(GateKind::CNOT, {root, leaves[0]});
    }
    outs.insert(outs.end(), leaves.begin(), leaves.end());
    for (size_t have = 1; have < outs.size(); have *= 2) {
        for (size_t k = 0; k < have && have + k < outs.size(); k++) {
            s.add(GateKind::CNOT, {outs[k], outs[have + k]});
        }
    }
}

UnaryIterator::UnaryIterator(std::vector<uint32_t> address, std::vector<uint32_t> ancillas, uint32_t q)
    : a_(std::move(address)), w_(std::move(ancillas)) {
    w_.push_back(q);
    if (w_.size() != a_.size() && !a_.empty()) {
        throw QlutError(ErrorCode::Internal, "unary iterator needs d-1 ancillas");
    }
}

// w_z for z in 1..d lives at w_[z-1]; bit z-1 of i (MSB first) selects it.
bool UnaryIterator::bit(uint64_t i, int z) const {
    int d = (int)a_.size();
    return (i >> (d - z)) & 1;
}

void UnaryIterator::toggle(Seq &s, int z, uint64_t i) const {
    bool b = bit(i, z);
    if (z == 1) {
        s.add(GateKind::CNOT, {a_[0], w_[0]});
        if (!b) {
            s.add(GateKind::X, {w_[0]});
        }
        return;
    }
    if (!b) {
        s.add(GateKind::X, {a_[z - 1]});
    }
    s.add(GateKind::CCNOT, {w_[z - 2], a_[z - 1], w_[z - 1]});
    if (!b) {
        s.add(GateKind::X, {a_[z - 1]});
    }
}

void UnaryIterator::compute(Seq &s, uint64_t i) const {
    int d = (int)a_.size();
    if (d == 0) {
        s.add(GateKind::X, {w_[0]});
        return;
    }
    for (int z = 1; z <= d; z++) {
        toggle(s, z, i);
    }
}

void UnaryIterator::uncompute(Seq &s, uint64_t i) const {
    int d = (int)a_.size();
    if (d == 0) {
        s.add(GateKind::X, {w_[0]});
        return;
    }
    for (int z = d; z >= 1; z--) {
        toggle(s, z, i);
    }
}

void UnaryIterator::advance(Seq &s, uint64_t i) const {
    int d = (int)a_.size();
    // a_p is the most significant bit flipping between i and i+1.
    int p = d - 1 - std::countr_one(i);
    if (p < 0) {
        throw QlutError(ErrorCode::Internal, "unary iterator overflow");
    }
    for (int z = d; z >= p + 2; z--) {
        toggle(s, z, i);
    }
    if (p == 0) {
        s.add(GateKind::X, {w_[0]});
    } else {
        s.add(GateKind::CNOT, {w_[p - 1], w_[p]});
    }
    for (int z = p + 2; z <= d; z++) {
        toggle(s, z, i + 1);
    }
}

}  // namespace internal

using internal::emit;
using internal::Seq;

void build_cswap_router(Circuit &c, uint32_t t, uint32_t in, uint32_t left, uint32_t right, StageTag stage,
                        bool merged) {
    Seq s;
    internal::router_ops(s, t, in, left, right, merged);
    emit(c, s, stage);
}

void build_linear_routers(Circuit &c, const std::vector<uint32_t> &address_bits, const std::vector<uint32_t> &ancillas,
                          uint32_t q, uint64_t i, StageTag stage) {
    Seq s;
    internal::UnaryIterator(address_bits, ancillas, q).compute(s, i);
    emit(c, s, stage);
}

void build_cnot_tree(Circuit &c, uint32_t root, const std::vector<uint32_t> &leaves, StageTag stage,
                     bool input_as_output) {
    Seq s;
    internal::cnot_tree_ops(s, root, leaves, input_as_output);
    emit(c, s, stage);
}

namespace {

enum class Mode { Single, Parallel, Sequential };

/// One CSWAP/CNOT tree with its input, bus and per-slot registers.
struct Copy {
    uint32_t P = 0;
    uint32_t out = 0;
    uint32_t q = 0;
    std::vector<std::vector<size_t>> lvl;
    /// Outputs of the CSWAP part, 2^dPrime entries.
    std::vector<uint32_t> top_out;
    /// Per slot: source of the data CNOTs, readout location, result register.
    std::vector<uint32_t> loader;
    std::vector<uint32_t> read;
    std::vector<uint32_t> reg;
    /// Sequential readout with b >= 2: [slot][w].
    std::vector<std::vector<uint32_t>> seq_reg;
    std::vector<std::vector<uint32_t>> seq_node;
    std::vector<uint32_t> reset_nodes;
};

class Engine {
   public:
    Engine(const ArchParams &p, const DataTable &t, const BuildOptions &o, Mode m) : p_(p), opt_(o), mode_(m) {
        t.validate(p.N);
        if (t.b != p.b) {
            throw QlutError(ErrorCode::InvalidTable, "table word size differs from b");
        }
        if (m == Mode::Single && p.b != 1) {
            throw QlutError(ErrorCode::InvalidParams, "single-bit readout requires b=1");
        }
        c_.params = p;
        c_.data = t;
        c_.kind = m == Mode::Single ? "unified" : m == Mode::Parallel ? "parallel" : "sequential";
    }

    Circuit run() {
        allocate();
        for (auto &cp : cp_) {
            stage_one(cp);
        }
        for (uint64_t i = 0; i < p_.repetitions(); i++) {
            stage_two(i);
        }
        stage_three();
        c_.finalize();
        c_.check_invariants();
        return std::move(c_);
    }

   private:
    const ArchParams p_;
    const BuildOptions opt_;
    const Mode mode_;
    Circuit c_;
    std::vector<uint32_t> lin_;
    uint32_t q0_ = 0;
    std::vector<Copy> cp_;
    std::vector<uint32_t> seq_out_;

    int T() const {
        return p_.tree_depth();
    }
    bool seq_multi() const {
        return mode_ == Mode::Sequential && p_.b > 1;
    }
    const RouterRec &router(const Copy &cp, int level, uint64_t pos) const {
        return c_.routers[cp.lvl[level][pos]];
    }

    void allocate() {
        int n = p_.n;
        for (int j = 0; j < n; j++) {
            c_.address.push_back(c_.add_qubit({Role::AddressBit, -1, j, 0}));
        }
        for (int z = 1; z < p_.d; z++) {
            lin_.push_back(c_.add_qubit({Role::LinearRouter, -1, z, 0}));
        }
        int copies = mode_ == Mode::Parallel ? (int)p_.b : 1;
        cp_.resize(copies);
        for (int w = 0; w < copies; w++) {
            allocate_copy(cp_[w], w);
            c_.outputs.push_back(cp_[w].out);
        }
        q0_ = cp_[0].q;
        if (mode_ == Mode::Sequential) {
            for (int w = 1; w < (int)p_.b; w++) {
                uint32_t o = c_.add_qubit({Role::Bus, -1, -1, w});
                seq_out_.push_back(o);
                c_.outputs.push_back(o);
            }
            seq_out_.insert(seq_out_.begin(), cp_[0].out);
        }
    }

    void allocate_copy(Copy &cp, int w) {
        int T = this->T();
        int dp = p_.dPrime;
        uint64_t lambda = p_.lambda;
        cp.q = c_.add_qubit({Role::ControlQ, -1, -1, w});
        cp.P = c_.add_qubit({Role::Input, -1, -1, w});
        cp.out = c_.add_qubit({Role::Bus, -1, -1, w});
        bool leaf_regs = p_.g() >= 1 && !seq_multi();
        cp.lvl.resize(T);
        for (int l = 0; l < T; l++) {
            for (uint64_t pos = 0; pos < (uint64_t{1} << l); pos++) {
                RouterRec r;
                r.word = w;
                r.level = l;
                r.pos = (int)pos;
                r.merged = opt_.merged_routers && l < dp;
                r.t = c_.add_qubit({Role::RouterStatus, l, (int)pos, w});
                r.in = c_.add_qubit({Role::RouterInput, l, (int)pos, w});
                if (l == T - 1 && leaf_regs) {
                    r.left = c_.add_qubit({Role::IntermediateQ, -1, (int)(2 * pos), w});
                    r.right = c_.add_qubit({Role::IntermediateQ, -1, (int)(2 * pos + 1), w});
                } else {
                    r.left = r.merged ? r.in : c_.add_qubit({Role::RouterLeft, l, (int)pos, w});
                    r.right = c_.add_qubit({Role::RouterRight, l, (int)pos, w});
                }
                cp.lvl[l].push_back(c_.routers.size());
                c_.routers.push_back(r);
            }
        }
        // Outputs of the CSWAP part.
        if (dp == 0) {
            cp.top_out.push_back(cp.P);
        } else {
            for (size_t idx : cp.lvl[dp - 1]) {
                cp.top_out.push_back(c_.routers[idx].left);
                cp.top_out.push_back(c_.routers[idx].right);
            }
        }
        cp.loader.resize(lambda);
        cp.read.resize(lambda);
        for (uint64_t j = 0; j < lambda; j++) {
            if (p_.g() == 0) {
                cp.loader[j] = cp.read[j] = cp.top_out[j];
            } else {
                const RouterRec &leaf = router(cp, T - 1, j / 2);
                cp.loader[j] = leaf.in;
                cp.read[j] = j % 2 ? leaf.right : leaf.left;
            }
        }
        if (seq_multi()) {
            cp.seq_reg.resize(lambda);
            cp.seq_node.resize(lambda);
            for (uint64_t j = 0; j < lambda; j++) {
                for (int b = 0; b < (int)p_.b; b++) {
                    cp.seq_node[j].push_back(c_.add_qubit({Role::CnotTreeNode, -1, (int)j, b}));
                    cp.seq_reg[j].push_back(c_.add_qubit({Role::IntermediateQ, -1, (int)j, b}));
                }
            }
        } else if (p_.g() == 0) {
            for (uint64_t j = 0; j < lambda; j++) {
                cp.reg.push_back(c_.add_qubit({Role::IntermediateQ, -1, (int)j, w}));
            }
        } else {
            cp.reg = cp.read;
        }
        for (int l = dp; l < T; l++) {
            for (size_t idx : cp.lvl[l]) {
                const RouterRec &r = c_.routers[idx];
                cp.reset_nodes.push_back(r.in);
                if (l < T - 1) {
                    cp.reset_nodes.push_back(r.left);
                    cp.reset_nodes.push_back(r.right);
                }
            }
        }
        for (auto &nodes : cp.seq_node) {
            cp.reset_nodes.insert(cp.reset_nodes.end(), nodes.begin(), nodes.end());
        }
    }

    void cswap_level(Seq &s, const Copy &cp, int l) const {
        for (size_t idx : cp.lvl[l]) {
            const RouterRec &r = c_.routers[idx];
            internal::router_ops(s, r.t, r.in, r.left, r.right, r.merged);
        }
    }

    void link_level(Seq &s, const Copy &cp, int l, GateKind kind) const {
        for (uint64_t pos = 0; pos < cp.lvl[l].size(); pos++) {
            const RouterRec &r = router(cp, l, pos);
            s.add(kind, {r.left, router(cp, l + 1, 2 * pos).in}, l);
            s.add(kind, {r.right, router(cp, l + 1, 2 * pos + 1).in}, l);
        }
    }

    /// Moves the content of P to the inputs of every level-l router on the
    /// addressed path.
    void route_to_ins(Seq &s, const Copy &cp, int l) const {
        s.add(GateKind::SWAP, {cp.P, router(cp, 0, 0).in});
        for (int k = 0; k < l; k++) {
            cswap_level(s, cp, k);
            link_level(s, cp, k, GateKind::LongRangeSWAP);
        }
    }

    void route_to_outputs(Seq &s, const Copy &cp, int depth) const {
        if (depth == 0) {
            return;
        }
        route_to_ins(s, cp, depth - 1);
        cswap_level(s, cp, depth - 1);
    }

    /// Writes a_{d+l} into the status of every level-l router.
    void set_level(Seq &s, const Copy &cp, int l) const {
        s.add(GateKind::CNOT, {c_.address[p_.d + l], cp.P});
        route_to_ins(s, cp, l);
        for (size_t idx : cp.lvl[l]) {
            const RouterRec &r = c_.routers[idx];
            s.add(GateKind::SWAP, {r.in, r.t});
        }
    }

    void stage_one(const Copy &cp) {
        Seq s;
        for (int l = 0; l < p_.dPrime; l++) {
            set_level(s, cp, l);
        }
        emit(c_, s, {Phase::I, 0, false});
    }

    void diffuse(Seq &s, const Copy &cp) const {
        int T = this->T();
        int dp = p_.dPrime;
        for (uint64_t m = 0; p_.g() >= 1 && m < cp.top_out.size(); m++) {
            uint32_t root_in = router(cp, dp, m).in;
            if (dp == 0) {
                s.add(GateKind::CNOT, {cp.top_out[m], root_in});
            } else {
                s.add(GateKind::LongRangeCNOT, {cp.top_out[m], root_in}, dp - 1);
            }
        }
        for (int l = dp; l < T - 1; l++) {
            for (size_t idx : cp.lvl[l]) {
                const RouterRec &r = c_.routers[idx];
                s.add(GateKind::CNOT, {r.in, r.left});
                s.add(GateKind::CNOT, {r.in, r.right});
            }
            link_level(s, cp, l, GateKind::LongRangeCNOT);
        }
        if (seq_multi()) {
            for (uint64_t j = 0; j < p_.lambda; j++) {
                internal::cnot_tree_ops(s, cp.loader[j], cp.seq_node[j], false);
            }
        }
    }

    void load(Seq &s, const Copy &cp, int word, uint64_t i) const {
        for (uint64_t j = 0; j < p_.lambda; j++) {
            uint64_t idx = p_.lambda * i + j;
            if (seq_multi()) {
                for (int w = 0; w < (int)p_.b; w++) {
                    if (c_.data.bit(idx, w)) {
                        s.add(GateKind::CNOT, {cp.seq_node[j][w], cp.seq_reg[j][w]});
                    }
                }
            } else if (c_.data.bit(idx, word)) {
                s.add(GateKind::CNOT, {cp.loader[j], cp.reg[j]});
            }
        }
    }

    void stage_two(uint64_t i) {
        StageTag tag{Phase::II, (int)i, false};
        internal::UnaryIterator unary(
            std::vector<uint32_t>(c_.address.begin(), c_.address.begin() + p_.d), lin_, q0_);
        Seq s;
        if (i == 0) {
            unary.compute(s, 0);
        } else {
            unary.advance(s, i - 1);
        }
        Seq fan;
        for (size_t w = 1; w < cp_.size(); w++) {
            fan.add(GateKind::LongRangeCNOT, {q0_, cp_[w].q});
        }
        s.append(fan);
        emit(c_, s, tag);

        for (size_t w = 0; w < cp_.size(); w++) {
            const Copy &cp = cp_[w];
            Seq down;
            down.add(GateKind::SWAP, {cp.q, cp.P});
            route_to_outputs(down, cp, p_.dPrime);
            diffuse(down, cp);
            Seq data;
            load(data, cp, (int)w, i);
            emit(c_, down, tag);
            emit(c_, data, tag);
            emit(c_, down, tag, true);
        }

        Seq tail;
        tail.append(fan);
        if (i + 1 == p_.repetitions()) {
            unary.uncompute(tail, i);
        }
        if (opt_.resets) {
            for (const auto &cp : cp_) {
                for (uint32_t node : cp.reset_nodes) {
                    tail.add(GateKind::Reset, {node});
                }
            }
        }
        emit(c_, tail, tag);
    }

    void stage_three() {
        int T = this->T();
        for (size_t w = 0; w < cp_.size(); w++) {
            const Copy &cp = cp_[w];
            StageTag tag{Phase::III, (int)w, false};
            Seq setup;
            for (int l = p_.dPrime; l < T; l++) {
                set_level(setup, cp, l);
            }
            emit(c_, setup, tag);
            if (!seq_multi()) {
                Seq swaps;
                if (p_.g() == 0) {
                    for (uint64_t j = 0; j < p_.lambda; j++) {
                        swaps.add(GateKind::SWAP, {cp.reg[j], cp.read[j]});
                    }
                }
                Seq route;
                route_to_outputs(route, cp, T);
                emit(c_, swaps, tag);
                emit(c_, route, tag, true);
                Seq copy;
                copy.add(GateKind::CNOT, {cp.P, cp.out});
                emit(c_, copy, tag);
                continue;
            }
            for (int b = 0; b < (int)p_.b; b++) {
                StageTag wt{Phase::III, b, false};
                Seq swaps;
                for (uint64_t j = 0; j < p_.lambda; j++) {
                    swaps.add(GateKind::SWAP, {cp.seq_reg[j][b], cp.read[j]});
                }
                Seq route;
                route_to_outputs(route, cp, T);
                emit(c_, swaps, wt);
                emit(c_, route, wt, true);
                Seq copy;
                copy.add(GateKind::CNOT, {cp.P, seq_out_[b]});
                emit(c_, copy, wt);
                if (b + 1 < (int)p_.b) {
                    emit(c_, route, wt);
                    emit(c_, swaps, wt, true);
                }
            }
        }
    }
};

}  // namespace

Circuit build_unified_lookup(const ArchParams &params, const DataTable &table, const BuildOptions &options) {
    return Engine(params, table, options, Mode::Single).run();
}

Circuit build_multi_bit_parallel(const ArchParams &params, const DataTable &table, const BuildOptions &options) {
    return Engine(params, table, options, Mode::Parallel).run();
}

Circuit build_multi_bit_sequential(const ArchParams &params, const DataTable &table, const BuildOptions &options) {
    return Engine(params, table, options, Mode::Sequential).run();
}

Circuit build_lookup(const ArchParams &params, const DataTable &table, const BuildOptions &options) {
    switch (params.readout) {
        case Readout::SingleBit:
            return build_unified_lookup(params, table, options);
        case Readout::ParallelMultiBit:
            return build_multi_bit_parallel(params, table, options);
        case Readout::SequentialMultiBit:
            return build_multi_bit_sequential(params, table, options);
    }
    throw QlutError(ErrorCode::Internal, "unknown readout");
}

Circuit build_uncompute(const Circuit &circuit) {
    Circuit c = circuit;
    std::vector<Gate> one, two, three;
    for (const auto &g : circuit.gates) {
        if (g.stage.uncompute) {
            throw QlutError(ErrorCode::InvalidParams, "circuit already contains an uncompute part");
        }
        switch (g.stage.phase) {
            case Phase::I:
                one.push_back(g);
                break;
            case Phase::II:
                two.push_back(g);
                break;
            case Phase::III:
                if (!(g.kind == GateKind::CNOT && circuit.qubits[g.q[1]].role == Role::Bus)) {
                    three.push_back(g);
                }
                break;
        }
    }
    auto push = [&](Gate g) {
        g.stage.uncompute = true;
        g.layer = -1;
        c.gates.push_back(g);
    };
    for (auto it = three.rbegin(); it != three.rend(); ++it) {
        push(*it);
    }
    for (const auto &g : two) {
        push(g);
    }
    for (auto it = one.rbegin(); it != one.rend(); ++it) {
        push(*it);
    }
    c.finalize();
    return c;
}

}  // namespace qlut
