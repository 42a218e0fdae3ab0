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

// Standalone constructions of the classic architectures. They deliberately
// avoid the unified builder so that the two can be cross-checked.

#include <algorithm>

#include "qlut/builder.h"

namespace qlut {

const char *reference_name(ReferenceKind k) {
    switch (k) {
        case ReferenceKind::FanOut:
            return "FanOut";
        case ReferenceKind::BucketBrigade:
            return "BucketBrigade";
        case ReferenceKind::SelectSwap:
            return "SelectSwap";
    }
    return "?";
}

namespace {

struct Op {
    GateKind kind;
    std::vector<uint32_t> q;
    int link = -1;
};

void put(Circuit &c, const Op &op, StageTag st) {
    Gate g;
    g.kind = op.kind;
    g.arity = (uint8_t)op.q.size();
    std::copy(op.q.begin(), op.q.end(), g.q.begin());
    g.stage = st;
    g.link_level = op.link;
    c.gates.push_back(g);
}

void put_all(Circuit &c, const std::vector<Op> &ops, StageTag st, bool reversed = false) {
    if (reversed) {
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            put(c, *it, st);
        }
    } else {
        for (const auto &op : ops) {
            put(c, op, st);
        }
    }
}

/// Full binary tree of CSWAP routers fed by one input qubit.
class Tree {
   public:
    Tree(Circuit &c, int depth) : c_(c), depth_(depth) {
        q = c.add_qubit({Role::ControlQ, -1, -1, 0});
        P = c.add_qubit({Role::Input, -1, -1, 0});
        out = c.add_qubit({Role::Bus, -1, -1, 0});
        for (int l = 0; l < depth; l++) {
            for (int pos = 0; pos < (1 << l); pos++) {
                RouterRec r;
                r.level = l;
                r.pos = pos;
                r.t = c.add_qubit({Role::RouterStatus, l, pos, 0});
                r.in = c.add_qubit({Role::RouterInput, l, pos, 0});
                r.left = c.add_qubit({Role::RouterLeft, l, pos, 0});
                r.right = c.add_qubit({Role::RouterRight, l, pos, 0});
                c.routers.push_back(r);
            }
        }
        if (depth == 0) {
            leaves.push_back(P);
        }
        for (int pos = 0; depth > 0 && pos < (1 << (depth - 1)); pos++) {
            leaves.push_back(at(depth - 1, pos).left);
            leaves.push_back(at(depth - 1, pos).right);
        }
        for (size_t j = 0; j < leaves.size(); j++) {
            regs.push_back(c.add_qubit({Role::IntermediateQ, -1, (int)j, 0}));
        }
    }

    const RouterRec &at(int level, int pos) const {
        return c_.routers[(size_t)((1 << level) - 1 + pos)];
    }

    /// Sends P down to the inputs of level `level`, or to the leaves when
    /// with_last is set.
    std::vector<Op> route(int level, bool with_last) const {
        std::vector<Op> ops;
        ops.push_back({GateKind::SWAP, {P, at(0, 0).in}});
        for (int l = 0; l <= level && l < depth_; l++) {
            bool last = l == level;
            if (last && !with_last) {
                break;
            }
            for (int pos = 0; pos < (1 << l); pos++) {
                const RouterRec &r = at(l, pos);
                ops.push_back({GateKind::X, {r.t}});
                ops.push_back({GateKind::CSWAP, {r.t, r.in, r.left}});
                ops.push_back({GateKind::X, {r.t}});
                ops.push_back({GateKind::CSWAP, {r.t, r.in, r.right}});
            }
            if (last) {
                break;
            }
            for (int pos = 0; pos < (1 << l); pos++) {
                const RouterRec &r = at(l, pos);
                ops.push_back({GateKind::LongRangeSWAP, {r.left, at(l + 1, 2 * pos).in}, l});
                ops.push_back({GateKind::LongRangeSWAP, {r.right, at(l + 1, 2 * pos + 1).in}, l});
            }
        }
        return ops;
    }

    std::vector<Op> to_leaves() const {
        if (depth_ == 0) {
            return {};
        }
        return route(depth_ - 1, true);
    }

    uint32_t q = 0;
    uint32_t P = 0;
    uint32_t out = 0;
    std::vector<uint32_t> leaves;
    std::vector<uint32_t> regs;

   private:
    Circuit &c_;
    int depth_;
};

Circuit tree_reference(uint64_t N, const DataTable &table, bool fan_out) {
    Circuit c;
    c.params = derive_params(N, N, 1, 1, Readout::SingleBit, 0);
    c.data = table;
    c.kind = std::string("reference:") + (fan_out ? "FanOut" : "BucketBrigade");
    int n = c.params.n;
    for (int j = 0; j < n; j++) {
        c.address.push_back(c.add_qubit({Role::AddressBit, -1, j, 0}));
    }
    Tree tree(c, n);
    c.outputs.push_back(tree.out);

    StageTag one{Phase::I, 0, false};
    for (int l = 0; l < n; l++) {
        if (fan_out) {
            for (int pos = 0; pos < (1 << l); pos++) {
                put(c, {GateKind::CNOT, {c.address[l], tree.at(l, pos).t}}, one);
            }
            continue;
        }
        put(c, {GateKind::CNOT, {c.address[l], tree.P}}, one);
        put_all(c, tree.route(l, false), one);
        for (int pos = 0; pos < (1 << l); pos++) {
            const RouterRec &r = tree.at(l, pos);
            put(c, {GateKind::SWAP, {r.in, r.t}}, one);
        }
    }

    StageTag two{Phase::II, 0, false};
    std::vector<Op> down{{GateKind::SWAP, {tree.q, tree.P}}};
    auto leaves = tree.to_leaves();
    down.insert(down.end(), leaves.begin(), leaves.end());
    put(c, {GateKind::X, {tree.q}}, two);
    put_all(c, down, two);
    for (uint64_t j = 0; j < N; j++) {
        if (table.bit(j, 0)) {
            put(c, {GateKind::CNOT, {tree.leaves[j], tree.regs[j]}}, two);
        }
    }
    put_all(c, down, two, true);
    put(c, {GateKind::X, {tree.q}}, two);

    StageTag three{Phase::III, 0, false};
    for (uint64_t j = 0; j < N; j++) {
        put(c, {GateKind::SWAP, {tree.regs[j], tree.leaves[j]}}, three);
    }
    put_all(c, leaves, three, true);
    put(c, {GateKind::CNOT, {tree.P, tree.out}}, three);
    return c;
}

Circuit select_swap_reference(uint64_t N, const DataTable &table) {
    int n = log2_exact(N);
    int d = (n + 1) / 2;
    uint64_t lambda = N >> d;
    Circuit c;
    c.params = derive_params(N, lambda, 1, 1, Readout::SingleBit, 0);
    c.data = table;
    c.kind = "reference:SelectSwap";
    for (int j = 0; j < n; j++) {
        c.address.push_back(c.add_qubit({Role::AddressBit, -1, j, 0}));
    }
    std::vector<uint32_t> w;
    for (int z = 1; z < d; z++) {
        w.push_back(c.add_qubit({Role::LinearRouter, -1, z, 0}));
    }
    uint32_t q = c.add_qubit({Role::ControlQ, -1, -1, 0});
    uint32_t out = c.add_qubit({Role::Bus, -1, -1, 0});
    c.outputs.push_back(out);
    w.push_back(q);
    std::vector<uint32_t> reg;
    for (uint64_t j = 0; j < lambda; j++) {
        reg.push_back(c.add_qubit({Role::IntermediateQ, -1, (int)j, 0}));
    }

    // Select: recompute the whole ladder for every block. Simple and
    // independent of the incremental iterator in the unified builder.
    auto ladder = [&](uint64_t i) {
        std::vector<Op> ops;
        if (d == 0) {
            ops.push_back({GateKind::X, {q}});
            return ops;
        }
        for (int z = 1; z <= d; z++) {
            bool bit = (i >> (d - z)) & 1;
            if (!bit) {
                ops.push_back({GateKind::X, {c.address[z - 1]}});
            }
            if (z == 1) {
                ops.push_back({GateKind::CNOT, {c.address[0], w[0]}});
            } else {
                ops.push_back({GateKind::CCNOT, {w[z - 2], c.address[z - 1], w[z - 1]}});
            }
            if (!bit) {
                ops.push_back({GateKind::X, {c.address[z - 1]}});
            }
        }
        return ops;
    };
    for (uint64_t i = 0; i < (uint64_t{1} << d); i++) {
        StageTag st{Phase::II, (int)i, false};
        auto lad = ladder(i);
        put_all(c, lad, st);
        for (uint64_t j = 0; j < lambda; j++) {
            if (table.bit(lambda * i + j, 0)) {
                put(c, {GateKind::CNOT, {q, reg[j]}}, st);
            }
        }
        put_all(c, lad, st, true);
    }

    StageTag three{Phase::III, 0, false};
    for (int s = 0; (uint64_t{1} << s) < lambda; s++) {
        uint64_t half = lambda >> (s + 1);
        for (uint64_t j = 0; j < half; j++) {
            put(c, {GateKind::CSWAP, {c.address[d + s], reg[j], reg[j + half]}}, three);
        }
    }
    put(c, {GateKind::CNOT, {reg[0], out}}, three);
    return c;
}

}  // namespace

Circuit build_reference(ReferenceKind kind, uint64_t N, const DataTable &table) {
    log2_exact(N);
    table.validate(N);
    if (table.b != 1) {
        throw QlutError(ErrorCode::InvalidTable, "reference architectures read single-bit words");
    }
    Circuit c;
    switch (kind) {
        case ReferenceKind::FanOut:
            c = tree_reference(N, table, true);
            break;
        case ReferenceKind::BucketBrigade:
            c = tree_reference(N, table, false);
            break;
        case ReferenceKind::SelectSwap:
            c = select_swap_reference(N, table);
            break;
    }
    c.finalize();
    c.check_invariants();
    return c;
}

}  // namespace qlut
