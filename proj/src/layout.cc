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

#include "qlut/layout.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace qlut {

int manhattan(Coord a, Coord b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

void Box::include(Coord c) {
    if (xmax < xmin) {
        xmin = xmax = c.x;
        ymin = ymax = c.y;
        return;
    }
    xmin = std::min(xmin, c.x);
    xmax = std::max(xmax, c.x);
    ymin = std::min(ymin, c.y);
    ymax = std::max(ymax, c.y);
}

std::pair<int, int> GridPlacement::row_col(uint32_t q) const {
    return {frame.ymax - coords[q].y, coords[q].x - frame.xmin};
}

namespace {

Coord operator+(Coord a, Coord b) {
    return {a.x + b.x, a.y + b.y};
}
Coord operator-(Coord a, Coord b) {
    return {a.x - b.x, a.y - b.y};
}
Coord operator*(int s, Coord a) {
    return {s * a.x, s * a.y};
}
Coord rot(Coord p) {
    return {-p.y, p.x};
}

/// Distance from a level-l router to its children in a tree of depth T.
/// Spans halve every two levels; the odd rows alternate between 5 * 2^k and
/// 2^(k+2) so that the two orientations interleave without collisions.
int child_span(int T, int level, Coord dir) {
    int h = T - 2 - level;
    if (h % 2 == 0) {
        return 1 << (h / 2 + 1);
    }
    if (h == 1) {
        return (dir == Coord{0, 1} || dir == Coord{1, 0}) ? 3 : 2;
    }
    return 5 << ((h - 3) / 2);
}

struct RouterGeo {
    Coord in, t, left, right, dir;
};

/// H-tree geometry of a depth-T router tree with root input at `origin`.
/// dir points from the status qubit to the input.
std::vector<std::vector<RouterGeo>> htree_geometry(int T, Coord origin, std::vector<Coord> *red_cells) {
    std::vector<std::vector<RouterGeo>> geo(T);
    for (int l = 0; l < T; l++) {
        geo[l].resize((size_t)1 << l);
    }
    if (T == 0) {
        return geo;
    }
    struct Item {
        int level;
        size_t pos;
        Coord in, dir;
    };
    std::vector<Item> stack{{0, 0, origin, {0, 1}}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        Coord side = rot(it.dir);
        RouterGeo &g = geo[it.level][it.pos];
        g.in = it.in;
        g.dir = it.dir;
        g.t = it.in - it.dir;
        g.left = it.in + side;
        g.right = it.in - side;
        if (it.level + 1 >= T) {
            continue;
        }
        for (int k = 0; k < 2; k++) {
            Coord dv = k == 0 ? side : Coord{0, 0} - side;
            int s = child_span(T, it.level, dv);
            if (red_cells) {
                for (int step = 2; step < s; step++) {
                    red_cells->push_back(it.in + step * dv);
                }
            }
            stack.push_back({it.level + 1, 2 * it.pos + k, it.in + s * dv, Coord{0, 0} - dv});
        }
    }
    return geo;
}

class Placer {
   public:
    explicit Placer(const Circuit &c) : c_(c) {
        p_.coords.assign(c.num_qubits(), Coord{});
        placed_.assign(c.num_qubits(), false);
    }

    GridPlacement run() {
        const auto &qs = c_.qubits;
        std::map<int, uint32_t> input, bus;
        std::map<std::pair<int, int>, uint32_t> intermediate, node;
        for (uint32_t q = 0; q < qs.size(); q++) {
            if (qs[q].role == Role::Input) {
                input[qs[q].word] = q;
            } else if (qs[q].role == Role::Bus) {
                bus[qs[q].word] = q;
            } else if (qs[q].role == Role::IntermediateQ) {
                intermediate[{qs[q].pos, qs[q].word}] = q;
            } else if (qs[q].role == Role::CnotTreeNode) {
                node[{qs[q].pos, qs[q].word}] = q;
            }
        }
        std::map<int, int> depth;
        for (const auto &r : c_.routers) {
            depth[r.word] = std::max(depth[r.word], r.level + 1);
        }

        // One H-tree per word copy, side by side.
        std::map<int, std::vector<std::vector<RouterGeo>>> trees;
        int offset = 0;
        for (auto [w, P] : input) {
            int T = depth.count(w) ? depth[w] : 0;
            std::vector<Coord> red;
            auto geo = htree_geometry(T, {offset, 0}, &red);
            put(P, {offset, 1});
            if (bus.count(w)) {
                put(bus[w], {offset, 2});
            }
            for (auto cell : red) {
                p_.reserved.insert(cell);
            }
            Box box;
            box.include({offset, 2});
            for (auto &level : geo) {
                for (auto &g : level) {
                    for (Coord cell : {g.in, g.t, g.left, g.right}) {
                        box.include(cell);
                    }
                }
            }
            int width = box.width() + 2;
            trees[w] = std::move(geo);
            offset += width;
        }
        for (const auto &r : c_.routers) {
            const RouterGeo &g = trees.at(r.word)[r.level][r.pos];
            put(r.t, g.t);
            put(r.in, g.in);
            if (!r.merged) {
                put(r.left, g.left);
            }
            put(r.right, g.right);
        }
        for (auto [w, P] : input) {
            frame_.include(p_.coords[P]);
            if (bus.count(w)) {
                frame_.include(p_.coords[bus[w]]);
            }
        }
        for (const auto &r : c_.routers) {
            for (uint32_t q : {r.t, r.in, r.left, r.right}) {
                frame_.include(p_.coords[q]);
            }
        }
        frame_ = Box{frame_.xmin - 1, frame_.xmax + 1, frame_.ymin - 1, frame_.ymax + 1};

        // Readout location of slot j in copy w.
        auto slot = [&](int w, int j) -> std::optional<std::pair<Coord, std::optional<Coord>>> {
            if (!input.count(w)) {
                return std::nullopt;
            }
            int T = depth.count(w) ? depth[w] : 0;
            if (T == 0) {
                return std::pair{p_.coords[input[w]], std::optional<Coord>{}};
            }
            const auto &leaves = trees.at(w)[T - 1];
            if ((size_t)(j / 2) >= leaves.size()) {
                return std::nullopt;
            }
            const RouterGeo &g = leaves[j / 2];
            return std::pair{j % 2 ? g.right : g.left, std::optional<Coord>{g.in}};
        };

        bool sequential = !node.empty();
        if (sequential) {
            for (auto [key, q] : node) {
                auto s = slot(0, key.first);
                Coord center = s ? s->first : Coord{0, 0};
                put_near(q, center);
                if (intermediate.count(key)) {
                    put_near(intermediate[key], center);
                }
            }
        }
        for (auto [key, q] : intermediate) {
            if (placed_[q]) {
                continue;
            }
            auto s = slot(key.second, key.first);
            if (!s || !s->second) {
                continue;
            }
            Coord o = s->first;
            Coord in = *s->second;
            const RouterGeo &leaf = trees.at(key.second)[depth[key.second] - 1][key.first / 2];
            Coord dir = o - in;
            for (Coord cand : {o + dir, o + leaf.dir, o - leaf.dir}) {
                if (free(cand)) {
                    put(q, cand);
                    break;
                }
            }
        }
        Coord hub = input.empty() ? Coord{0, 0} : p_.coords[input.begin()->second];
        for (auto [key, q] : intermediate) {
            if (!placed_[q]) {
                put_near(q, hub);
            }
        }

        // Linear routers in a strip above everything placed so far.
        int d = c_.params.d;
        if (d >= 1) {
            Box box = current_box();
            int y1 = box.ymax + 1;
            int y2 = box.ymax + 2;
            int x0 = -(d - 1);
            for (int z = 0; z < d; z++) {
                put(c_.address[z], {x0 + z, y1});
            }
            for (uint32_t q = 0; q < qs.size(); q++) {
                if (qs[q].role == Role::LinearRouter) {
                    put(q, {x0 + qs[q].pos - 1, y2});
                }
                if (qs[q].role == Role::ControlQ && qs[q].word == 0) {
                    put(q, {x0 + d - 1, y2});
                }
            }
        }
        for (uint32_t a : c_.address) {
            if (!placed_[a]) {
                put_near(a, hub);
            }
        }
        for (uint32_t q = 0; q < qs.size(); q++) {
            if (placed_[q]) {
                continue;
            }
            Coord center = hub;
            if (qs[q].role == Role::ControlQ && input.count(qs[q].word)) {
                center = p_.coords[input[qs[q].word]];
            } else if (qs[q].role == Role::Bus && !bus.empty()) {
                center = p_.coords[bus.begin()->second];
            }
            put_near(q, center);
        }

        p_.bounds = current_box();
        p_.frame = frame_;
        if (p_.frame.xmax < p_.frame.xmin) {
            p_.frame = p_.bounds;
        }
        for (Coord corner : {Coord{p_.bounds.xmin, p_.bounds.ymin}, Coord{p_.bounds.xmax, p_.bounds.ymax}}) {
            p_.frame.include(corner);
        }
        return std::move(p_);
    }

   private:
    const Circuit &c_;
    GridPlacement p_;
    std::vector<bool> placed_;
    std::set<Coord> used_;
    Box frame_;

    bool free(Coord c) const {
        return !used_.count(c) && !p_.reserved.count(c);
    }

    void put(uint32_t q, Coord c) {
        if (placed_[q]) {
            throw QlutError(ErrorCode::PlacementOverflow, "qubit placed twice: " + c_.qubits[q].label());
        }
        if (!free(c)) {
            throw QlutError(ErrorCode::PlacementOverflow,
                            "cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") taken, placing " +
                                c_.qubits[q].label());
        }
        used_.insert(c);
        p_.coords[q] = c;
        placed_[q] = true;
    }

    /// First free cell by Manhattan ring, top row first, left before right.
    void put_near(uint32_t q, Coord center) {
        for (int r = 1; r < (1 << 20); r++) {
            for (int dy = r; dy >= -r; dy--) {
                int rem = r - std::abs(dy);
                for (int dx : {-rem, rem}) {
                    Coord c{center.x + dx, center.y + dy};
                    if (free(c)) {
                        put(q, c);
                        return;
                    }
                    if (rem == 0) {
                        break;
                    }
                }
            }
        }
        throw QlutError(ErrorCode::PlacementOverflow, "no free cell");
    }

    Box current_box() const {
        Box box;
        for (uint32_t q = 0; q < placed_.size(); q++) {
            if (placed_[q]) {
                box.include(p_.coords[q]);
            }
        }
        return box;
    }
};

bool connected(const std::vector<Coord> &pts) {
    if (pts.size() <= 1) {
        return true;
    }
    if (pts.size() == 2) {
        return manhattan(pts[0], pts[1]) == 1;
    }
    int edges = 0;
    for (size_t a = 0; a < pts.size(); a++) {
        for (size_t b = a + 1; b < pts.size(); b++) {
            edges += manhattan(pts[a], pts[b]) == 1;
        }
    }
    return edges >= (int)pts.size() - 1;
}

int path_cells(const std::vector<Coord> &pts) {
    if (pts.size() == 2) {
        return manhattan(pts[0], pts[1]) + 1;
    }
    int d01 = manhattan(pts[0], pts[1]);
    int d02 = manhattan(pts[0], pts[2]);
    int d12 = manhattan(pts[1], pts[2]);
    return d01 + d02 + d12 - std::max({d01, d02, d12}) + 1;
}

std::vector<Coord> operand_coords(const Gate &g, const GridPlacement &placement) {
    std::vector<Coord> pts;
    for (int k = 0; k < g.arity; k++) {
        pts.push_back(placement.coords[g.q[k]]);
    }
    return pts;
}

}  // namespace

GridPlacement place_htree(const Circuit &circuit) {
    return Placer(circuit).run();
}

const char *link_resource_name(LinkResource r) {
    switch (r) {
        case LinkResource::GhzChain:
            return "GhzChain";
        case LinkResource::DistilledBell:
            return "DistilledBell";
        case LinkResource::FreeBudget:
            return "FreeBudget";
    }
    return "?";
}

bool is_local(const Gate &g, const GridPlacement &placement) {
    return connected(operand_coords(g, placement));
}

std::vector<LongRangeLink> classify_links(const Circuit &circuit, const GridPlacement &placement, bool distillation) {
    std::vector<LongRangeLink> links;
    int k = circuit.params.longRangeBudgetK;
    for (size_t i = 0; i < circuit.gates.size(); i++) {
        const Gate &g = circuit.gates[i];
        if (g.arity < 2) {
            continue;
        }
        auto pts = operand_coords(g, placement);
        if (!is_long_range_kind(g.kind) && connected(pts)) {
            continue;
        }
        LongRangeLink link;
        link.gate = i;
        link.source = g.q[0];
        link.target = g.q[g.arity - 1];
        link.m = std::max(2, path_cells(pts));
        link.level = g.link_level;
        bool early = g.stage.phase != Phase::III;
        if (g.link_level >= 0 && g.link_level < k && early) {
            link.resource = LinkResource::FreeBudget;
        } else {
            link.resource = distillation ? LinkResource::DistilledBell : LinkResource::GhzChain;
        }
        links.push_back(link);
    }
    return links;
}

void annotate_lengths(Circuit &circuit, const std::vector<LongRangeLink> &links) {
    for (const auto &l : links) {
        circuit.gates[l.gate].length = l.m;
    }
}

double long_range_error(int m, LinkResource resource, const ErrorRates &rates, bool distillation) {
    if (resource == LinkResource::FreeBudget) {
        return 0;
    }
    double e = (double)m * rates.epsQ;
    if (distillation || resource == LinkResource::DistilledBell) {
        return std::min(e, rates.epsF);
    }
    return std::min(e, 1.0);
}

double long_range_error(const LongRangeLink &link, const ErrorRates &rates, bool distillation) {
    return long_range_error(link.m, link.resource, rates, distillation);
}

DistillationResult distillation_model(int m, double epsQ, double c1) {
    DistillationResult r;
    r.epsInitial = (double)m * epsQ;
    if (!(r.epsInitial < 1)) {
        throw QlutError(ErrorCode::InitialErrorTooLarge, "initial Bell pair error m*epsQ >= 1");
    }
    int dist = (int)std::ceil(c1 * std::log2((double)std::max(m, 1)) - 1e-12);
    r.codeDistance = std::max(1, dist);
    r.pairsConsumed = r.codeDistance * r.codeDistance;
    r.depthOverhead = r.codeDistance;
    r.epsFinal = std::pow(r.epsInitial, r.codeDistance);
    return r;
}

int64_t Schedule::total_idle() const {
    int64_t s = 0;
    for (auto v : idle) {
        s += v;
    }
    return s;
}

Schedule build_schedule(const Circuit &circuit, const std::vector<LongRangeLink> &links,
                        const ScheduleOptions &options) {
    Schedule s;
    size_t G = circuit.gates.size();
    size_t Q = circuit.num_qubits();
    s.start.assign(G, 0);
    s.duration.assign(G, 1);
    if (options.include_distillation_depth) {
        for (const auto &l : links) {
            int dist = (int)std::ceil(options.c1 * std::log2((double)l.m) - 1e-12);
            s.duration[l.gate] += std::max(1, dist);
        }
    }
    std::vector<int64_t> free_at(Q, 0);
    std::vector<std::vector<size_t>> ops(Q);
    for (size_t i = 0; i < G; i++) {
        const Gate &g = circuit.gates[i];
        int64_t t = 0;
        for (int k = 0; k < g.arity; k++) {
            t = std::max(t, free_at[g.q[k]]);
        }
        s.start[i] = t;
        for (int k = 0; k < g.arity; k++) {
            free_at[g.q[k]] = t + s.duration[i];
            ops[g.q[k]].push_back(i);
        }
        s.totalDepth = std::max(s.totalDepth, t + s.duration[i]);
    }

    std::vector<bool> always_live(Q, false);
    for (uint32_t a : circuit.address) {
        always_live[a] = true;
    }
    for (uint32_t o : circuit.outputs) {
        always_live[o] = true;
    }
    s.idle.assign(Q, 0);
    auto gap = [&](uint32_t q, int64_t len, size_t before) {
        if (len > 0) {
            s.gaps.push_back({q, len, before});
            s.idle[q] += len;
        }
    };
    for (uint32_t q = 0; q < Q; q++) {
        const auto &list = ops[q];
        if (list.empty()) {
            if (always_live[q]) {
                gap(q, s.totalDepth, G);
            }
            continue;
        }
        if (always_live[q]) {
            gap(q, s.start[list[0]], list[0]);
        }
        for (size_t k = 1; k < list.size(); k++) {
            if (circuit.gates[list[k]].kind == GateKind::Reset) {
                continue;
            }
            int64_t prev_end = s.start[list[k - 1]] + s.duration[list[k - 1]];
            gap(q, s.start[list[k]] - prev_end, list[k]);
        }
        if (always_live[q]) {
            size_t last = list.back();
            gap(q, s.totalDepth - (s.start[last] + s.duration[last]), G);
        }
    }
    std::stable_sort(s.gaps.begin(), s.gaps.end(),
                     [](const IdleGap &a, const IdleGap &b) { return a.before_gate < b.before_gate; });

    // Address-setting time per level of the word-0 tree.
    uint32_t P = UINT32_MAX;
    for (uint32_t q = 0; q < Q; q++) {
        if (circuit.qubits[q].role == Role::Input && circuit.qubits[q].word == 0) {
            P = q;
            break;
        }
    }
    std::map<int, std::vector<const RouterRec *>> by_level;
    for (const auto &r : circuit.routers) {
        if (r.word == 0) {
            by_level[r.level].push_back(&r);
        }
    }
    int d = circuit.params.d;
    for (auto &[level, routers] : by_level) {
        if (P == UINT32_MAX || d + level >= (int)circuit.address.size()) {
            break;
        }
        uint32_t a = circuit.address[d + level];
        uint32_t root_in = by_level[0][0]->in;
        std::set<std::pair<uint32_t, uint32_t>> status_swaps;
        for (auto *r : routers) {
            status_swaps.insert({r->in, r->t});
        }
        int64_t cnot_end = -1, begin = -1, end = -1;
        for (size_t i = 0; i < G; i++) {
            const Gate &g = circuit.gates[i];
            if (g.stage.uncompute) {
                continue;
            }
            if (cnot_end < 0) {
                if (g.kind == GateKind::CNOT && g.q[0] == a && g.q[1] == P) {
                    cnot_end = s.start[i] + s.duration[i];
                }
                continue;
            }
            if (begin < 0 && g.kind == GateKind::SWAP && g.q[0] == P && g.q[1] == root_in && s.start[i] >= cnot_end) {
                begin = s.start[i];
            }
            if (begin >= 0 && g.kind == GateKind::SWAP && status_swaps.count({g.q[0], g.q[1]})) {
                end = std::max(end, s.start[i] + s.duration[i]);
            }
        }
        if (begin < 0 || end < 0) {
            break;
        }
        s.tau.push_back(end - begin);
    }
    return s;
}

std::vector<int> path_link_counts(const Circuit &circuit, const std::vector<LongRangeLink> &links, uint64_t address) {
    int T = 0;
    std::map<uint32_t, std::pair<int, int>> in_of;
    for (const auto &r : circuit.routers) {
        if (r.word == 0) {
            T = std::max(T, r.level + 1);
            in_of[r.in] = {r.level, r.pos};
        }
    }
    Address a = Address::from_value(address, circuit.params.n);
    int d = circuit.params.d;
    std::vector<int> counts(T, 0);
    for (const auto &l : links) {
        const Gate &g = circuit.gates[l.gate];
        if (g.stage.phase != Phase::I || g.stage.uncompute || l.level < 0) {
            continue;
        }
        auto it = in_of.find(l.target);
        if (it == in_of.end()) {
            continue;
        }
        auto [level, pos] = it->second;
        if ((uint64_t)pos == a.slice(d, d + level)) {
            counts[l.level]++;
        }
    }
    return counts;
}

std::vector<double> mean_link_length(const Circuit &circuit, const std::vector<LongRangeLink> &links) {
    std::map<int, std::map<std::pair<uint32_t, uint32_t>, int>> seen;
    for (const auto &l : links) {
        if (l.level < 0 || circuit.qubits[l.source].word != 0) {
            continue;
        }
        seen[l.level][{l.source, l.target}] = l.m;
    }
    std::vector<double> out;
    for (auto &[level, pairs] : seen) {
        if ((int)out.size() != level) {
            break;
        }
        double sum = 0;
        for (auto &[k, m] : pairs) {
            sum += m;
        }
        out.push_back(sum / (double)pairs.size());
    }
    return out;
}

std::string export_layout_json(const GridPlacement &placement) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (uint32_t q = 0; q < placement.coords.size(); q++) {
        auto [row, col] = placement.row_col(q);
        j[std::to_string(q)] = {row, col};
    }
    return j.dump() + "\n";
}

std::string export_links_csv(const std::vector<LongRangeLink> &links) {
    std::ostringstream out;
    out << "source,target,m,level,resource\n";
    for (const auto &l : links) {
        out << l.source << "," << l.target << "," << l.m << "," << l.level << "," << link_resource_name(l.resource)
            << "\n";
    }
    return out.str();
}

std::string export_grid_text(const Circuit &circuit, const GridPlacement &placement) {
    const Box &f = placement.frame;
    std::vector<std::string> rows((size_t)f.height(), std::string((size_t)f.width(), '.'));
    auto at = [&](Coord c) -> char & {
        return rows[(size_t)(f.ymax - c.y)][(size_t)(c.x - f.xmin)];
    };
    for (Coord c : placement.reserved) {
        if (f.contains(c)) {
            at(c) = '+';
        }
    }
    for (uint32_t q = 0; q < circuit.num_qubits(); q++) {
        char ch = '?';
        switch (circuit.qubits[q].role) {
            case Role::AddressBit:
                ch = 'A';
                break;
            case Role::RouterStatus:
                ch = 't';
                break;
            case Role::RouterInput:
                ch = 'i';
                break;
            case Role::RouterLeft:
                ch = 'L';
                break;
            case Role::RouterRight:
                ch = 'R';
                break;
            case Role::LinearRouter:
                ch = 'W';
                break;
            case Role::ControlQ:
                ch = 'q';
                break;
            case Role::IntermediateQ:
                ch = 'Q';
                break;
            case Role::CnotTreeNode:
                ch = 'c';
                break;
            case Role::Bus:
                ch = 'B';
                break;
            case Role::Input:
                ch = 'P';
                break;
            case Role::GhzAncilla:
            case Role::BellAncilla:
                ch = 'g';
                break;
        }
        at(placement.coords[q]) = ch;
    }
    std::string out;
    for (auto &r : rows) {
        out += r + "\n";
    }
    return out;
}

}  // namespace qlut
