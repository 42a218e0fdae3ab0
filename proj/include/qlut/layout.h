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

#ifndef QLUT_LAYOUT_H
#define QLUT_LAYOUT_H

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qlut/circuit.h"

namespace qlut {

/// Grid point, x to the right and y up.
struct Coord {
    int x = 0;
    int y = 0;

    bool operator==(const Coord &other) const = default;
    auto operator<=>(const Coord &other) const = default;
};

int manhattan(Coord a, Coord b);

struct Box {
    int xmin = 0;
    int xmax = -1;
    int ymin = 0;
    int ymax = -1;

    int width() const {
        return xmax - xmin + 1;
    }
    int height() const {
        return ymax - ymin + 1;
    }
    void include(Coord c);
    bool contains(Coord c) const {
        return c.x >= xmin && c.x <= xmax && c.y >= ymin && c.y <= ymax;
    }
};

struct GridPlacement {
    /// Coordinate of every circuit qubit.
    std::vector<Coord> coords;
    /// Tight bounding box of all qubits; its area is the layout area.
    Box bounds;
    /// Router tree, input and bus padded by one cell, widened to cover bounds.
    /// Export rows and columns are relative to this frame.
    Box frame;
    /// Cells kept free for the GHZ chains of inter-level links.
    std::set<Coord> reserved;

    uint64_t area() const {
        return (uint64_t)bounds.width() * (uint64_t)bounds.height();
    }
    /// (row, col) in the frame, row 0 at the top.
    std::pair<int, int> row_col(uint32_t q) const;
};

/// Places the qubits of a circuit built by this library on an H-tree.
/// Throws PlacementOverflow if two qubits land on one cell.
GridPlacement place_htree(const Circuit &circuit);

enum class LinkResource { GhzChain, DistilledBell, FreeBudget };

const char *link_resource_name(LinkResource r);

struct LongRangeLink {
    size_t gate = 0;
    uint32_t source = 0;
    uint32_t target = 0;
    /// Number of grid cells on the connecting path, endpoints included.
    int m = 0;
    /// Tree depth of the parent router for inter-level links, -1 otherwise.
    int level = -1;
    LinkResource resource = LinkResource::GhzChain;
};

/// Whether the operands of gate g form a grid-connected set.
bool is_local(const Gate &g, const GridPlacement &placement);

/// Flags every long-range gate. A gate is long-range when it is a LongRange*
/// kind or its operands are not grid-connected. Links of the top k tree levels
/// in stages I and II use the free budget.
std::vector<LongRangeLink> classify_links(const Circuit &circuit, const GridPlacement &placement,
                                          bool distillation = false);

/// Copies link lengths into the gates so that exports show len=m.
void annotate_lengths(Circuit &circuit, const std::vector<LongRangeLink> &links);

/// Error of one long-range operation over a path of m cells.
double long_range_error(int m, LinkResource resource, const ErrorRates &rates, bool distillation);
double long_range_error(const LongRangeLink &link, const ErrorRates &rates, bool distillation);

struct DistillationResult {
    int codeDistance = 1;
    int pairsConsumed = 1;
    int depthOverhead = 1;
    double epsInitial = 0;
    double epsFinal = 0;
};

/// Bell-pair distillation over m cells: distance ceil(c1 log2 m) (at least 1),
/// d^2 pairs, residual error eps_i^d with eps_i = m epsQ.
/// Throws InitialErrorTooLarge when eps_i >= 1.
DistillationResult distillation_model(int m, double epsQ, double c1 = 1.0);

struct ScheduleOptions {
    bool include_distillation_depth = false;
    double c1 = 1.0;
};

/// Interval during which a qubit waits between two of its operations.
struct IdleGap {
    uint32_t qubit = 0;
    int64_t length = 0;
    /// Index of the gate that ends the gap, or gates.size() for gaps that run
    /// to the end of the circuit.
    size_t before_gate = 0;
};

struct Schedule {
    /// Start and duration of every gate.
    std::vector<int64_t> start;
    std::vector<int64_t> duration;
    /// Address-setting time of each tree level (word 0).
    std::vector<int64_t> tau;
    /// Total idle time per qubit.
    std::vector<int64_t> idle;
    std::vector<IdleGap> gaps;
    int64_t totalDepth = 0;

    int64_t total_idle() const;
};

Schedule build_schedule(const Circuit &circuit, const std::vector<LongRangeLink> &links,
                        const ScheduleOptions &options = {});

/// Number of stage-I inter-level links per level that feed a router on the
/// query path of `address`.
std::vector<int> path_link_counts(const Circuit &circuit, const std::vector<LongRangeLink> &links, uint64_t address);

/// Mean link length per tree level (inter-level links of stage I, word 0).
std::vector<double> mean_link_length(const Circuit &circuit, const std::vector<LongRangeLink> &links);

std::string export_layout_json(const GridPlacement &placement);
std::string export_links_csv(const std::vector<LongRangeLink> &links);
/// Character map of the frame: router parts t/i/L/R, P, B(us), A(ddress),
/// W (linear routers), q, Q (intermediate), c (cnot-tree node), '+' for GHZ
/// cells and '.' for empty cells.
std::string export_grid_text(const Circuit &circuit, const GridPlacement &placement);

}  // namespace qlut

#endif
