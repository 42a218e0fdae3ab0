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

#ifndef QLUT_BUILDER_INTERNAL_H
#define QLUT_BUILDER_INTERNAL_H

#include <vector>

#include "qlut/circuit.h"

namespace qlut {
namespace internal {

/// Gate sequence without stage tags, emitted forwards or backwards.
struct Seq {
    std::vector<Gate> ops;

    void add(GateKind kind, std::initializer_list<uint32_t> operands, int link_level = -1);
    void append(const Seq &other);
};

void emit(Circuit &c, const Seq &s, StageTag stage, bool reversed = false);

void router_ops(Seq &s, uint32_t t, uint32_t in, uint32_t left, uint32_t right, bool merged);

void cnot_tree_ops(Seq &s, uint32_t root, const std::vector<uint32_t> &leaves, bool input_as_output);

/// Ladder of linear routers w_z = w_{z-1} AND [a_{z-1} == bit z of i]; the
/// last rung is the control qubit q.
class UnaryIterator {
   public:
    UnaryIterator(std::vector<uint32_t> address, std::vector<uint32_t> ancillas, uint32_t q);

    void compute(Seq &s, uint64_t i) const;
    void uncompute(Seq &s, uint64_t i) const;
    /// Moves the ladder from selecting i to selecting i+1, touching only the
    /// rungs below the most significant changing bit.
    void advance(Seq &s, uint64_t i) const;

   private:
    std::vector<uint32_t> a_;
    std::vector<uint32_t> w_;

    bool bit(uint64_t i, int z) const;
    void toggle(Seq &s, int z, uint64_t i) const;
};

}  // namespace internal
}  // namespace qlut

#endif
