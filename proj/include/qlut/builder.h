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

#ifndef QLUT_BUILDER_H
#define QLUT_BUILDER_H

#include <vector>

#include "qlut/circuit.h"

namespace qlut {

struct BuildOptions {
    /// Merge the input and left output of every CSWAP router in the upper tree,
    /// dropping one qubit and one CSWAP per router.
    bool merged_routers = false;
    /// Ideal resets of the CNOT-tree nodes at the end of each repetition.
    bool resets = true;
};

/// Emits the routing gates of one router: in goes to left when t=0 and to
/// right when t=1. The anti-controlled swap is X(t) CSWAP X(t).
void build_cswap_router(Circuit &c, uint32_t t, uint32_t in, uint32_t left, uint32_t right, StageTag stage,
                        bool merged = false);

/// Computes q = [a_0..a_{d-1} == i] from a clean q using the ancilla ladder
/// (d-1 ancillas for d >= 2).
void build_linear_routers(Circuit &c, const std::vector<uint32_t> &address_bits, const std::vector<uint32_t> &ancillas,
                          uint32_t q, uint64_t i, StageTag stage);

/// Copies root into every output by CNOT doubling. With input_as_output the
/// root counts as the first output and `leaves` holds the remaining gamma-1.
void build_cnot_tree(Circuit &c, uint32_t root, const std::vector<uint32_t> &leaves, StageTag stage,
                     bool input_as_output = false);

Circuit build_unified_lookup(const ArchParams &params, const DataTable &table, const BuildOptions &options = {});
Circuit build_multi_bit_parallel(const ArchParams &params, const DataTable &table, const BuildOptions &options = {});
Circuit build_multi_bit_sequential(const ArchParams &params, const DataTable &table, const BuildOptions &options = {});
/// Dispatches on params.readout.
Circuit build_lookup(const ArchParams &params, const DataTable &table, const BuildOptions &options = {});

/// Appends reverse stage III (without the output copies), stage II again and
/// reverse stage I, leaving every qubit but address and outputs at |0>.
Circuit build_uncompute(const Circuit &circuit);

enum class ReferenceKind { FanOut, BucketBrigade, SelectSwap };

const char *reference_name(ReferenceKind k);

Circuit build_reference(ReferenceKind kind, uint64_t N, const DataTable &table);

}  // namespace qlut

#endif
