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

#ifndef QLUT_STATE_H
#define QLUT_STATE_H

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qlut/circuit.h"

namespace qlut {

using Amp = std::complex<double>;

/// State vector stored as a list of nonzero basis terms.
///
/// Lookup circuits are permutations apart from data-independent phases, so a
/// basis query stays a single term and a superposition over A addresses stays
/// A terms. Dense storage would cap the qubit count at a few dozen.
class SparseState {
   public:
    SparseState() = default;
    /// |0...0> on num_qubits qubits.
    explicit SparseState(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_terms() const {
        return amps_.size();
    }
    Amp amp(size_t term) const {
        return amps_[term];
    }
    bool bit(size_t term, uint32_t q) const {
        return (bits_[term * words_ + (q >> 6)] >> (q & 63)) & 1;
    }

    /// Removes all terms.
    void clear();
    /// Adds amp * |basis>, where `ones` lists the qubits set to 1.
    void add_term(const std::vector<uint32_t> &ones, Amp amp);
    /// Sets the given qubits (first = most significant) to value in every term.
    void set_bits(const std::vector<uint32_t> &qubits, uint64_t value);
    /// Integer read from the given qubits (first = most significant) of a term.
    uint64_t read(size_t term, const std::vector<uint32_t> &qubits) const;

    void x(uint32_t q);
    void y(uint32_t q);
    void z(uint32_t q);
    void h(uint32_t q);
    void cnot(uint32_t c, uint32_t t);
    void swap(uint32_t a, uint32_t b);
    void cswap(uint32_t c, uint32_t a, uint32_t b);
    void ccnot(uint32_t c1, uint32_t c2, uint32_t t);
    /// Resets q to |0>. A superposed qubit is measured first; the outcome is
    /// drawn from rng, or the more likely one when rng is null.
    void reset(uint32_t q, std::mt19937_64 *rng = nullptr);
    void pauli(char p, uint32_t q);

    void apply(const Gate &g, std::mt19937_64 *rng = nullptr);

    double norm_squared() const;
    double probability_one(uint32_t q) const;
    /// |<this|other>|^2.
    double overlap(const SparseState &other) const;
    /// Merges equal basis terms and drops negligible amplitudes.
    void canonicalize(double eps = 1e-14);

   private:
    size_t num_qubits_ = 0;
    size_t words_ = 1;
    std::vector<uint64_t> bits_;
    std::vector<Amp> amps_;

    uint64_t *row(size_t term) {
        return &bits_[term * words_];
    }
    const uint64_t *row(size_t term) const {
        return &bits_[term * words_];
    }
    bool get(size_t term, uint32_t q) const {
        return bit(term, q);
    }
    void flip(size_t term, uint32_t q) {
        bits_[term * words_ + (q >> 6)] ^= uint64_t{1} << (q & 63);
    }
};

}  // namespace qlut

#endif
