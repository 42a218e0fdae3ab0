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

#include "qlut/state.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qlut {

SparseState::SparseState(size_t num_qubits)
    : num_qubits_(num_qubits), words_(std::max<size_t>(1, (num_qubits + 63) / 64)) {
    bits_.assign(words_, 0);
    amps_.push_back(1.0);
}

void SparseState::clear() {
    bits_.clear();
    amps_.clear();
}

void SparseState::add_term(const std::vector<uint32_t> &ones, Amp amp) {
    size_t t = amps_.size();
    bits_.resize((t + 1) * words_, 0);
    amps_.push_back(amp);
    for (uint32_t q : ones) {
        if (q >= num_qubits_) {
            throw QlutError(ErrorCode::Internal, "qubit out of range");
        }
        if (!get(t, q)) {
            flip(t, q);
        }
    }
}

void SparseState::set_bits(const std::vector<uint32_t> &qubits, uint64_t value) {
    size_t n = qubits.size();
    for (size_t t = 0; t < amps_.size(); t++) {
        for (size_t k = 0; k < n; k++) {
            bool want = (value >> (n - 1 - k)) & 1;
            if (get(t, qubits[k]) != want) {
                flip(t, qubits[k]);
            }
        }
    }
}

uint64_t SparseState::read(size_t term, const std::vector<uint32_t> &qubits) const {
    uint64_t v = 0;
    for (uint32_t q : qubits) {
        v = (v << 1) | (uint64_t)get(term, q);
    }
    return v;
}

void SparseState::x(uint32_t q) {
    for (size_t t = 0; t < amps_.size(); t++) {
        flip(t, q);
    }
}

void SparseState::z(uint32_t q) {
    for (size_t t = 0; t < amps_.size(); t++) {
        if (get(t, q)) {
            amps_[t] = -amps_[t];
        }
    }
}

void SparseState::y(uint32_t q) {
    // Y|0> = i|1>, Y|1> = -i|0>.
    const Amp i(0, 1);
    for (size_t t = 0; t < amps_.size(); t++) {
        amps_[t] *= get(t, q) ? -i : i;
        flip(t, q);
    }
}

void SparseState::pauli(char p, uint32_t q) {
    switch (p) {
        case 'X':
            x(q);
            break;
        case 'Y':
            y(q);
            break;
        case 'Z':
            z(q);
            break;
        case 'I':
            break;
        default:
            throw QlutError(ErrorCode::Internal, std::string("unknown Pauli ") + p);
    }
}

void SparseState::h(uint32_t q) {
    size_t n = amps_.size();
    bits_.resize(2 * n * words_);
    amps_.resize(2 * n);
    const double s = 1 / std::sqrt(2.0);
    for (size_t t = 0; t < n; t++) {
        std::copy(row(t), row(t) + words_, row(n + t));
        bool one = get(t, q);
        Amp a = amps_[t];
        // |b> -> (|0> + (-1)^b |1>) / sqrt2
        if (one) {
            flip(t, q);
        } else {
            flip(n + t, q);
        }
        amps_[t] = a * s;
        amps_[n + t] = one ? -a * s : a * s;
    }
    canonicalize();
}

void SparseState::cnot(uint32_t c, uint32_t t) {
    for (size_t k = 0; k < amps_.size(); k++) {
        if (get(k, c)) {
            flip(k, t);
        }
    }
}

void SparseState::swap(uint32_t a, uint32_t b) {
    for (size_t k = 0; k < amps_.size(); k++) {
        if (get(k, a) != get(k, b)) {
            flip(k, a);
            flip(k, b);
        }
    }
}

void SparseState::cswap(uint32_t c, uint32_t a, uint32_t b) {
    for (size_t k = 0; k < amps_.size(); k++) {
        if (get(k, c) && get(k, a) != get(k, b)) {
            flip(k, a);
            flip(k, b);
        }
    }
}

void SparseState::ccnot(uint32_t c1, uint32_t c2, uint32_t t) {
    for (size_t k = 0; k < amps_.size(); k++) {
        if (get(k, c1) && get(k, c2)) {
            flip(k, t);
        }
    }
}

void SparseState::reset(uint32_t q, std::mt19937_64 *rng) {
    double p1 = probability_one(q);
    if (p1 <= 0) {
        return;
    }
    bool outcome;
    if (p1 >= 1) {
        outcome = true;
    } else if (rng) {
        outcome = std::uniform_real_distribution<double>(0, 1)(*rng) < p1;
    } else {
        outcome = p1 > 0.5;
    }
    double keep = outcome ? p1 : 1 - p1;
    size_t w = 0;
    for (size_t t = 0; t < amps_.size(); t++) {
        if (get(t, q) != outcome) {
            continue;
        }
        std::copy(row(t), row(t) + words_, &bits_[w * words_]);
        amps_[w] = amps_[t] / std::sqrt(keep);
        if (outcome) {
            flip(w, q);
        }
        w++;
    }
    amps_.resize(w);
    bits_.resize(w * words_);
}

void SparseState::apply(const Gate &g, std::mt19937_64 *rng) {
    switch (g.kind) {
        case GateKind::X:
            x(g.q[0]);
            break;
        case GateKind::Z:
            z(g.q[0]);
            break;
        case GateKind::H:
            h(g.q[0]);
            break;
        case GateKind::CNOT:
        case GateKind::LongRangeCNOT:
            cnot(g.q[0], g.q[1]);
            break;
        case GateKind::SWAP:
        case GateKind::LongRangeSWAP:
            swap(g.q[0], g.q[1]);
            break;
        case GateKind::CSWAP:
            cswap(g.q[0], g.q[1], g.q[2]);
            break;
        case GateKind::CCNOT:
            ccnot(g.q[0], g.q[1], g.q[2]);
            break;
        case GateKind::ClassicallyControlledX:
            if (g.cbit) {
                x(g.q[0]);
            }
            break;
        case GateKind::Reset:
            reset(g.q[0], rng);
            break;
    }
}

double SparseState::norm_squared() const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

double SparseState::probability_one(uint32_t q) const {
    double s = 0;
    for (size_t t = 0; t < amps_.size(); t++) {
        if (get(t, q)) {
            s += std::norm(amps_[t]);
        }
    }
    return s;
}

namespace {

std::vector<size_t> sorted_terms(const std::vector<uint64_t> &bits, size_t words, size_t n) {
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return std::lexicographical_compare(&bits[a * words], &bits[a * words] + words, &bits[b * words],
                                            &bits[b * words] + words);
    });
    return idx;
}

}  // namespace

void SparseState::canonicalize(double eps) {
    auto idx = sorted_terms(bits_, words_, amps_.size());
    std::vector<uint64_t> bits;
    std::vector<Amp> amps;
    for (size_t k = 0; k < idx.size();) {
        size_t t = idx[k];
        Amp sum = 0;
        size_t j = k;
        while (j < idx.size() && std::equal(row(t), row(t) + words_, row(idx[j]))) {
            sum += amps_[idx[j]];
            j++;
        }
        if (std::abs(sum) > eps) {
            bits.insert(bits.end(), row(t), row(t) + words_);
            amps.push_back(sum);
        }
        k = j;
    }
    bits_ = std::move(bits);
    amps_ = std::move(amps);
}

double SparseState::overlap(const SparseState &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw QlutError(ErrorCode::Internal, "overlap of states with different qubit counts");
    }
    SparseState a = *this;
    SparseState b = other;
    a.canonicalize(0);
    b.canonicalize(0);
    Amp inner = 0;
    size_t i = 0, j = 0;
    while (i < a.amps_.size() && j < b.amps_.size()) {
        const uint64_t *ra = a.row(i);
        const uint64_t *rb = b.row(j);
        if (std::equal(ra, ra + words_, rb)) {
            inner += std::conj(a.amps_[i]) * b.amps_[j];
            i++;
            j++;
        } else if (std::lexicographical_compare(ra, ra + words_, rb, rb + words_)) {
            i++;
        } else {
            j++;
        }
    }
    return std::norm(inner);
}

}  // namespace qlut
