// Copyright 2026 The ancilla-factory Authors
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


#ifndef ANCILLA_CODES_CLASSICAL_CODE_H
#define ANCILLA_CODES_CLASSICAL_CODE_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ancilla/codes/bit_matrix.h"

namespace ancilla {

/// Largest dimension for which codewords are enumerated exhaustively.
constexpr size_t kMaxEnumerationDim = 28;

/// An [n, k, d] binary linear code.
struct ClassicalCode {
    std::string name;
    size_t n = 0;
    size_t k = 0;
    size_t d = 0;
    /// Whether d was confirmed by enumeration rather than taken as given.
    bool d_verified = false;
    BitMatrix generator;  // k x n, full rank
    BitMatrix check;      // (n - k) x n

    /// Builds a code from a generator matrix, deriving the check matrix.
    /// Throws CodeError if the rows are dependent.
    static ClassicalCode from_generator(std::string name, BitMatrix generator, size_t d, bool d_verified);

    bool contains(const BitVec &word) const;
};

struct CodeReport {
    bool self_dual = false;
    bool doubly_even = false;
    /// True when doubly_even came from enumerating every word, false when it
    /// came from the generator-row certificate.
    bool doubly_even_enumerated = false;
    bool min_distance_checked = false;
    /// Enumerated minimum nonzero weight; 0 when not enumerated.
    size_t min_distance = 0;
    std::optional<std::map<size_t, uint64_t>> weights;
};

/// Exact weight enumerator. Throws CodeError when k > kMaxEnumerationDim.
/// `threads` = 0 picks the hardware concurrency; the result does not depend on it.
std::map<size_t, uint64_t> weight_distribution(const ClassicalCode &code, unsigned threads = 0);

/// Rows of weight 0 mod 4 with pairwise even overlap. For a self-orthogonal
/// code this implies every codeword has weight 0 mod 4, since
/// wt(a + b) = wt(a) + wt(b) - 2 |a & b|.
bool doubly_even_certificate(const BitMatrix &generator);

/// G G^T = 0 and k = n / 2.
bool is_self_dual(const ClassicalCode &code);

CodeReport verify_code_properties(const ClassicalCode &code, unsigned threads = 0);

}  // namespace ancilla

#endif
