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


#ifndef ANCILLA_CODES_SYNDROME_DECODER_H
#define ANCILLA_CODES_SYNDROME_DECODER_H

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ancilla/codes/css_code.h"

namespace ancilla {

/// Calls fn(mask) for every n-bit mask of the given weight, in increasing
/// numeric order. Requires n <= 63.
template <typename Fn>
void for_each_weight_mask(size_t n, size_t weight, Fn fn) {
    if (weight > n) {
        return;
    }
    if (weight == 0) {
        fn(uint64_t{0});
        return;
    }
    uint64_t v = (uint64_t{1} << weight) - 1;
    uint64_t limit = uint64_t{1} << n;
    while (v < limit) {
        fn(v);
        uint64_t c = v & -v;
        uint64_t r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
}

/// Sum of C(n, i) for i <= t.
uint64_t ball_size(size_t n, size_t t);

/// Per-type lookup decoder for the m-bit syndrome of c_big's check matrix.
/// X and Z errors use the same table; together they consume the 2m = n - 1
/// syndrome bits of a block.
class SyndromeDecoder {
   public:
    /// Throws CodeError E_NO_MATRICES when the code has no usable matrices,
    /// E_DECODER_SIZE with a memory estimate when the table exceeds
    /// `max_entries` or t > 7.
    static SyndromeDecoder build(const CssCode &css, uint64_t max_entries = uint64_t{1} << 26);

    size_t n() const {
        return n_;
    }
    size_t m() const {
        return checks_.size();
    }
    size_t t() const {
        return t_;
    }
    size_t table_size() const {
        return entries_;
    }

    /// Bit j is the parity of `error` against check row j.
    uint64_t syndrome(uint64_t error) const;
    /// Minimum-weight leader, or nothing when no error of weight <= t has
    /// this syndrome.
    std::optional<uint64_t> decode(uint64_t syndrome) const;

   private:
    size_t n_ = 0;
    size_t t_ = 0;
    size_t entries_ = 0;
    std::vector<uint64_t> checks_;
    bool use_dense_ = false;
    std::vector<uint64_t> dense_;
    std::unordered_map<uint64_t, uint64_t> sparse_;
};

/// Minimum weight of e + c over c in c_small, i.e. the weight of the coset
/// leader of e modulo c_small.
///
/// When c_small has few cosets every coset is tabulated; otherwise weights are
/// exact up to `radius` and larger cosets report radius + 1.
class CosetWeights {
   public:
    static CosetWeights build(const CssCode &css, size_t radius);

    size_t weight(uint64_t error) const;
    /// Largest weight reported exactly. Equals n for a full table.
    size_t radius() const {
        return radius_;
    }
    /// Syndrome modulo c_small (parities against c_big's generator rows).
    uint64_t key(uint64_t error) const;

   private:
    size_t n_ = 0;
    size_t radius_ = 0;
    std::vector<uint64_t> checks_;
    bool use_dense_ = false;
    std::vector<uint8_t> dense_;
    std::unordered_map<uint64_t, uint8_t> sparse_;
};

}  // namespace ancilla

#endif
