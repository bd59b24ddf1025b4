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


#ifndef ANCILLA_CODES_CSS_CODE_H
#define ANCILLA_CODES_CSS_CODE_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ancilla/codes/classical_code.h"

namespace ancilla {

/// [[n, 1, d]] CSS code obtained by puncturing a doubly even self-dual
/// [n + 1, (n + 1) / 2] parent.
struct CssCode {
    std::string name;
    ClassicalCode parent;
    size_t punctured = 0;
    size_t n = 0;
    size_t d = 0;
    size_t t = 0;
    size_t m = 0;
    size_t w = 0;
    /// [n, m] even subcode; its superposition is the encoded zero.
    ClassicalCode c_small;
    /// [n, m + 1] punctured parent, equal to the dual of c_small.
    ClassicalCode c_big;
    /// False when the parent's distance could not be verified by enumeration.
    /// Such codes are not simulated and have no syndrome decoder.
    bool matrices_available = false;
    /// True when c_small has weight-w rows with seeds and a final check, so a
    /// preparation network can be built. For codes without verified matrices
    /// the rows come from a sampled search over the weight-w words.
    bool network_available = false;
    /// Seed (pivot) qubit of each c_small generator row. Row i holds a one at
    /// seeds[i] and no earlier row does.
    std::vector<size_t> seeds;
    /// Word of c_big outside c_small used as the last verification check.
    BitVec final_check;
};

/// Throws CodeError naming the failed invariant: E_NOT_SELF_DUAL,
/// E_NOT_DOUBLY_EVEN, E_NO_WEIGHT_W_BASIS.
CssCode construct_css(const ClassicalCode &parent, size_t punctured_coordinate = 0, unsigned threads = 0);

/// "css" + n for the punctured length n, e.g. golay24 -> css23.
std::string css_name_for(const ClassicalCode &parent);

/// CSS code built from the matching built-in parent; accepts either the CSS
/// name ("css23") or the parent name ("golay24"). Cached after first use.
const CssCode &builtin_css(std::string_view name);
/// CSS codes for every built-in parent, in catalog order.
std::vector<const CssCode *> builtin_css_codes();

/// Packs the low 64 coordinates; requires n <= 64.
uint64_t to_mask(const BitVec &v);
BitVec from_mask(uint64_t mask, size_t n);

}  // namespace ancilla

#endif
