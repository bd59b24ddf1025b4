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


#include "ancilla/codes/classical_code.h"

#include "ancilla/codes/enumerate.h"
#include "ancilla/error.h"

namespace ancilla {

ClassicalCode ClassicalCode::from_generator(std::string name, BitMatrix generator, size_t d, bool d_verified) {
    ClassicalCode c;
    c.name = std::move(name);
    c.n = generator.cols();
    c.k = generator.rows();
    c.d = d;
    c.d_verified = d_verified;
    if (generator.rank() != c.k) {
        throw CodeError("E_RANK", "code '" + c.name + "': generator rows are linearly dependent");
    }
    c.check = generator.nullspace();
    c.generator = std::move(generator);
    return c;
}

bool ClassicalCode::contains(const BitVec &word) const {
    return check.apply(word).is_zero();
}

namespace {

using WeightCounts = std::array<uint64_t, 129>;

template <size_t W>
std::map<size_t, uint64_t> count_weights(const BitMatrix &g, unsigned threads) {
    auto rows = pack_rows<W>(g);
    auto states = enumerate_span<WeightCounts>(rows, threads, [](WeightCounts &st, const PackedWord<W> &w) {
        st[packed_weight(w)]++;
    });
    std::map<size_t, uint64_t> out;
    for (const auto &st : states) {
        for (size_t i = 0; i < st.size(); i++) {
            if (st[i]) {
                out[i] += st[i];
            }
        }
    }
    return out;
}

}  // namespace

std::map<size_t, uint64_t> weight_distribution(const ClassicalCode &code, unsigned threads) {
    if (code.k > kMaxEnumerationDim) {
        throw CodeError(
            "E_TOO_LARGE",
            "code '" + code.name + "': k = " + std::to_string(code.k) + " exceeds the enumeration bound k <= " +
                std::to_string(kMaxEnumerationDim));
    }
    if (code.n <= 64) {
        return count_weights<1>(code.generator, threads);
    }
    if (code.n <= 128) {
        return count_weights<2>(code.generator, threads);
    }
    throw CodeError("E_TOO_LARGE", "code '" + code.name + "': enumeration supports n <= 128");
}

bool doubly_even_certificate(const BitMatrix &generator) {
    for (size_t r = 0; r < generator.rows(); r++) {
        if (generator.row_weight(r) % 4 != 0) {
            return false;
        }
    }
    BitMatrix gram = generator.mul_transpose(generator);
    return gram.is_zero();
}

bool is_self_dual(const ClassicalCode &code) {
    return 2 * code.k == code.n && code.generator.mul_transpose(code.generator).is_zero();
}

CodeReport verify_code_properties(const ClassicalCode &code, unsigned threads) {
    CodeReport rep;
    rep.self_dual = is_self_dual(code);
    if (code.k <= kMaxEnumerationDim && code.n <= 128) {
        auto dist = weight_distribution(code, threads);
        rep.doubly_even = true;
        for (auto [w, count] : dist) {
            if (w % 4 != 0) {
                rep.doubly_even = false;
            }
            if (w > 0 && rep.min_distance == 0) {
                rep.min_distance = w;
            }
        }
        rep.doubly_even_enumerated = true;
        rep.min_distance_checked = true;
        rep.weights = std::move(dist);
    } else {
        rep.doubly_even = rep.self_dual && doubly_even_certificate(code.generator);
    }
    return rep;
}

}  // namespace ancilla
