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


#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "ancilla/codes/enumerate.h"
#include "ancilla/error.h"

namespace ancilla {

namespace {

using Word = PackedWord<2>;

bool bit(const Word &w, size_t i) {
    return (w[i >> 6] >> (i & 63)) & 1;
}

void set_bit(Word &w, size_t i) {
    w[i >> 6] |= uint64_t{1} << (i & 63);
}

Word operator^(const Word &a, const Word &b) {
    return {a[0] ^ b[0], a[1] ^ b[1]};
}

}  // namespace

std::vector<BitVec> sample_words_of_weight(const BitMatrix &g, size_t weight, size_t iterations, uint64_t seed) {
    const size_t n = g.cols();
    const size_t k = g.rows();
    if (n > 128) {
        throw CodeError("E_SIZE", "sample_words_of_weight: at most 128 columns");
    }
    if (k == 0 || weight == 0) {
        return {};
    }
    std::mt19937_64 rng(seed);
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    std::set<Word> found;
    std::vector<Word> rows(k), red(k);

    for (size_t it = 0; it < iterations; it++) {
        // Fisher-Yates with a 128-bit multiply, so the order does not depend
        // on the standard library's distributions.
        for (size_t i = n - 1; i > 0; i--) {
            size_t j = static_cast<size_t>((static_cast<unsigned __int128>(rng()) * (i + 1)) >> 64);
            std::swap(perm[i], perm[j]);
        }
        for (size_t r = 0; r < k; r++) {
            Word x{};
            for (size_t c = 0; c < n; c++) {
                if (g.get(r, perm[c])) {
                    set_bit(x, c);
                }
            }
            rows[r] = x;
        }
        Word pivots{};
        size_t rank = 0;
        for (size_t c = 0; c < n && rank < k; c++) {
            size_t p = rank;
            while (p < k && !bit(rows[p], c)) {
                p++;
            }
            if (p == k) {
                continue;
            }
            std::swap(rows[p], rows[rank]);
            for (size_t r = 0; r < k; r++) {
                if (r != rank && bit(rows[r], c)) {
                    rows[r] = rows[r] ^ rows[rank];
                }
            }
            set_bit(pivots, c);
            rank++;
        }
        if (rank < k) {
            throw CodeError("E_RANK", "sample_words_of_weight: generator is not full rank");
        }
        for (size_t r = 0; r < k; r++) {
            red[r] = {rows[r][0] & ~pivots[0], rows[r][1] & ~pivots[1]};
        }
        auto keep = [&](const Word &v) {
            Word o{};
            for (size_t c = 0; c < n; c++) {
                if (bit(v, c)) {
                    set_bit(o, perm[c]);
                }
            }
            found.insert(o);
        };
        // A sum of p systematic rows has exactly p ones on the pivots.
        for (size_t a = 0; a < k; a++) {
            if (packed_weight(red[a]) + 1 == weight) {
                keep(rows[a]);
            }
            for (size_t b = a + 1; b < k; b++) {
                Word ab = red[a] ^ red[b];
                if (packed_weight(ab) + 2 == weight) {
                    keep(rows[a] ^ rows[b]);
                }
                if (weight < 3) {
                    continue;
                }
                for (size_t c = b + 1; c < k; c++) {
                    if (packed_weight(ab ^ red[c]) + 3 == weight) {
                        keep(rows[a] ^ rows[b] ^ rows[c]);
                    }
                }
            }
        }
    }

    std::vector<BitVec> out;
    for (const Word &w : found) {
        BitVec v(n);
        v.words()[0] = w[0];
        if (v.words().size() > 1) {
            v.words()[1] = w[1];
        }
        out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](const BitVec &a, const BitVec &b) { return a.lex_before(b); });
    return out;
}

}  // namespace ancilla
