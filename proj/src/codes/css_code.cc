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


#include "ancilla/codes/css_code.h"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>

#include "ancilla/codes/catalog.h"
#include "ancilla/codes/enumerate.h"
#include "ancilla/error.h"

namespace ancilla {

namespace {

template <size_t W>
bool packed_lex_before(const PackedWord<W> &a, const PackedWord<W> &b) {
    for (size_t i = 0; i < W; i++) {
        uint64_t diff = a[i] ^ b[i];
        if (diff) {
            return (a[i] & diff & -diff) != 0;
        }
    }
    return false;
}

template <size_t W>
BitVec unpack(const PackedWord<W> &w, size_t n) {
    BitVec v(n);
    for (size_t i = 0; i < v.words().size(); i++) {
        v.words()[i] = w[i];
    }
    return v;
}

template <size_t W>
struct ScanState {
    std::vector<PackedWord<W>> weight_w_even;
    size_t min_odd = std::numeric_limits<size_t>::max();
    bool has_final = false;
    PackedWord<W> final_word{};
};

struct ScanResult {
    std::vector<BitVec> weight_w_even;
    size_t min_odd = std::numeric_limits<size_t>::max();
    std::optional<BitVec> final_word;
};

// One pass over c_big collects what construction needs: the weight-w words of
// c_small, the smallest odd weight, and the first weight-m odd word.
template <size_t W>
ScanResult scan_big(const BitMatrix &g, size_t n, size_t w, size_t m, unsigned threads) {
    auto rows = pack_rows<W>(g);
    auto states = enumerate_span<ScanState<W>>(rows, threads, [w, m](ScanState<W> &st, const PackedWord<W> &word) {
        size_t wt = packed_weight(word);
        if (wt & 1) {
            st.min_odd = std::min(st.min_odd, wt);
            if (wt == m && (!st.has_final || packed_lex_before(word, st.final_word))) {
                st.has_final = true;
                st.final_word = word;
            }
        } else if (wt == w) {
            st.weight_w_even.push_back(word);
        }
    });
    std::vector<PackedWord<W>> all;
    ScanResult out;
    bool has_final = false;
    PackedWord<W> final_word{};
    for (auto &st : states) {
        all.insert(all.end(), st.weight_w_even.begin(), st.weight_w_even.end());
        out.min_odd = std::min(out.min_odd, st.min_odd);
        if (st.has_final && (!has_final || packed_lex_before(st.final_word, final_word))) {
            has_final = true;
            final_word = st.final_word;
        }
    }
    std::sort(all.begin(), all.end(), packed_lex_before<W>);
    for (const auto &x : all) {
        out.weight_w_even.push_back(unpack(x, n));
    }
    if (has_final) {
        out.final_word = unpack(final_word, n);
    }
    return out;
}

struct BasisSearch {
    const std::vector<BitVec> &cands;
    size_t m;
    size_t budget = 2'000'000;
    std::vector<size_t> chosen;
    std::vector<size_t> seeds;

    bool dfs(const BitVec &covered) {
        if (chosen.size() == m) {
            return true;
        }
        // Rank candidates by how few fresh coordinates they add, keeping
        // lexicographic order among ties.
        std::vector<std::pair<size_t, size_t>> order;
        for (size_t i = 0; i < cands.size(); i++) {
            BitVec fresh = cands[i];
            BitVec overlap = cands[i] & covered;
            fresh ^= overlap;
            size_t s = fresh.first_one();
            if (s == fresh.size()) {
                continue;
            }
            order.emplace_back(fresh.weight(), i);
        }
        std::stable_sort(order.begin(), order.end(), [](auto a, auto b) { return a.first < b.first; });
        for (auto [fresh_count, i] : order) {
            if (budget == 0) {
                return false;
            }
            budget--;
            BitVec fresh = cands[i] ^ (cands[i] & covered);
            chosen.push_back(i);
            seeds.push_back(fresh.first_one());
            BitVec next = covered;
            for (size_t q : cands[i].support()) {
                next.set(q, true);
            }
            if (dfs(next)) {
                return true;
            }
            chosen.pop_back();
            seeds.pop_back();
        }
        return false;
    }
};

// Without full enumeration: sample the weight-w words of c_small and run the
// same basis search over the sample. The final check is the lex-first
// weight-m word among sampled words of c_big; m is odd, so it lies outside
// c_small.
constexpr size_t kSampleIterations = 4000;
constexpr uint64_t kSampleSeed = 0x243f6a8885a308d3;

void sampled_network_basis(CssCode &css, const BitMatrix &big, const BitMatrix &small) {
    std::vector<BitVec> pool = sample_words_of_weight(small, css.w, kSampleIterations, kSampleSeed);
    BasisSearch search{pool, css.m, 2'000'000, {}, {}};
    if (!search.dfs(BitVec(css.n))) {
        return;
    }
    // Weight m is near n/2, so random combinations of c_big rows hit it often.
    std::mt19937_64 rng(kSampleSeed);
    std::optional<BitVec> final_word;
    for (size_t tries = 0, hits = 0; tries < 1'000'000 && hits < 1000; tries++) {
        BitVec coeffs(big.rows());
        for (uint64_t &wd : coeffs.words()) {
            wd = rng();
        }
        coeffs = coeffs & BitVec::from_bit_string(std::string(big.rows(), '1'));
        BitVec v = big.combine_rows(coeffs);
        if (v.weight() == css.m) {
            hits++;
            if (!final_word || v.lex_before(*final_word)) {
                final_word = v;
            }
        }
    }
    if (!final_word) {
        return;
    }
    BitMatrix rows(css.m, css.n);
    for (size_t i = 0; i < css.m; i++) {
        rows.set_row(i, pool[search.chosen[i]]);
    }
    css.c_small = ClassicalCode::from_generator(css.name + "_small", rows, css.w, false);
    css.seeds = search.seeds;
    css.final_check = *final_word;
    css.network_available = true;
}

}  // namespace

std::string css_name_for(const ClassicalCode &parent) {
    return "css" + std::to_string(parent.n - 1);
}

CssCode construct_css(const ClassicalCode &parent, size_t punctured_coordinate, unsigned threads) {
    const std::string who = "code '" + parent.name + "'";
    if (parent.n < 2 || punctured_coordinate >= parent.n) {
        throw CodeError("E_PUNCTURE", who + ": puncture coordinate out of range");
    }
    if (!is_self_dual(parent)) {
        throw CodeError("E_NOT_SELF_DUAL", who + ": parent is not self-dual (need G G^T = 0 and k = n/2)");
    }
    if (!doubly_even_certificate(parent.generator)) {
        throw CodeError("E_NOT_DOUBLY_EVEN", who + ": parent is not doubly even");
    }
    if (parent.d < 4) {
        throw CodeError("E_DISTANCE", who + ": parent distance must be at least 4");
    }

    CssCode css;
    css.name = css_name_for(parent);
    css.parent = parent;
    css.punctured = punctured_coordinate;
    css.n = parent.n - 1;
    css.d = parent.d - 1;
    css.t = (css.d - 1) / 2;
    css.m = (css.n - 1) / 2;
    css.w = css.d + 1;

    // Clear the punctured column from all but one row; the rest span the
    // shortened code.
    BitMatrix g = parent.generator;
    size_t pivot = g.rows();
    for (size_t r = 0; r < g.rows(); r++) {
        if (g.get(r, punctured_coordinate)) {
            if (pivot == g.rows()) {
                pivot = r;
            } else {
                g.xor_row_into(r, pivot);
            }
        }
    }
    if (pivot == g.rows()) {
        throw CodeError("E_PUNCTURE", who + ": coordinate " + std::to_string(punctured_coordinate) + " is identically zero");
    }
    BitMatrix small(0, 0);
    for (size_t r = 0; r < g.rows(); r++) {
        if (r != pivot) {
            small.append_row(g.row(r));
        }
    }
    small = small.without_column(punctured_coordinate);
    BitMatrix big = parent.generator.without_column(punctured_coordinate);

    css.c_big = ClassicalCode::from_generator(css.name + "_big", big, css.d, parent.d_verified);
    css.c_small = ClassicalCode::from_generator(css.name + "_small", small, css.w, parent.d_verified);
    if (css.c_small.k != css.m || css.c_big.k != css.m + 1 ||
        !css.c_small.generator.mul_transpose(css.c_big.generator).is_zero()) {
        throw CodeError("E_NOT_DUAL", who + ": punctured codes fail dual(c_small) = c_big");
    }
    css.final_check = BitVec(css.n);

    if (!parent.d_verified || parent.k > kMaxEnumerationDim || css.n > 128) {
        css.matrices_available = false;
        if (css.n <= 128) {
            sampled_network_basis(css, big, small);
        }
        return css;
    }

    ScanResult scan = css.n <= 64 ? scan_big<1>(big, css.n, css.w, css.m, threads)
                                  : scan_big<2>(big, css.n, css.w, css.m, threads);
    if (scan.min_odd != css.d) {
        throw CodeError(
            "E_DISTANCE", who + ": smallest odd weight after puncturing is " + std::to_string(scan.min_odd) +
                              ", expected " + std::to_string(css.d));
    }
    if (!scan.final_word) {
        throw CodeError("E_NO_FINAL_CHECK", who + ": no weight-m word outside c_small");
    }

    BasisSearch search{scan.weight_w_even, css.m, 2'000'000, {}, {}};
    if (!search.dfs(BitVec(css.n))) {
        throw CodeError("E_NO_WEIGHT_W_BASIS", who + ": no triangular basis of weight-w rows found");
    }
    BitMatrix rows(css.m, css.n);
    for (size_t i = 0; i < css.m; i++) {
        rows.set_row(i, scan.weight_w_even[search.chosen[i]]);
    }
    css.c_small = ClassicalCode::from_generator(css.name + "_small", rows, css.w, true);
    css.seeds = search.seeds;
    css.final_check = *scan.final_word;
    css.matrices_available = true;
    css.network_available = true;
    return css;
}

const CssCode &builtin_css(std::string_view name) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<CssCode>, std::less<>> cache;
    const ClassicalCode *parent = nullptr;
    for (const auto &c : builtin_catalog()) {
        if (c.name == name || css_name_for(c) == name) {
            parent = &c;
        }
    }
    if (!parent) {
        throw CodeError("E_UNKNOWN_CODE", "unknown code '" + std::string(name) + "'");
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(parent->name);
    if (it == cache.end()) {
        it = cache.emplace(parent->name, std::make_unique<CssCode>(construct_css(*parent))).first;
    }
    return *it->second;
}

std::vector<const CssCode *> builtin_css_codes() {
    std::vector<const CssCode *> out;
    for (const auto &c : builtin_catalog()) {
        out.push_back(&builtin_css(c.name));
    }
    return out;
}

uint64_t to_mask(const BitVec &v) {
    return v.to_u64();
}

BitVec from_mask(uint64_t mask, size_t n) {
    return BitVec::from_u64(mask, n);
}

}  // namespace ancilla
