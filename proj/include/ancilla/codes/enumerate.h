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


#ifndef ANCILLA_CODES_ENUMERATE_H
#define ANCILLA_CODES_ENUMERATE_H

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <thread>
#include <vector>

#include "ancilla/codes/bit_matrix.h"

namespace ancilla {

template <size_t W>
using PackedWord = std::array<uint64_t, W>;

template <size_t W>
std::vector<PackedWord<W>> pack_rows(const BitMatrix &m) {
    std::vector<PackedWord<W>> out(m.rows());
    for (size_t r = 0; r < m.rows(); r++) {
        auto src = m.row_words(r);
        for (size_t i = 0; i < W && i < src.size(); i++) {
            out[r][i] = src[i];
        }
    }
    return out;
}

template <size_t W>
inline size_t packed_weight(const PackedWord<W> &w) {
    size_t s = 0;
    for (uint64_t x : w) {
        s += std::popcount(x);
    }
    return s;
}

inline unsigned resolve_threads(unsigned threads) {
    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
    }
    return threads == 0 ? 1 : threads;
}

/// Visits every element of the span of `rows` exactly once, including zero.
///
/// The top bits of the coefficient vector pick a chunk; within a chunk the low
/// bits advance in Gray-code order so each step costs one row xor. Each chunk
/// owns one State, and the states come back in chunk order, so any reduction
/// over them is independent of the thread count.
template <typename State, size_t W, typename Visit>
std::vector<State> enumerate_span(const std::vector<PackedWord<W>> &rows, unsigned threads, Visit visit) {
    size_t k = rows.size();
    size_t split = k > 18 ? std::min<size_t>(k - 18, 8) : 0;
    size_t low = k - split;
    size_t num_chunks = size_t{1} << split;
    std::vector<State> states(num_chunks);

    auto run_chunk = [&](size_t c) {
        PackedWord<W> word{};
        for (size_t b = 0; b < split; b++) {
            if ((c >> b) & 1) {
                for (size_t i = 0; i < W; i++) {
                    word[i] ^= rows[low + b][i];
                }
            }
        }
        State &st = states[c];
        visit(st, word);
        uint64_t end = uint64_t{1} << low;
        for (uint64_t g = 1; g < end; g++) {
            const auto &r = rows[std::countr_zero(g)];
            for (size_t i = 0; i < W; i++) {
                word[i] ^= r[i];
            }
            visit(st, word);
        }
    };

    unsigned nt = std::min<size_t>(resolve_threads(threads), num_chunks);
    if (nt <= 1) {
        for (size_t c = 0; c < num_chunks; c++) {
            run_chunk(c);
        }
        return states;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; t++) {
        pool.emplace_back([&] {
            for (size_t c = next++; c < num_chunks; c = next++) {
                run_chunk(c);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    return states;
}

/// Words of exactly `weight` in the row space of `g` (full rank, at most 128
/// columns), found by information-set sampling: for each of `iterations`
/// column orders drawn from `seed`, the systematic form is searched for sums
/// of up to three rows. Not exhaustive in general. Sorted lexicographically,
/// without duplicates.
std::vector<BitVec> sample_words_of_weight(const BitMatrix &g, size_t weight, size_t iterations, uint64_t seed);

}  // namespace ancilla

#endif
