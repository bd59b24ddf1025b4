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

#ifndef ANCILLA_CODES_BIT_MATRIX_H
#define ANCILLA_CODES_BIT_MATRIX_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ancilla {

/// A fixed-length vector over GF(2), packed 64 coordinates per word.
///
/// Coordinate i lives in bit (i % 64) of word (i / 64). Bits beyond size() in
/// the last word are always zero, so word-level popcount and comparison are
/// exact.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits);

    /// Parses a string of '0'/'1' characters; character i is coordinate i.
    static BitVec from_bit_string(std::string_view bits);
    /// Parses big-endian hex: the leftmost bit of the first digit is coordinate 0.
    /// Requires exactly ceil(num_bits / 4) digits with zero padding bits.
    static BitVec from_hex(std::string_view hex, size_t num_bits);
    /// Low `num_bits` bits of `value`, bit i = coordinate i.
    static BitVec from_u64(uint64_t value, size_t num_bits);

    size_t size() const {
        return num_bits_;
    }
    bool get(size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void set(size_t i, bool value) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= m;
        } else {
            words_[i >> 6] &= ~m;
        }
    }
    void flip(size_t i) {
        words_[i >> 6] ^= uint64_t{1} << (i & 63);
    }

    size_t weight() const;
    bool is_zero() const;
    /// Parity of the overlap with `other`.
    bool dot(const BitVec &other) const;
    /// Coordinates holding a one, ascending.
    std::vector<size_t> support() const;
    /// Index of the first one, or size() if zero.
    size_t first_one() const;

    /// Requires size() <= 64.
    uint64_t to_u64() const;
    std::string to_bit_string() const;
    std::string to_hex() const;

    std::span<const uint64_t> words() const {
        return words_;
    }
    std::span<uint64_t> words() {
        return words_;
    }

    BitVec &operator^=(const BitVec &other);
    BitVec &operator&=(const BitVec &other);
    BitVec operator^(const BitVec &other) const;
    BitVec operator&(const BitVec &other) const;
    bool operator==(const BitVec &other) const = default;

    /// Lexicographic order on supports: compares the first coordinate where
    /// the vectors differ and puts the vector holding the one there first.
    bool lex_before(const BitVec &other) const;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Dense row-major matrix over GF(2). Each row is padded to whole words.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);
    static BitMatrix from_rows(std::span<const BitVec> rows, size_t cols);
    static BitMatrix identity(size_t n);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t stride() const {
        return stride_;
    }

    bool get(size_t r, size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(size_t r, size_t c, bool value);

    std::span<const uint64_t> row_words(size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<uint64_t> row_words(size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    BitVec row(size_t r) const;
    std::vector<BitVec> row_vectors() const;
    void set_row(size_t r, const BitVec &v);
    size_t row_weight(size_t r) const;

    /// row[dst] ^= row[src]
    void xor_row_into(size_t dst, size_t src);
    void swap_rows(size_t a, size_t b);
    void append_row(const BitVec &v);

    /// Reduced row echelon form. Zero rows are dropped from the result.
    /// `pivots`, when given, receives the pivot column of each kept row.
    BitMatrix rref(std::vector<size_t> *pivots = nullptr) const;
    size_t rank() const;

    BitMatrix transpose() const;
    /// this * other^T; entry (i, j) is the parity of row i of this and row j of other.
    BitMatrix mul_transpose(const BitMatrix &other) const;
    /// Row vector times matrix: sum of the rows selected by `coeffs`.
    BitVec combine_rows(const BitVec &coeffs) const;
    /// M * v^T as a vector of per-row parities.
    BitVec apply(const BitVec &v) const;

    /// A basis of { x : row_i . x = 0 for every row i }, one basis vector per row.
    BitMatrix nullspace() const;
    bool in_row_space(const BitVec &v) const;
    BitMatrix without_column(size_t c) const;

    bool is_zero() const;
    bool operator==(const BitMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

/// True when both matrices span the same row space.
bool same_row_space(const BitMatrix &a, const BitMatrix &b);

}  // namespace ancilla

#endif
