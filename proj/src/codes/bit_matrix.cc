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

#include "ancilla/codes/bit_matrix.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ancilla {

namespace {

size_t words_for(size_t bits) {
    return (bits + 63) / 64;
}

uint64_t tail_mask(size_t bits) {
    size_t r = bits & 63;
    return r == 0 ? ~uint64_t{0} : (uint64_t{1} << r) - 1;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
    }
    return -1;
}

}  // namespace

BitVec::BitVec(size_t num_bits) : num_bits_(num_bits), words_(words_for(num_bits), 0) {
}

BitVec BitVec::from_bit_string(std::string_view bits) {
    BitVec v(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return v;
}

BitVec BitVec::from_hex(std::string_view hex, size_t num_bits) {
    if (hex.size() != (num_bits + 3) / 4) {
        throw std::invalid_argument(
            "expected " + std::to_string((num_bits + 3) / 4) + " hex digits, got " + std::to_string(hex.size()));
    }
    BitVec v(num_bits);
    for (size_t d = 0; d < hex.size(); d++) {
        int x = hex_value(hex[d]);
        if (x < 0) {
            throw std::invalid_argument(std::string("invalid hex digit '") + hex[d] + "'");
        }
        for (size_t b = 0; b < 4; b++) {
            size_t coord = 4 * d + b;
            bool bit = (x >> (3 - b)) & 1;
            if (coord >= num_bits) {
                if (bit) {
                    throw std::invalid_argument("nonzero padding bits in hex row");
                }
                continue;
            }
            v.set(coord, bit);
        }
    }
    return v;
}

BitVec BitVec::from_u64(uint64_t value, size_t num_bits) {
    assert(num_bits <= 64);
    BitVec v(num_bits);
    if (num_bits > 0) {
        v.words_[0] = value & tail_mask(num_bits);
    }
    return v;
}

size_t BitVec::weight() const {
    size_t w = 0;
    for (uint64_t x : words_) {
        w += std::popcount(x);
    }
    return w;
}

bool BitVec::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t x) { return x == 0; });
}

bool BitVec::dot(const BitVec &other) const {
    assert(other.num_bits_ == num_bits_);
    uint64_t acc = 0;
    for (size_t i = 0; i < words_.size(); i++) {
        acc ^= words_[i] & other.words_[i];
    }
    return std::popcount(acc) & 1;
}

std::vector<size_t> BitVec::support() const {
    std::vector<size_t> out;
    for (size_t w = 0; w < words_.size(); w++) {
        uint64_t x = words_[w];
        while (x) {
            out.push_back(w * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return out;
}

size_t BitVec::first_one() const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w]) {
            return w * 64 + std::countr_zero(words_[w]);
        }
    }
    return num_bits_;
}

uint64_t BitVec::to_u64() const {
    if (num_bits_ > 64) {
        throw std::out_of_range("BitVec::to_u64 requires at most 64 bits");
    }
    return words_.empty() ? 0 : words_[0];
}

std::string BitVec::to_bit_string() const {
    std::string s(num_bits_, '0');
    for (size_t i = 0; i < num_bits_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

std::string BitVec::to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string s((num_bits_ + 3) / 4, '0');
    for (size_t d = 0; d < s.size(); d++) {
        int x = 0;
        for (size_t b = 0; b < 4; b++) {
            size_t coord = 4 * d + b;
            if (coord < num_bits_ && get(coord)) {
                x |= 1 << (3 - b);
            }
        }
        s[d] = digits[x];
    }
    return s;
}

BitVec &BitVec::operator^=(const BitVec &other) {
    assert(other.num_bits_ == num_bits_);
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    assert(other.num_bits_ == num_bits_);
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

BitVec BitVec::operator^(const BitVec &other) const {
    BitVec r = *this;
    r ^= other;
    return r;
}

BitVec BitVec::operator&(const BitVec &other) const {
    BitVec r = *this;
    r &= other;
    return r;
}

bool BitVec::lex_before(const BitVec &other) const {
    assert(other.num_bits_ == num_bits_);
    for (size_t w = 0; w < words_.size(); w++) {
        uint64_t diff = words_[w] ^ other.words_[w];
        if (diff) {
            uint64_t low = diff & -diff;
            return (words_[w] & low) != 0;
        }
    }
    return false;
}

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {
}

BitMatrix BitMatrix::from_rows(std::span<const BitVec> rows, size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        m.set_row(r, rows[r]);
    }
    return m;
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

void BitMatrix::set(size_t r, size_t c, bool value) {
    uint64_t &w = data_[r * stride_ + (c >> 6)];
    uint64_t m = uint64_t{1} << (c & 63);
    w = value ? (w | m) : (w & ~m);
}

BitVec BitMatrix::row(size_t r) const {
    BitVec v(cols_);
    std::copy_n(data_.begin() + r * stride_, stride_, v.words().begin());
    return v;
}

std::vector<BitVec> BitMatrix::row_vectors() const {
    std::vector<BitVec> out;
    out.reserve(rows_);
    for (size_t r = 0; r < rows_; r++) {
        out.push_back(row(r));
    }
    return out;
}

void BitMatrix::set_row(size_t r, const BitVec &v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("row length " + std::to_string(v.size()) + " != matrix width " + std::to_string(cols_));
    }
    std::copy(v.words().begin(), v.words().end(), data_.begin() + r * stride_);
}

size_t BitMatrix::row_weight(size_t r) const {
    size_t w = 0;
    for (uint64_t x : row_words(r)) {
        w += std::popcount(x);
    }
    return w;
}

void BitMatrix::xor_row_into(size_t dst, size_t src) {
    uint64_t *d = data_.data() + dst * stride_;
    const uint64_t *s = data_.data() + src * stride_;
    for (size_t i = 0; i < stride_; i++) {
        d[i] ^= s[i];
    }
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(data_.begin() + a * stride_, data_.begin() + (a + 1) * stride_, data_.begin() + b * stride_);
}

void BitMatrix::append_row(const BitVec &v) {
    if (rows_ == 0 && cols_ == 0) {
        cols_ = v.size();
        stride_ = words_for(cols_);
    }
    data_.resize((rows_ + 1) * stride_, 0);
    rows_++;
    set_row(rows_ - 1, v);
}

BitMatrix BitMatrix::rref(std::vector<size_t> *pivots) const {
    BitMatrix m = *this;
    size_t rank = 0;
    std::vector<size_t> piv;
    for (size_t c = 0; c < cols_ && rank < rows_; c++) {
        size_t found = rows_;
        for (size_t r = rank; r < rows_; r++) {
            if (m.get(r, c)) {
                found = r;
                break;
            }
        }
        if (found == rows_) {
            continue;
        }
        m.swap_rows(rank, found);
        for (size_t r = 0; r < rows_; r++) {
            if (r != rank && m.get(r, c)) {
                m.xor_row_into(r, rank);
            }
        }
        piv.push_back(c);
        rank++;
    }
    m.rows_ = rank;
    m.data_.resize(rank * stride_);
    if (pivots) {
        *pivots = std::move(piv);
    }
    return m;
}

size_t BitMatrix::rank() const {
    return rref().rows();
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                t.set(c, r, true);
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::mul_transpose(const BitMatrix &other) const {
    if (other.cols_ != cols_) {
        throw std::invalid_argument("mul_transpose: width mismatch");
    }
    BitMatrix out(rows_, other.rows_);
    for (size_t i = 0; i < rows_; i++) {
        auto a = row_words(i);
        for (size_t j = 0; j < other.rows_; j++) {
            auto b = other.row_words(j);
            uint64_t acc = 0;
            for (size_t k = 0; k < stride_; k++) {
                acc ^= a[k] & b[k];
            }
            if (std::popcount(acc) & 1) {
                out.set(i, j, true);
            }
        }
    }
    return out;
}

BitVec BitMatrix::combine_rows(const BitVec &coeffs) const {
    assert(coeffs.size() == rows_);
    BitVec out(cols_);
    auto w = out.words();
    for (size_t r : coeffs.support()) {
        auto src = row_words(r);
        for (size_t k = 0; k < stride_; k++) {
            w[k] ^= src[k];
        }
    }
    return out;
}

BitVec BitMatrix::apply(const BitVec &v) const {
    assert(v.size() == cols_);
    BitVec out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        auto a = row_words(r);
        uint64_t acc = 0;
        for (size_t k = 0; k < stride_; k++) {
            acc ^= a[k] & v.words()[k];
        }
        out.set(r, std::popcount(acc) & 1);
    }
    return out;
}

BitMatrix BitMatrix::nullspace() const {
    std::vector<size_t> pivots;
    BitMatrix red = rref(&pivots);
    std::vector<bool> is_pivot(cols_, false);
    for (size_t p : pivots) {
        is_pivot[p] = true;
    }
    BitMatrix basis(cols_ - pivots.size(), cols_);
    size_t out = 0;
    for (size_t free = 0; free < cols_; free++) {
        if (is_pivot[free]) {
            continue;
        }
        basis.set(out, free, true);
        for (size_t r = 0; r < pivots.size(); r++) {
            if (red.get(r, free)) {
                basis.set(out, pivots[r], true);
            }
        }
        out++;
    }
    return basis;
}

bool BitMatrix::in_row_space(const BitVec &v) const {
    BitMatrix ext = *this;
    ext.append_row(v);
    return ext.rank() == rank();
}

BitMatrix BitMatrix::without_column(size_t c) const {
    BitMatrix out(rows_, cols_ - 1);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t j = 0, k = 0; j < cols_; j++) {
            if (j == c) {
                continue;
            }
            if (get(r, j)) {
                out.set(r, k, true);
            }
            k++;
        }
    }
    return out;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint64_t x) { return x == 0; });
}

bool same_row_space(const BitMatrix &a, const BitMatrix &b) {
    if (a.cols() != b.cols()) {
        return false;
    }
    return a.rref() == b.rref();
}

}  // namespace ancilla
