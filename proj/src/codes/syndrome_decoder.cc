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


#include "ancilla/codes/syndrome_decoder.h"

#include <bit>
#include <cmath>
#include <sstream>

#include "ancilla/error.h"

namespace ancilla {

namespace {

constexpr uint64_t kEmpty = ~uint64_t{0};

std::vector<uint64_t> row_masks(const BitMatrix &m) {
    std::vector<uint64_t> out;
    for (size_t r = 0; r < m.rows(); r++) {
        out.push_back(m.row(r).to_u64());
    }
    return out;
}

uint64_t parities(const std::vector<uint64_t> &rows, uint64_t e) {
    uint64_t s = 0;
    for (size_t j = 0; j < rows.size(); j++) {
        s |= uint64_t(std::popcount(rows[j] & e) & 1) << j;
    }
    return s;
}

}  // namespace

uint64_t ball_size(size_t n, size_t t) {
    uint64_t total = 0;
    uint64_t c = 1;
    for (size_t i = 0; i <= t && i <= n; i++) {
        total += c;
        c = c * (n - i) / (i + 1);
    }
    return total;
}

SyndromeDecoder SyndromeDecoder::build(const CssCode &css, uint64_t max_entries) {
    if (!css.matrices_available || css.n > 63) {
        throw CodeError("E_NO_MATRICES", "code '" + css.name + "': matrices unavailable for decoding");
    }
    uint64_t need = ball_size(css.n, css.t);
    if (css.t > 7 || need > max_entries) {
        std::ostringstream msg;
        msg << "code '" << css.name << "': decoder table needs " << need << " entries (about "
            << (need * 32 + (1 << 20) - 1) / (1 << 20) << " MiB); limit is " << max_entries << " entries and t <= 7";
        throw CodeError("E_DECODER_SIZE", msg.str());
    }
    SyndromeDecoder dec;
    dec.n_ = css.n;
    dec.t_ = css.t;
    // c_big's check matrix is c_small's generator.
    dec.checks_ = row_masks(css.c_small.generator);
    size_t m = dec.checks_.size();
    dec.use_dense_ = m <= 24;
    if (dec.use_dense_) {
        dec.dense_.assign(size_t{1} << m, kEmpty);
    } else {
        dec.sparse_.reserve(need);
    }
    for (size_t wt = 0; wt <= dec.t_; wt++) {
        for_each_weight_mask(dec.n_, wt, [&](uint64_t e) {
            uint64_t s = parities(dec.checks_, e);
            if (dec.use_dense_) {
                if (dec.dense_[s] == kEmpty) {
                    dec.dense_[s] = e;
                    dec.entries_++;
                }
            } else if (dec.sparse_.emplace(s, e).second) {
                dec.entries_++;
            }
        });
    }
    return dec;
}

uint64_t SyndromeDecoder::syndrome(uint64_t error) const {
    return parities(checks_, error);
}

std::optional<uint64_t> SyndromeDecoder::decode(uint64_t syndrome) const {
    if (use_dense_) {
        uint64_t e = dense_[syndrome];
        if (e == kEmpty) {
            return std::nullopt;
        }
        return e;
    }
    auto it = sparse_.find(syndrome);
    if (it == sparse_.end()) {
        return std::nullopt;
    }
    return it->second;
}

CosetWeights CosetWeights::build(const CssCode &css, size_t radius) {
    if (!css.matrices_available || css.n > 63) {
        throw CodeError("E_NO_MATRICES", "code '" + css.name + "': matrices unavailable");
    }
    CosetWeights cw;
    cw.n_ = css.n;
    cw.checks_ = row_masks(css.c_big.generator);
    size_t k = cw.checks_.size();
    cw.use_dense_ = k <= 24;
    if (cw.use_dense_) {
        size_t cosets = size_t{1} << k;
        cw.dense_.assign(cosets, 0xff);
        size_t filled = 0;
        for (size_t wt = 0; wt <= cw.n_ && filled < cosets; wt++) {
            for_each_weight_mask(cw.n_, wt, [&](uint64_t e) {
                uint8_t &slot = cw.dense_[parities(cw.checks_, e)];
                if (slot == 0xff) {
                    slot = static_cast<uint8_t>(wt);
                    filled++;
                }
            });
        }
        cw.radius_ = cw.n_;
        return cw;
    }
    cw.radius_ = radius;
    for (size_t wt = 0; wt <= radius; wt++) {
        for_each_weight_mask(cw.n_, wt, [&](uint64_t e) {
            cw.sparse_.emplace(parities(cw.checks_, e), static_cast<uint8_t>(wt));
        });
    }
    return cw;
}

uint64_t CosetWeights::key(uint64_t error) const {
    return parities(checks_, error);
}

size_t CosetWeights::weight(uint64_t error) const {
    uint64_t k = key(error);
    if (use_dense_) {
        return dense_[k];
    }
    auto it = sparse_.find(k);
    return it == sparse_.end() ? radius_ + 1 : it->second;
}

}  // namespace ancilla
