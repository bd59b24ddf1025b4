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


#ifndef ANCILLA_SIM_PAULI_FRAME_H
#define ANCILLA_SIM_PAULI_FRAME_H

#include <cmath>
#include <cstdint>
#include <random>

#include "ancilla/network/network.h"

namespace ancilla {

/// X and Z error masks on up to 64 qubits. A Y error sets both bits.
struct PauliFrame {
    uint64_t x = 0;
    uint64_t z = 0;

    PauliFrame &operator^=(const PauliFrame &o) {
        x ^= o.x;
        z ^= o.z;
        return *this;
    }
    bool operator==(const PauliFrame &) const = default;
};

/// Conjugates the frame through one gate. For MeasureZ the return value is
/// the outcome flip (the X bit); the Z bit of the measured qubit is dropped.
/// Other gates return false.
inline bool propagate(const Gate &g, PauliFrame &f) {
    const uint64_t bq = uint64_t{1} << g.q;
    switch (g.kind) {
        case GateKind::PrepZ:
            f.x &= ~bq;
            f.z &= ~bq;
            return false;
        case GateKind::Hadamard: {
            uint64_t dx = (f.x ^ f.z) & bq;
            f.x ^= dx;
            f.z ^= dx;
            return false;
        }
        case GateKind::Xor: {
            const uint64_t bt = uint64_t{1} << g.target;
            if (f.x & bq) {
                f.x ^= bt;
            }
            if (f.z & bt) {
                f.z ^= bq;
            }
            return false;
        }
        case GateKind::MeasureZ:
            f.z &= ~bq;
            return (f.x & bq) != 0;
    }
    return false;
}

/// Gate/measurement error probability gamma and memory error probability
/// epsilon per qubit per timestep.
struct NoiseModel {
    double gamma = 0;
    double epsilon = 0;

    /// Throws Error E_NOISE unless both lie in [0, 1].
    void validate() const;
};

using Rng = std::mt19937_64;

/// Independent stream for one trial, keyed by (master seed, trial index).
Rng trial_rng(uint64_t seed, uint64_t trial);

/// Uniform integer in [0, k). Implemented here rather than with
/// std::uniform_int_distribution so streams match across standard libraries.
inline uint64_t uniform_below(Rng &rng, uint64_t k) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(rng()) * k) >> 64);
}

/// Uniform double in (0, 1].
inline double uniform_open0(Rng &rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

bool bernoulli(Rng &rng, double p);

/// Calls fn(i) for each i in [0, count) independently with probability p,
/// in increasing order, by geometric skipping.
template <typename Fn>
void for_each_hit(uint64_t count, double p, Rng &rng, Fn fn) {
    if (p <= 0 || count == 0) {
        return;
    }
    if (p >= 1) {
        for (uint64_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    const double denom = std::log1p(-p);
    auto skip = [&]() -> double { return std::floor(std::log(uniform_open0(rng)) / denom); };
    double i = skip();
    while (i < static_cast<double>(count)) {
        fn(static_cast<uint64_t>(i));
        i += 1 + skip();
    }
}

/// Single-qubit Pauli option 0..2 -> (x, z) bits: X, Z, Y.
inline PauliFrame single_pauli(uint32_t q, uint64_t option) {
    const uint64_t b = uint64_t{1} << q;
    switch (option) {
        case 0:
            return {b, 0};
        case 1:
            return {0, b};
        default:
            return {b, b};
    }
}

/// Two-qubit Pauli option 0..14 -> nontrivial pair on (a, b). Option + 1 is a
/// 4-bit code (x_a, z_a, x_b, z_b) from the low bit up.
inline PauliFrame pair_pauli(uint32_t a, uint32_t b, uint64_t option) {
    uint64_t code = option + 1;
    PauliFrame f;
    if (code & 1) {
        f.x |= uint64_t{1} << a;
    }
    if (code & 2) {
        f.z |= uint64_t{1} << a;
    }
    if (code & 4) {
        f.x |= uint64_t{1} << b;
    }
    if (code & 8) {
        f.z |= uint64_t{1} << b;
    }
    return f;
}

}  // namespace ancilla

#endif
