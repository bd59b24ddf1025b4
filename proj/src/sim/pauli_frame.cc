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


#include "ancilla/sim/pauli_frame.h"

#include "ancilla/error.h"

namespace ancilla {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

void NoiseModel::validate() const {
    if (!(gamma >= 0 && gamma <= 1) || !(epsilon >= 0 && epsilon <= 1)) {
        throw Error("E_NOISE", "gamma and epsilon must lie in [0, 1]");
    }
}

Rng trial_rng(uint64_t seed, uint64_t trial) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(trial ^ 0x6a09e667f3bcc909ULL)));
}

bool bernoulli(Rng &rng, double p) {
    if (p <= 0) {
        return false;
    }
    return uniform_open0(rng) <= p;
}

}  // namespace ancilla
