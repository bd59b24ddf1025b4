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


#ifndef ANCILLA_SIM_PREP_SIM_H
#define ANCILLA_SIM_PREP_SIM_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ancilla/codes/css_code.h"
#include "ancilla/network/network.h"
#include "ancilla/sim/pauli_frame.h"

namespace ancilla {

/// Where a fault is inserted: right after gate `index` of step `step`, or, for
/// idle slots, on qubit `index` during step `step`.
struct FaultLocation {
    enum class Slot : uint8_t { Gate, Idle, MeasureFlip };
    size_t step = 0;
    Slot slot = Slot::Gate;
    size_t index = 0;

    bool operator==(const FaultLocation &) const = default;
};

/// A location plus the Pauli choice: 0..2 (X, Z, Y) for one qubit, 0..14 for
/// a gate pair (see pair_pauli), 0 for a measurement flip.
struct Fault {
    FaultLocation where;
    uint64_t option = 0;
};

struct RunOutcome {
    bool accepted = true;
    /// Ancilla masks at hand-off, after the final Hadamards.
    uint64_t residual_x = 0;
    uint64_t residual_z = 0;
    /// Bit j is verifier measurement j (1 = flipped from the error-free 0).
    uint64_t measurement_record = 0;
};

/// Noise-free replay with the given faults inserted. Reference implementation
/// of propagation; PrepSimulator must agree with it.
RunOutcome replay_with_faults(const PrepNetwork &net, const std::vector<Fault> &faults);

/// Propagates a frame from the start of step `first_step` to the end.
/// Returns the final frame; `flips` receives the verifier measurement flips.
PauliFrame propagate_from(const PrepNetwork &net, size_t first_step, PauliFrame frame, uint64_t *flips);

/// One fault site with its error probability class.
struct FaultSite {
    FaultLocation where;
    uint32_t options = 3;  // 3, 15 or 1
    size_t effect_offset = 0;
};

/// Everything one fault does downstream, thanks to linearity of propagation.
struct FaultEffect {
    uint64_t flips = 0;
    uint64_t x = 0;
    uint64_t z = 0;

    FaultEffect &operator^=(const FaultEffect &o) {
        flips ^= o.flips;
        x ^= o.x;
        z ^= o.z;
        return *this;
    }
};

/// Precomputes the effect of every (site, Pauli) pair of a network so that a
/// noisy run is an xor of table entries.
class PrepSimulator {
   public:
    /// Throws NetworkError E_ILLEGAL for networks failing legality or with
    /// more than 64 qubits or verifier measurements.
    explicit PrepSimulator(const PrepNetwork &net);

    const PrepNetwork &network() const {
        return net_;
    }
    const std::vector<FaultSite> &gate_sites() const {
        return gate_sites_;
    }
    const std::vector<FaultSite> &idle_sites() const {
        return idle_sites_;
    }
    const FaultEffect &effect(const FaultSite &s, uint64_t option) const {
        return effects_[s.effect_offset + option];
    }
    size_t num_measurements() const {
        return num_measurements_;
    }
    size_t steps() const {
        return net_.steps.size();
    }

    /// Gate sites fail with gamma (Paulis uniform over options), idle slots
    /// with epsilon (X, Y, Z uniform), verifier measurements flip with gamma.
    RunOutcome run(const NoiseModel &noise, Rng &rng) const;

   private:
    PrepNetwork net_;
    size_t num_measurements_ = 0;
    std::vector<FaultSite> gate_sites_;
    std::vector<FaultSite> idle_sites_;
    std::vector<FaultEffect> effects_;
};

/// Convenience wrapper; builds the effect table on each call.
RunOutcome run_prep_once(const PrepNetwork &net, const NoiseModel &noise, Rng &rng);

/// Bit-flip patterns e on the ancilla, injected just before the first
/// verification step, that pass every check. Sorted ascending.
/// Throws NetworkError E_TOO_LARGE for n > 26.
std::vector<uint64_t> acceptance_set(const PrepNetwork &net);

struct SingleFaultReport {
    Fault fault;
    bool detected = false;
    /// Coset weight of the bit-error residual (hand-off Z mask, i.e. the X
    /// errors present before the final Hadamards) modulo c_small.
    size_t residual_coset_weight = 0;
    /// Hand-off X mask outside c_big: corrupts the syndrome it is used for.
    bool syndrome_invalidating = false;
    uint64_t residual_x = 0;
    uint64_t residual_z = 0;
};

std::vector<SingleFaultReport> enumerate_single_faults(const PrepNetwork &net, const CssCode &css);

/// Checks that the noise-free network prepares the encoded zero of `css`
/// (before the final Hadamards) with deterministic verifier outcomes.
/// Throws PreparationError describing the first mismatch.
void verify_prepared_state(const PrepNetwork &net, const CssCode &css);

struct ReducedNetworkCheck {
    bool pass = false;
    std::optional<SingleFaultReport> counterexample;
    size_t locations_checked = 0;
};

/// Passes iff every undetected single fault leaves bit-error coset weight <= 1.
/// Throws PreparationError if the candidate does not prepare the right state.
ReducedNetworkCheck check_reduced_network(const PrepNetwork &candidate, const CssCode &css);

std::string describe_fault(const PrepNetwork &net, const Fault &f);

}  // namespace ancilla

#endif
