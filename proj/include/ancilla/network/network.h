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


#ifndef ANCILLA_NETWORK_NETWORK_H
#define ANCILLA_NETWORK_NETWORK_H

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ancilla/codes/css_code.h"

namespace ancilla {

enum class GateKind : uint8_t { PrepZ, Hadamard, Xor, MeasureZ };

enum class Phase : uint8_t { Generation, Verification, FinalHadamard, Interaction };

const char *gate_kind_name(GateKind k);
const char *phase_name(Phase p);

struct Gate {
    GateKind kind;
    uint32_t q;       // qubit, or control for Xor
    uint32_t target;  // Xor target; unused otherwise
    Phase phase;

    static Gate prep(uint32_t q, Phase p) {
        return {GateKind::PrepZ, q, 0, p};
    }
    static Gate hadamard(uint32_t q, Phase p) {
        return {GateKind::Hadamard, q, 0, p};
    }
    static Gate xor_gate(uint32_t c, uint32_t t, Phase p) {
        return {GateKind::Xor, c, t, p};
    }
    static Gate measure(uint32_t q, Phase p) {
        return {GateKind::MeasureZ, q, 0, p};
    }
    bool two_qubit() const {
        return kind == GateKind::Xor;
    }
    bool operator==(const Gate &) const = default;
};

struct Timestep {
    std::vector<Gate> gates;
    /// False for steps in which no qubit evolves freely (the initial
    /// preparation and the closing measurement + Hadamard step).
    bool free_evolution = true;
};

/// Ancilla preparation and verification network on n + 1 qubits: the ancilla
/// block is 0..n-1 and the verifier is qubit n.
struct PrepNetwork {
    std::string code_name;
    size_t n = 0;
    size_t num_qubits = 0;
    std::vector<Timestep> steps;
    /// Set for the a_z role: the same gates read in the conjugate basis.
    bool conjugate_basis = false;

    size_t verifier() const {
        return n;
    }
    /// Every verifier measurement is a restart trigger.
    bool restart_on(const Gate &g) const {
        return g.kind == GateKind::MeasureZ && g.q == verifier();
    }
};

/// Generation (fan-out from seeds), verification against the c_small rows plus
/// a final weight-m check, then H on the whole block.
/// Throws NetworkError E_NO_MATRICES when the code has no usable matrices.
PrepNetwork build_prep_network(const CssCode &css);

/// The same network with all gates of one phase removed (emptied steps are
/// dropped).
PrepNetwork without_phase(const PrepNetwork &net, Phase phase);

struct ResourceCount {
    size_t ops_total = 0;
    std::map<GateKind, size_t> ops_by_kind;
    size_t timesteps = 0;
    /// Qubit-timesteps with no gate, summed over free-evolution steps.
    size_t idle_qubit_timesteps = 0;
    /// (n - 1) * timesteps, the storage-opportunity count used by the
    /// analytic model.
    size_t idle_model = 0;
    /// Weight of the last verification check and the m gates assumed for it.
    size_t final_check_gates = 0;
    size_t final_check_gates_model = 0;
};

ResourceCount count_resources(const PrepNetwork &net);

/// Human-readable violations; empty iff the network is legal: Xor control !=
/// target, qubits in range, no qubit twice per step, at most one two-qubit
/// gate touching the ancilla block per step.
std::vector<std::string> check_schedule_legality(const PrepNetwork &net);

/// One line per timestep of `P(q) H(q) X(c>t) M(q)` tokens.
std::string dump_network(const PrepNetwork &net);
/// Inverse of dump_network. Phases are inferred: gates before the first
/// verifier Xor are generation, Hadamards in the last step are final, the rest
/// verification. The first and last steps are marked as no-free-evolution.
/// Throws ParseError.
PrepNetwork parse_network_dump(std::string_view text, size_t n);

enum class SyndromeMode : uint8_t { Serial, Parallel };

const char *mode_name(SyndromeMode m);
/// Parses "serial" / "parallel"; throws NetworkError E_MODE.
SyndromeMode parse_mode(std::string_view s);

enum class AncillaRole : uint8_t { BitSyndrome, SignSyndrome };

struct Lane {
    AncillaRole role;
    /// Rounds in which this lane's ancilla is consumed.
    std::vector<size_t> rounds;
    /// First register index of this lane (n + 1 qubits).
    size_t base = 0;
};

/// Register layout: block b is qubits 0..n-1, lane L starts at n + L (n + 1).
struct CorrectionSchedule {
    std::string code_name;
    size_t n = 0;
    size_t r = 0;
    SyndromeMode mode = SyndromeMode::Serial;
    size_t eta = 0;
    PrepNetwork prep_x;
    PrepNetwork prep_z;
    std::vector<Lane> lanes;
    /// Interaction steps of each round: n Xor(b -> a_x), n Xor(a_z -> b), then
    /// one step measuring both ancillas.
    std::vector<std::vector<Timestep>> rounds;

    size_t num_qubits() const {
        return n + lanes.size() * (n + 1);
    }
    size_t interaction_steps_per_round() const {
        return rounds.empty() ? 0 : rounds.front().size();
    }
    /// Every gate of the cycle with lane preparations expanded once per use,
    /// sorted; for comparing schedules as multisets.
    std::vector<Gate> gate_multiset() const;
};

/// Throws NetworkError E_INVALID_R for r < 1.
CorrectionSchedule build_correction_schedule(const CssCode &css, size_t r, SyndromeMode mode, size_t eta = 0);

}  // namespace ancilla

#endif
