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


#include "ancilla/sim/prep_sim.h"

#include <algorithm>
#include <bit>
#include <sstream>

#include "ancilla/codes/syndrome_decoder.h"
#include "ancilla/error.h"

namespace ancilla {

namespace {

uint64_t low_mask(size_t n) {
    return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

bool is_verifier_measure(const PrepNetwork &net, const Gate &g) {
    return g.kind == GateKind::MeasureZ && g.q == net.verifier();
}

std::vector<size_t> measurements_before(const PrepNetwork &net) {
    std::vector<size_t> out(net.steps.size() + 1, 0);
    for (size_t s = 0; s < net.steps.size(); s++) {
        out[s + 1] = out[s];
        for (const auto &g : net.steps[s].gates) {
            if (is_verifier_measure(net, g)) {
                out[s + 1]++;
            }
        }
    }
    return out;
}

PauliFrame fault_frame(const PrepNetwork &net, const Fault &f) {
    const auto &w = f.where;
    if (w.slot == FaultLocation::Slot::Idle) {
        return single_pauli(static_cast<uint32_t>(w.index), f.option);
    }
    const Gate &g = net.steps[w.step].gates[w.index];
    if (w.slot == FaultLocation::Slot::MeasureFlip) {
        return {};
    }
    if (g.two_qubit()) {
        return pair_pauli(g.q, g.target, f.option);
    }
    return single_pauli(g.q, f.option);
}

uint64_t measure_index(const PrepNetwork &net, const std::vector<size_t> &before, const FaultLocation &w) {
    size_t idx = before[w.step];
    for (size_t i = 0; i < w.index; i++) {
        if (is_verifier_measure(net, net.steps[w.step].gates[i])) {
            idx++;
        }
    }
    return idx;
}

std::vector<uint64_t> row_masks(const BitMatrix &m) {
    std::vector<uint64_t> out;
    for (size_t r = 0; r < m.rows(); r++) {
        out.push_back(m.row(r).to_u64());
    }
    return out;
}

bool orthogonal_to_all(const std::vector<uint64_t> &rows, uint64_t v) {
    for (uint64_t r : rows) {
        if (std::popcount(r & v) & 1) {
            return false;
        }
    }
    return true;
}

const char *pauli_letter(uint64_t xz) {
    static const char *names[] = {"I", "X", "Z", "Y"};
    return names[xz & 3];
}

}  // namespace

PauliFrame propagate_from(const PrepNetwork &net, size_t first_step, PauliFrame frame, uint64_t *flips) {
    size_t idx = 0;
    for (size_t s = 0; s < first_step && s < net.steps.size(); s++) {
        for (const auto &g : net.steps[s].gates) {
            idx += is_verifier_measure(net, g);
        }
    }
    uint64_t out = 0;
    for (size_t s = first_step; s < net.steps.size(); s++) {
        for (const auto &g : net.steps[s].gates) {
            bool flip = propagate(g, frame);
            if (is_verifier_measure(net, g)) {
                if (flip) {
                    out |= uint64_t{1} << idx;
                }
                idx++;
            }
        }
    }
    if (flips) {
        *flips = out;
    }
    return frame;
}

RunOutcome replay_with_faults(const PrepNetwork &net, const std::vector<Fault> &faults) {
    PauliFrame frame;
    RunOutcome out;
    size_t idx = 0;
    for (size_t s = 0; s < net.steps.size(); s++) {
        const auto &gates = net.steps[s].gates;
        for (size_t i = 0; i < gates.size(); i++) {
            bool flip = propagate(gates[i], frame);
            for (const auto &f : faults) {
                if (f.where.step != s || f.where.index != i) {
                    continue;
                }
                if (f.where.slot == FaultLocation::Slot::Gate) {
                    frame ^= fault_frame(net, f);
                } else if (f.where.slot == FaultLocation::Slot::MeasureFlip) {
                    flip = !flip;
                }
            }
            if (is_verifier_measure(net, gates[i])) {
                if (flip) {
                    out.measurement_record |= uint64_t{1} << idx;
                }
                idx++;
            }
        }
        for (const auto &f : faults) {
            if (f.where.step == s && f.where.slot == FaultLocation::Slot::Idle) {
                frame ^= fault_frame(net, f);
            }
        }
    }
    out.accepted = out.measurement_record == 0;
    out.residual_x = frame.x & low_mask(net.n);
    out.residual_z = frame.z & low_mask(net.n);
    return out;
}

PrepSimulator::PrepSimulator(const PrepNetwork &net) : net_(net) {
    auto problems = check_schedule_legality(net);
    if (!problems.empty()) {
        throw NetworkError("E_ILLEGAL", "illegal network: " + problems.front());
    }
    if (net.num_qubits > 64) {
        throw NetworkError("E_TOO_LARGE", "frame simulation supports at most 64 qubits");
    }
    auto before = measurements_before(net);
    num_measurements_ = before.back();
    if (num_measurements_ > 64) {
        throw NetworkError("E_TOO_LARGE", "frame simulation supports at most 64 verifier measurements");
    }
    const uint64_t block = low_mask(net.n);

    auto add_site = [&](std::vector<FaultSite> &dst, FaultLocation where, uint32_t options) {
        FaultSite site{where, options, effects_.size()};
        for (uint32_t o = 0; o < options; o++) {
            Fault f{where, o};
            FaultEffect e;
            if (where.slot == FaultLocation::Slot::MeasureFlip) {
                e.flips = uint64_t{1} << measure_index(net, before, where);
            } else {
                PauliFrame fr = propagate_from(net, where.step + 1, fault_frame(net, f), &e.flips);
                e.x = fr.x & block;
                e.z = fr.z & block;
            }
            effects_.push_back(e);
        }
        dst.push_back(site);
    };

    for (size_t s = 0; s < net.steps.size(); s++) {
        const auto &step = net.steps[s];
        uint64_t touched = 0;
        for (size_t i = 0; i < step.gates.size(); i++) {
            const Gate &g = step.gates[i];
            touched |= uint64_t{1} << g.q;
            if (g.two_qubit()) {
                touched |= uint64_t{1} << g.target;
            }
            FaultLocation where{s, FaultLocation::Slot::Gate, i};
            if (g.kind == GateKind::MeasureZ) {
                if (is_verifier_measure(net, g)) {
                    where.slot = FaultLocation::Slot::MeasureFlip;
                    add_site(gate_sites_, where, 1);
                }
            } else {
                add_site(gate_sites_, where, g.two_qubit() ? 15 : 3);
            }
        }
        if (!step.free_evolution) {
            continue;
        }
        for (size_t q = 0; q < net.num_qubits; q++) {
            if (!((touched >> q) & 1)) {
                add_site(idle_sites_, FaultLocation{s, FaultLocation::Slot::Idle, q}, 3);
            }
        }
    }
}

RunOutcome PrepSimulator::run(const NoiseModel &noise, Rng &rng) const {
    FaultEffect acc;
    for_each_hit(gate_sites_.size(), noise.gamma, rng, [&](uint64_t i) {
        const FaultSite &s = gate_sites_[i];
        acc ^= effects_[s.effect_offset + (s.options == 1 ? 0 : uniform_below(rng, s.options))];
    });
    for_each_hit(idle_sites_.size(), noise.epsilon, rng, [&](uint64_t i) {
        const FaultSite &s = idle_sites_[i];
        acc ^= effects_[s.effect_offset + uniform_below(rng, 3)];
    });
    RunOutcome out;
    out.measurement_record = acc.flips;
    out.accepted = acc.flips == 0;
    out.residual_x = acc.x;
    out.residual_z = acc.z;
    return out;
}

RunOutcome run_prep_once(const PrepNetwork &net, const NoiseModel &noise, Rng &rng) {
    return PrepSimulator(net).run(noise, rng);
}

std::vector<uint64_t> acceptance_set(const PrepNetwork &net) {
    if (net.n > 26) {
        throw NetworkError("E_TOO_LARGE", "acceptance_set enumerates 2^n patterns; n must be at most 26");
    }
    size_t first = net.steps.size();
    for (size_t s = 0; s < net.steps.size() && first == net.steps.size(); s++) {
        for (const auto &g : net.steps[s].gates) {
            if (g.phase == Phase::Verification) {
                first = s;
                break;
            }
        }
    }
    std::vector<uint64_t> flips(net.n);
    for (size_t q = 0; q < net.n; q++) {
        propagate_from(net, first, PauliFrame{uint64_t{1} << q, 0}, &flips[q]);
    }
    std::vector<uint64_t> accepted;
    uint64_t pattern = 0;
    uint64_t acc = 0;
    uint64_t total = uint64_t{1} << net.n;
    for (uint64_t g = 0;; g++) {
        if (acc == 0) {
            accepted.push_back(pattern);
        }
        if (g + 1 == total) {
            break;
        }
        size_t q = std::countr_zero(g + 1);
        pattern ^= uint64_t{1} << q;
        acc ^= flips[q];
    }
    std::sort(accepted.begin(), accepted.end());
    return accepted;
}

std::vector<SingleFaultReport> enumerate_single_faults(const PrepNetwork &net, const CssCode &css) {
    if (net.n != css.n) {
        throw NetworkError("E_MISMATCH", "network and code lengths differ");
    }
    PrepSimulator sim(net);
    CosetWeights cosets = CosetWeights::build(css, std::max<size_t>(css.t, 2));
    auto small_rows = row_masks(css.c_small.generator);
    std::vector<SingleFaultReport> out;
    for (const auto *sites : {&sim.gate_sites(), &sim.idle_sites()}) {
        for (const auto &site : *sites) {
            for (uint32_t o = 0; o < site.options; o++) {
                const FaultEffect &e = sim.effect(site, o);
                SingleFaultReport r;
                r.fault = Fault{site.where, o};
                r.detected = e.flips != 0;
                r.residual_x = e.x;
                r.residual_z = e.z;
                r.residual_coset_weight = cosets.weight(e.z);
                r.syndrome_invalidating = !orthogonal_to_all(small_rows, e.x);
                out.push_back(r);
            }
        }
    }
    return out;
}

void verify_prepared_state(const PrepNetwork &net, const CssCode &css) {
    if (!css.matrices_available) {
        throw PreparationError("code '" + css.name + "' has no matrices to compare against");
    }
    if (net.n != css.n) {
        throw PreparationError(
            "network acts on " + std::to_string(net.n) + " ancilla qubits, code '" + css.name + "' has n = " +
            std::to_string(css.n));
    }
    if (net.num_qubits > 64) {
        throw PreparationError("state check supports at most 64 qubits");
    }
    // The noise-free state is a uniform superposition over a subspace, kept
    // as a reduced basis.
    std::vector<uint64_t> basis;
    auto reduce = [&]() {
        std::vector<uint64_t> red;
        for (uint64_t v : basis) {
            for (uint64_t r : red) {
                uint64_t top = uint64_t{1} << (63 - std::countl_zero(r));
                if (v & top) {
                    v ^= r;
                }
            }
            if (v) {
                uint64_t top = uint64_t{1} << (63 - std::countl_zero(v));
                for (auto &r : red) {
                    if (r & top) {
                        r ^= v;
                    }
                }
                red.push_back(v);
                std::sort(red.begin(), red.end(), std::greater<>());
            }
        }
        basis = std::move(red);
    };
    auto constant = [&](uint32_t q) {
        uint64_t b = uint64_t{1} << q;
        return std::none_of(basis.begin(), basis.end(), [b](uint64_t v) { return (v & b) != 0; });
    };
    auto contains_unit = [&](uint32_t q) {
        std::vector<uint64_t> keep = basis;
        size_t before = basis.size();
        basis.push_back(uint64_t{1} << q);
        reduce();
        bool in = basis.size() == before;
        basis = std::move(keep);
        return in;
    };
    auto drop_unit = [&](uint32_t q) {
        for (auto &v : basis) {
            v &= ~(uint64_t{1} << q);
        }
        reduce();
    };

    bool saw_final = false;
    for (size_t s = 0; s < net.steps.size(); s++) {
        const std::string where = "step " + std::to_string(s) + ": ";
        std::vector<uint32_t> final_h;
        for (const auto &g : net.steps[s].gates) {
            switch (g.kind) {
                case GateKind::PrepZ:
                    if (!constant(g.q)) {
                        if (!contains_unit(g.q)) {
                            throw PreparationError(where + "preparation of entangled qubit " + std::to_string(g.q));
                        }
                        drop_unit(g.q);
                    }
                    break;
                case GateKind::Hadamard:
                    if (g.phase == Phase::FinalHadamard) {
                        final_h.push_back(g.q);
                    } else if (constant(g.q)) {
                        basis.push_back(uint64_t{1} << g.q);
                        reduce();
                    } else if (contains_unit(g.q)) {
                        drop_unit(g.q);
                    } else {
                        throw PreparationError(where + "Hadamard on entangled qubit " + std::to_string(g.q));
                    }
                    break;
                case GateKind::Xor: {
                    uint64_t bc = uint64_t{1} << g.q;
                    uint64_t bt = uint64_t{1} << g.target;
                    for (auto &v : basis) {
                        if (v & bc) {
                            v ^= bt;
                        }
                    }
                    reduce();
                    break;
                }
                case GateKind::MeasureZ:
                    if (!constant(g.q)) {
                        throw PreparationError(
                            where + "measurement of qubit " + std::to_string(g.q) + " is not deterministic");
                    }
                    break;
            }
        }
        if (!final_h.empty()) {
            std::sort(final_h.begin(), final_h.end());
            bool whole_block = final_h.size() == net.n && s + 1 == net.steps.size();
            for (size_t i = 0; whole_block && i < final_h.size(); i++) {
                whole_block = final_h[i] == i;
            }
            if (!whole_block) {
                throw PreparationError(where + "final Hadamards must cover the whole block in the last step");
            }
            saw_final = true;
        }
    }
    if (!saw_final) {
        throw PreparationError("network does not end with Hadamards on the block");
    }
    if (!constant(static_cast<uint32_t>(net.verifier()))) {
        throw PreparationError("verifier is left entangled with the block");
    }
    auto target = row_masks(css.c_small.generator);
    size_t dim = basis.size();
    std::vector<uint64_t> keep = basis;
    basis.insert(basis.end(), target.begin(), target.end());
    reduce();
    if (dim != target.size() || basis.size() != dim) {
        throw PreparationError(
            "network prepares a " + std::to_string(dim) + "-dimensional code space that is not c_small of '" +
            css.name + "'");
    }
    (void)keep;
}

ReducedNetworkCheck check_reduced_network(const PrepNetwork &candidate, const CssCode &css) {
    verify_prepared_state(candidate, css);
    ReducedNetworkCheck res;
    res.pass = true;
    for (const auto &r : enumerate_single_faults(candidate, css)) {
        res.locations_checked++;
        if (!r.detected && r.residual_coset_weight > 1 && res.pass) {
            res.pass = false;
            res.counterexample = r;
        }
    }
    return res;
}

std::string describe_fault(const PrepNetwork &net, const Fault &f) {
    std::ostringstream out;
    const auto &w = f.where;
    out << "step " << w.step << " ";
    if (w.slot == FaultLocation::Slot::Idle) {
        out << "idle q" << w.index << " " << pauli_letter(f.option == 0 ? 1 : f.option == 1 ? 2 : 3);
        return out.str();
    }
    const Gate &g = net.steps[w.step].gates[w.index];
    if (w.slot == FaultLocation::Slot::MeasureFlip) {
        out << "M(" << g.q << ") flip";
        return out.str();
    }
    if (g.two_qubit()) {
        uint64_t code = f.option + 1;
        out << "X(" << g.q << ">" << g.target << ") " << pauli_letter(code & 3) << pauli_letter(code >> 2);
    } else {
        out << gate_kind_name(g.kind) << "(" << g.q << ") " << pauli_letter(f.option == 0 ? 1 : f.option == 1 ? 2 : 3);
    }
    return out.str();
}

}  // namespace ancilla
