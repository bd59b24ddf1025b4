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


#include "ancilla/sim/block_cycle.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ancilla/error.h"

namespace ancilla {

namespace {

// Memory noise on `qubits` consecutive qubits of `f` (optionally skipping
// one) over `steps` timesteps.
void idle(PauliFrame &f, size_t qubits, uint64_t steps, double eps, Rng &rng, size_t skip = SIZE_MAX) {
    size_t width = skip < qubits ? qubits - 1 : qubits;
    for_each_hit(width * steps, eps, rng, [&](uint64_t i) {
        size_t q = i % width;
        if (q >= skip) {
            q++;
        }
        f ^= single_pauli(static_cast<uint32_t>(q), uniform_below(rng, 3));
    });
}

void pair_fault(PauliFrame &a, PauliFrame &b, uint32_t q, Rng &rng) {
    uint64_t code = uniform_below(rng, 15) + 1;
    uint64_t bit = uint64_t{1} << q;
    if (code & 1) {
        a.x ^= bit;
    }
    if (code & 2) {
        a.z ^= bit;
    }
    if (code & 4) {
        b.x ^= bit;
    }
    if (code & 8) {
        b.z ^= bit;
    }
}

uint64_t bit_flips(size_t n, double gamma, Rng &rng) {
    uint64_t out = 0;
    for_each_hit(n, gamma, rng, [&](uint64_t i) { out ^= uint64_t{1} << i; });
    return out;
}

}  // namespace

const char *decision_kind_name(Decision::Kind k) {
    switch (k) {
        case Decision::Kind::NeedMore:
            return "need_more";
        case Decision::Kind::Unanimous:
            return "unanimous";
        case Decision::Kind::ErrorDeveloped:
            return "error_developed";
        case Decision::Kind::Majority:
            return "majority";
        case Decision::Kind::Ambiguous:
            return "ambiguous";
    }
    return "?";
}

Decision decide(const std::vector<Decoded> &seq, size_t r, bool budget_exhausted, DecisionPolicy policy) {
    using K = Decision::Kind;
    if (policy == DecisionPolicy::AcceptFirstClean && !seq.empty() && seq.front() && *seq.front() == 0) {
        return {K::Unanimous, uint64_t{0}};
    }
    if (seq.size() < std::max<size_t>(r, 1)) {
        return {K::NeedMore, std::nullopt};
    }
    if (std::all_of(seq.begin(), seq.end(), [&](const Decoded &d) { return d == seq.front(); })) {
        if (!seq.front()) {
            return {K::Ambiguous, std::nullopt};
        }
        return {K::Unanimous, seq.front()};
    }
    // A^j B^k with k >= 2: one error arrived between rounds j-1 and j.
    size_t j = 1;
    while (j < seq.size() && seq[j] == seq.front()) {
        j++;
    }
    bool stable_tail = std::all_of(seq.begin() + j, seq.end(), [&](const Decoded &d) { return d == seq[j]; });
    if (stable_tail && seq.size() - j >= 2 && seq[j]) {
        return {K::ErrorDeveloped, seq[j]};
    }
    // Once extra rounds have been taken, a trailing run of max(r, 2)
    // identical decisions is the stable later decision.
    if (seq.size() > r) {
        size_t run = 1;
        while (run < seq.size() && seq[seq.size() - 1 - run] == seq.back()) {
            run++;
        }
        if (run >= std::max<size_t>(r, 2) && seq.back()) {
            return {K::ErrorDeveloped, seq.back()};
        }
    }
    if (!budget_exhausted) {
        return {K::NeedMore, std::nullopt};
    }
    for (const auto &cand : seq) {
        size_t votes = std::count(seq.begin(), seq.end(), cand);
        if (2 * votes > seq.size()) {
            if (cand) {
                return {K::Majority, cand};
            }
            break;
        }
    }
    return {K::Ambiguous, std::nullopt};
}

CycleTally &CycleTally::operator+=(const CycleTally &o) {
    trials += o.trials;
    failures += o.failures;
    failures_x += o.failures_x;
    failures_z += o.failures_z;
    ambiguous += o.ambiguous;
    prep_attempts += o.prep_attempts;
    prep_rejections += o.prep_rejections;
    rounds += o.rounds;
    cycles_with_extra_rounds += o.cycles_with_extra_rounds;
    decided_unanimous += o.decided_unanimous;
    decided_developed += o.decided_developed;
    decided_majority += o.decided_majority;
    return *this;
}

BlockCycleSimulator::BlockCycleSimulator(const CssCode &css, size_t r, SyndromeMode mode, CycleOptions opts)
    : n_(css.n),
      t_(css.t),
      r_(r),
      mode_(mode),
      opts_(opts),
      schedule_(build_correction_schedule(css, r, mode)),
      prep_(schedule_.prep_x),
      decoder_(SyndromeDecoder::build(css)),
      cosets_(CosetWeights::build(css, css.t)) {
    if (opts_.extra_round_budget == 0) {
        opts_.extra_round_budget = 2 * r;
    }
}

RunOutcome BlockCycleSimulator::prepare(const NoiseModel &noise, Rng &rng, uint64_t &attempts, uint64_t &rejections,
                                        bool &gave_up) const {
    for (size_t a = 0; a < opts_.max_prep_attempts; a++) {
        RunOutcome o = prep_.run(noise, rng);
        attempts++;
        if (o.accepted) {
            return o;
        }
        rejections++;
    }
    gave_up = true;
    return {};
}

void BlockCycleSimulator::interact(PauliFrame &b, PauliFrame &ax, PauliFrame &az, const NoiseModel &noise, Rng &rng,
                                   RoundRecord &rec) const {
    const double g = noise.gamma;
    const double e = noise.epsilon;
    // Xor(b_q -> ax_q), one per step.
    for (uint32_t q = 0; q < n_; q++) {
        uint64_t bit = uint64_t{1} << q;
        if (b.x & bit) {
            ax.x ^= bit;
        }
        if (ax.z & bit) {
            b.z ^= bit;
        }
        if (bernoulli(rng, g)) {
            pair_fault(b, ax, q, rng);
        }
        idle(b, n_, 1, e, rng, q);
        idle(ax, n_, 1, e, rng, q);
        idle(az, n_, 1, e, rng);
    }
    // Xor(az_q -> b_q).
    for (uint32_t q = 0; q < n_; q++) {
        uint64_t bit = uint64_t{1} << q;
        if (az.x & bit) {
            b.x ^= bit;
        }
        if (b.z & bit) {
            az.z ^= bit;
        }
        if (bernoulli(rng, g)) {
            pair_fault(az, b, q, rng);
        }
        idle(b, n_, 1, e, rng, q);
        idle(az, n_, 1, e, rng, q);
        idle(ax, n_, 1, e, rng);
    }
    // a_x read in the Z basis, a_z in the X basis; b waits.
    uint64_t mx = ax.x ^ bit_flips(n_, g, rng);
    uint64_t mz = az.z ^ bit_flips(n_, g, rng);
    idle(b, n_, 1, e, rng);
    rec.syndrome_x = decoder_.syndrome(mx);
    rec.syndrome_z = decoder_.syndrome(mz);
    rec.correction_x = decoder_.decode(rec.syndrome_x);
    rec.correction_z = decoder_.decode(rec.syndrome_z);
}

ExtractionResult BlockCycleSimulator::extract_and_decode(PauliFrame &b, const NoiseModel &noise, Rng &rng) const {
    ExtractionResult res;
    const uint64_t prep_steps = prep_.steps();
    const uint64_t interaction_steps = 2 * n_ + 1;
    const size_t max_rounds = r_ + opts_.extra_round_budget;
    bool gave_up = false;

    auto take = [&](uint64_t &max_attempts) {
        uint64_t before = res.prep_attempts;
        RunOutcome o = prepare(noise, rng, res.prep_attempts, res.prep_rejections, gave_up);
        max_attempts = std::max(max_attempts, res.prep_attempts - before);
        return o;
    };
    auto as_x = [](const RunOutcome &o) { return PauliFrame{o.residual_x, o.residual_z}; };
    // The conjugate-basis ancilla is the same run with X and Z exchanged.
    auto as_z = [](const RunOutcome &o) { return PauliFrame{o.residual_z, o.residual_x}; };

    std::vector<std::pair<PauliFrame, PauliFrame>> ready;
    if (mode_ == SyndromeMode::Parallel) {
        uint64_t longest = 0;
        for (size_t j = 0; j < r_; j++) {
            PauliFrame ax = as_x(take(longest));
            PauliFrame az = as_z(take(longest));
            ready.emplace_back(ax, az);
        }
        idle(b, n_, longest * prep_steps, noise.epsilon, rng);
    }

    std::vector<Decoded> seq_x, seq_z;
    bool done_x = false, done_z = false;
    for (size_t j = 0; j < max_rounds && !gave_up; j++) {
        PauliFrame ax, az;
        if (j < ready.size()) {
            std::tie(ax, az) = ready[j];
            idle(ax, n_, j * interaction_steps, noise.epsilon, rng);
            idle(az, n_, j * interaction_steps, noise.epsilon, rng);
        } else {
            uint64_t longest = 0;
            ax = as_x(take(longest));
            az = as_z(take(longest));
            idle(b, n_, longest * prep_steps, noise.epsilon, rng);
        }
        if (gave_up) {
            break;
        }
        RoundRecord rec;
        interact(b, ax, az, noise, rng, rec);
        res.rounds.push_back(rec);
        seq_x.push_back(rec.correction_x);
        seq_z.push_back(rec.correction_z);
        bool last = j + 1 == max_rounds;
        if (!done_x) {
            res.x = decide(seq_x, r_, last, opts_.policy);
            done_x = res.x.kind != Decision::Kind::NeedMore;
        }
        if (!done_z) {
            res.z = decide(seq_z, r_, last, opts_.policy);
            done_z = res.z.kind != Decision::Kind::NeedMore;
        }
        if (done_x && done_z) {
            break;
        }
    }
    if (gave_up) {
        res.x = {Decision::Kind::Ambiguous, std::nullopt};
        res.z = {Decision::Kind::Ambiguous, std::nullopt};
    }
    res.extra_rounds = res.rounds.size() > r_ ? res.rounds.size() - r_ : 0;
    return res;
}

std::optional<RoundRecord> BlockCycleSimulator::clean_round(const NoiseModel &noise, Rng &rng, uint64_t &attempts,
                                                            uint64_t &rejections) const {
    bool gave_up = false;
    RunOutcome ox = prepare(noise, rng, attempts, rejections, gave_up);
    if (gave_up) {
        return std::nullopt;
    }
    RunOutcome oz = prepare(noise, rng, attempts, rejections, gave_up);
    if (gave_up) {
        return std::nullopt;
    }
    PauliFrame b;
    PauliFrame ax{ox.residual_x, ox.residual_z};
    PauliFrame az{oz.residual_z, oz.residual_x};
    RoundRecord rec;
    interact(b, ax, az, noise, rng, rec);
    return rec;
}

void BlockCycleSimulator::run_cycle(const NoiseModel &noise, Rng &rng, CycleTally &tally) const {
    PauliFrame b;
    // One transversal computational step on b.
    for_each_hit(n_, noise.gamma, rng,
                 [&](uint64_t q) { b ^= single_pauli(static_cast<uint32_t>(q), uniform_below(rng, 3)); });

    ExtractionResult res = extract_and_decode(b, noise, rng);
    tally.trials++;
    tally.prep_attempts += res.prep_attempts;
    tally.prep_rejections += res.prep_rejections;
    tally.rounds += res.rounds.size();
    tally.cycles_with_extra_rounds += res.extra_rounds > 0;

    bool ambiguous = false;
    for (const Decision *d : {&res.x, &res.z}) {
        switch (d->kind) {
            case Decision::Kind::Unanimous:
                tally.decided_unanimous++;
                break;
            case Decision::Kind::ErrorDeveloped:
                tally.decided_developed++;
                break;
            case Decision::Kind::Majority:
                tally.decided_majority++;
                break;
            default:
                ambiguous = true;
        }
    }
    if (res.x.correction) {
        b.x ^= *res.x.correction;
    }
    if (res.z.correction) {
        b.z ^= *res.z.correction;
    }
    bool fx = cosets_.weight(b.x) > t_;
    bool fz = cosets_.weight(b.z) > t_;
    tally.failures_x += fx;
    tally.failures_z += fz;
    tally.ambiguous += ambiguous;
    tally.failures += ambiguous || fx || fz;
}

double CycleStats::failure_rate() const {
    return tally.trials ? double(tally.failures) / double(tally.trials) : 0.0;
}

double CycleStats::alpha_measured() const {
    return tally.prep_attempts ? double(tally.prep_rejections) / double(tally.prep_attempts) : 0.0;
}

double CycleStats::ambiguous_rate() const {
    return tally.trials ? double(tally.ambiguous) / double(tally.trials) : 0.0;
}

CycleStats simulate_block_cycle(const CssCode &css, const NoiseModel &noise, size_t r, SyndromeMode mode,
                                uint64_t trials, uint64_t seed, const RunControl &ctl, CycleOptions opts) {
    noise.validate();
    if (!css.matrices_available) {
        throw Error("E_NO_MATRICES", "code '" + css.name + "': matrices unavailable for simulation");
    }
    if (trials == 0) {
        throw Error("E_TRIALS", "trials must be positive");
    }
    BlockCycleSimulator sim(css, r, mode, opts);
    auto [tally, done] =
        run_trials<CycleTally>(trials, seed, ctl, [&](Rng &rng, CycleTally &t) { sim.run_cycle(noise, rng, t); });
    CycleStats st;
    st.code = css.name;
    st.mode = mode;
    st.r = r;
    st.noise = noise;
    st.seed = seed;
    st.requested_trials = trials;
    st.partial = done < trials;
    st.tally = tally;
    return st;
}

PrepTally &PrepTally::operator+=(const PrepTally &o) {
    attempts += o.attempts;
    rejections += o.rejections;
    accepted_syndrome_invalid += o.accepted_syndrome_invalid;
    accepted_bit_residual += o.accepted_bit_residual;
    return *this;
}

double PrepStats::alpha_measured() const {
    return tally.attempts ? double(tally.rejections) / double(tally.attempts) : 0.0;
}

double PrepStats::alpha_sigma() const {
    if (tally.attempts == 0) {
        return 0.0;
    }
    double a = alpha_measured();
    return std::sqrt(a * (1 - a) / double(tally.attempts));
}

PrepStats simulate_prep(const CssCode &css, const NoiseModel &noise, uint64_t trials, uint64_t seed,
                        const RunControl &ctl) {
    noise.validate();
    if (trials == 0) {
        throw Error("E_TRIALS", "trials must be positive");
    }
    PrepSimulator sim(build_prep_network(css));
    SyndromeDecoder dec = SyndromeDecoder::build(css);
    CosetWeights cosets = CosetWeights::build(css, 0);
    auto [tally, done] = run_trials<PrepTally>(trials, seed, ctl, [&](Rng &rng, PrepTally &t) {
        RunOutcome o = sim.run(noise, rng);
        t.attempts++;
        if (!o.accepted) {
            t.rejections++;
            return;
        }
        t.accepted_syndrome_invalid += dec.syndrome(o.residual_x) != 0;
        t.accepted_bit_residual += cosets.key(o.residual_z) != 0;
    });
    PrepStats st;
    st.code = css.name;
    st.noise = noise;
    st.seed = seed;
    st.requested_trials = trials;
    st.partial = done < trials;
    st.tally = tally;
    return st;
}

SyndromeTally &SyndromeTally::operator+=(const SyndromeTally &o) {
    rounds += o.rounds;
    wrong_x += o.wrong_x;
    wrong_z += o.wrong_z;
    prep_attempts += o.prep_attempts;
    prep_rejections += o.prep_rejections;
    return *this;
}

double SyndromeStats::wrong_x_rate() const {
    return tally.rounds ? double(tally.wrong_x) / double(tally.rounds) : 0.0;
}

double SyndromeStats::wrong_z_rate() const {
    return tally.rounds ? double(tally.wrong_z) / double(tally.rounds) : 0.0;
}

SyndromeStats simulate_syndrome_rounds(const CssCode &css, const NoiseModel &noise, uint64_t trials, uint64_t seed,
                                       const RunControl &ctl) {
    noise.validate();
    if (!css.matrices_available) {
        throw Error("E_NO_MATRICES", "code '" + css.name + "': matrices unavailable for simulation");
    }
    if (trials == 0) {
        throw Error("E_TRIALS", "trials must be positive");
    }
    BlockCycleSimulator sim(css, 1, SyndromeMode::Serial);
    auto [tally, done] = run_trials<SyndromeTally>(trials, seed, ctl, [&](Rng &rng, SyndromeTally &t) {
        auto rec = sim.clean_round(noise, rng, t.prep_attempts, t.prep_rejections);
        if (!rec) {
            return;
        }
        t.rounds++;
        t.wrong_x += rec->syndrome_x != 0;
        t.wrong_z += rec->syndrome_z != 0;
    });
    SyndromeStats st;
    st.code = css.name;
    st.noise = noise;
    st.seed = seed;
    st.requested_trials = trials;
    st.partial = done < trials;
    st.tally = tally;
    return st;
}

std::pair<double, double> wilson95(uint64_t k, uint64_t n) {
    if (n == 0) {
        return {0.0, 1.0};
    }
    const double z = 1.959963984540054;
    double p = double(k) / double(n);
    double nn = double(n);
    double denom = 1 + z * z / nn;
    double center = (p + z * z / (2 * nn)) / denom;
    double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
    // The bounds are exact at the ends; the formula leaves rounding residue.
    double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = k == n ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

}  // namespace ancilla
