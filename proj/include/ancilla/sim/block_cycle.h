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


#ifndef ANCILLA_SIM_BLOCK_CYCLE_H
#define ANCILLA_SIM_BLOCK_CYCLE_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ancilla/codes/syndrome_decoder.h"
#include "ancilla/network/network.h"
#include "ancilla/sim/prep_sim.h"
#include "ancilla/sim/runner.h"

namespace ancilla {

/// Decoded correction of one round; empty when the syndrome has no leader of
/// weight <= t.
using Decoded = std::optional<uint64_t>;

enum class DecisionPolicy : uint8_t {
    /// Rules (i)-(iii): unanimous, single developing error, extra rounds then
    /// majority.
    Repeat,
    /// Accept a clean (zero) first syndrome without repetition; otherwise
    /// fall back to Repeat.
    AcceptFirstClean,
};

struct Decision {
    enum class Kind : uint8_t { NeedMore, Unanimous, ErrorDeveloped, Majority, Ambiguous };
    Kind kind = Kind::NeedMore;
    Decoded correction;
};

const char *decision_kind_name(Decision::Kind k);

/// Applies the decision rule to the corrections decoded so far. `r` is the
/// number of rounds required before deciding; `budget_exhausted` is set once
/// the extra rounds are used up, enabling the majority fallback.
Decision decide(const std::vector<Decoded> &seq, size_t r, bool budget_exhausted,
                DecisionPolicy policy = DecisionPolicy::Repeat);

struct RoundRecord {
    uint64_t syndrome_x = 0;
    uint64_t syndrome_z = 0;
    Decoded correction_x;
    Decoded correction_z;
};

struct ExtractionResult {
    std::vector<RoundRecord> rounds;
    Decision x;
    Decision z;
    uint64_t prep_attempts = 0;
    uint64_t prep_rejections = 0;
    size_t extra_rounds = 0;
};

struct CycleTally {
    uint64_t trials = 0;
    uint64_t failures = 0;
    uint64_t failures_x = 0;
    uint64_t failures_z = 0;
    uint64_t ambiguous = 0;
    uint64_t prep_attempts = 0;
    uint64_t prep_rejections = 0;
    uint64_t rounds = 0;
    uint64_t cycles_with_extra_rounds = 0;
    uint64_t decided_unanimous = 0;
    uint64_t decided_developed = 0;
    uint64_t decided_majority = 0;

    CycleTally &operator+=(const CycleTally &o);
};

struct CycleOptions {
    DecisionPolicy policy = DecisionPolicy::Repeat;
    /// Extra rounds allowed by rule (iii); 0 means 2r.
    size_t extra_round_budget = 0;
    /// Preparation attempts before a round gives up (counted as ambiguous).
    size_t max_prep_attempts = 100000;
};

/// One block b with its correction schedule. Immutable after construction and
/// safe to share across threads.
class BlockCycleSimulator {
   public:
    BlockCycleSimulator(const CssCode &css, size_t r, SyndromeMode mode, CycleOptions opts = {});

    const CorrectionSchedule &schedule() const {
        return schedule_;
    }
    const SyndromeDecoder &decoder() const {
        return decoder_;
    }
    const CosetWeights &cosets() const {
        return cosets_;
    }
    size_t t() const {
        return t_;
    }

    /// Runs syndrome rounds against `block` (evolving it with gate and memory
    /// noise) until the decision rule settles both error types.
    ExtractionResult extract_and_decode(PauliFrame &block, const NoiseModel &noise, Rng &rng) const;

    /// One syndrome round against a block that starts clean: fresh a_x and a_z,
    /// the transversal interaction, measurement. Gave-up preparations leave
    /// `attempts` at the cap and return nullopt.
    std::optional<RoundRecord> clean_round(const NoiseModel &noise, Rng &rng, uint64_t &attempts,
                                           uint64_t &rejections) const;

    /// One full cycle from a clean block: a transversal computational step,
    /// extraction, correction, then the failure test.
    void run_cycle(const NoiseModel &noise, Rng &rng, CycleTally &tally) const;

   private:
    RunOutcome prepare(const NoiseModel &noise, Rng &rng, uint64_t &attempts, uint64_t &rejections, bool &gave_up) const;
    void interact(PauliFrame &block, PauliFrame &ax, PauliFrame &az, const NoiseModel &noise, Rng &rng,
                  RoundRecord &rec) const;

    size_t n_;
    size_t t_;
    size_t r_;
    SyndromeMode mode_;
    CycleOptions opts_;
    CorrectionSchedule schedule_;
    PrepSimulator prep_;
    SyndromeDecoder decoder_;
    CosetWeights cosets_;
};

struct CycleStats {
    std::string code;
    SyndromeMode mode = SyndromeMode::Serial;
    size_t r = 0;
    NoiseModel noise;
    uint64_t seed = 0;
    uint64_t requested_trials = 0;
    bool partial = false;
    CycleTally tally;

    double failure_rate() const;
    double alpha_measured() const;
    double ambiguous_rate() const;
};

/// Throws Error E_NO_MATRICES for codes without matrices, E_TRIALS for
/// trials == 0.
CycleStats simulate_block_cycle(const CssCode &css, const NoiseModel &noise, size_t r, SyndromeMode mode,
                                uint64_t trials, uint64_t seed, const RunControl &ctl = {}, CycleOptions opts = {});

struct PrepTally {
    uint64_t attempts = 0;
    uint64_t rejections = 0;
    /// Accepted runs whose hand-off X mask lies outside c_big.
    uint64_t accepted_syndrome_invalid = 0;
    /// Accepted runs with a bit-error residual outside c_small.
    uint64_t accepted_bit_residual = 0;

    PrepTally &operator+=(const PrepTally &o);
};

struct PrepStats {
    std::string code;
    NoiseModel noise;
    uint64_t seed = 0;
    uint64_t requested_trials = 0;
    bool partial = false;
    PrepTally tally;

    double alpha_measured() const;
    /// Binomial standard error of alpha_measured.
    double alpha_sigma() const;
};

/// Independent preparation attempts (no restarts): the rejection statistics
/// of the verification network.
/// Wrong-syndrome statistics of single rounds on a clean block; 1 - alpha in
/// the analytic model is the chance that such a round reads the zero syndrome.
struct SyndromeTally {
    uint64_t rounds = 0;
    uint64_t wrong_x = 0;
    uint64_t wrong_z = 0;
    uint64_t prep_attempts = 0;
    uint64_t prep_rejections = 0;

    SyndromeTally &operator+=(const SyndromeTally &o);
};

struct SyndromeStats {
    std::string code;
    NoiseModel noise;
    uint64_t seed = 0;
    uint64_t requested_trials = 0;
    bool partial = false;
    SyndromeTally tally;

    double wrong_x_rate() const;
    double wrong_z_rate() const;
};

SyndromeStats simulate_syndrome_rounds(const CssCode &css, const NoiseModel &noise, uint64_t trials, uint64_t seed,
                                       const RunControl &ctl = {});

PrepStats simulate_prep(const CssCode &css, const NoiseModel &noise, uint64_t trials, uint64_t seed,
                        const RunControl &ctl = {});

}  // namespace ancilla

#endif
