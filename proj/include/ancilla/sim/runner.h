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


#ifndef ANCILLA_SIM_RUNNER_H
#define ANCILLA_SIM_RUNNER_H

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "ancilla/codes/enumerate.h"
#include "ancilla/sim/pauli_frame.h"

namespace ancilla {

struct RunControl {
    unsigned threads = 0;  // 0 = hardware concurrency
    /// Polled between chunks; when set, unfinished chunks are skipped.
    const std::atomic<bool> *cancel = nullptr;
    /// Called from worker threads with (trials done, total).
    std::function<void(uint64_t, uint64_t)> progress;
};

constexpr uint64_t kTrialChunk = 4096;

/// Runs fn(rng, tally) once per trial with the stream trial_rng(seed, i).
/// Chunks are merged in index order, so the sum is the same for any thread
/// count. Returns the tally and the number of trials completed.
template <typename Tally, typename TrialFn>
std::pair<Tally, uint64_t> run_trials(uint64_t trials, uint64_t seed, const RunControl &ctl, TrialFn fn) {
    uint64_t num_chunks = (trials + kTrialChunk - 1) / kTrialChunk;
    std::vector<std::optional<Tally>> chunks(num_chunks);
    std::atomic<uint64_t> next{0};
    std::atomic<uint64_t> done{0};

    auto worker = [&] {
        for (uint64_t c = next++; c < num_chunks; c = next++) {
            if (ctl.cancel && ctl.cancel->load()) {
                return;
            }
            Tally t{};
            uint64_t lo = c * kTrialChunk;
            uint64_t hi = std::min(trials, lo + kTrialChunk);
            for (uint64_t i = lo; i < hi; i++) {
                Rng rng = trial_rng(seed, i);
                fn(rng, t);
            }
            chunks[c] = std::move(t);
            uint64_t d = done += hi - lo;
            if (ctl.progress) {
                ctl.progress(d, trials);
            }
        }
    };

    unsigned nt = static_cast<unsigned>(std::min<uint64_t>(resolve_threads(ctl.threads), std::max<uint64_t>(num_chunks, 1)));
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nt; i++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    Tally total{};
    uint64_t completed = 0;
    for (uint64_t c = 0; c < num_chunks; c++) {
        if (chunks[c]) {
            total += *chunks[c];
            completed += std::min(trials, (c + 1) * kTrialChunk) - c * kTrialChunk;
        }
    }
    return {total, completed};
}

/// Wilson score interval at 95% for k successes in n trials.
std::pair<double, double> wilson95(uint64_t k, uint64_t n);

}  // namespace ancilla

#endif
