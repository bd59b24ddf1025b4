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


#ifndef ANCILLA_MODEL_MODEL_H
#define ANCILLA_MODEL_MODEL_H

#include <cstdint>
#include <optional>
#include <string>

#include "ancilla/network/network.h"

namespace ancilla {

/// Integer parameters of an [[n,1,d]] code plus the two scheduling knobs.
struct CodeParams {
    int64_t n = 0;
    int64_t d = 0;
    int64_t t = 0;
    int64_t m = 0;
    int64_t w = 0;
    int64_t r = 0;
    int64_t eta = 0;

    /// Fills t, m, w from n and d. r and eta default to t+1 and w when <= 0.
    static CodeParams from_nd(int64_t n, int64_t d, int64_t r = 0, int64_t eta = 0);
    static CodeParams from_css(const CssCode &css, int64_t r = 0, int64_t eta = 0);
    /// Throws ModelError E_PARAMS unless n odd, d odd, r >= 1, eta >= 1.
    void validate() const;
};

struct NoisePoint {
    double gamma = 0;
    double epsilon = 0;
};

struct Scenario {
    double K = 0;
    double Q = 0;
    SyndromeMode mode = SyndromeMode::Serial;
    /// n * epsilon / gamma
    double epsilon_ratio = 0.5;
    std::optional<double> gamma0;
    std::optional<int64_t> eta;
    std::optional<int64_t> r;

    void validate() const;
    /// eta / (K Q)
    double target(const CodeParams &p) const;
};

struct OverheadReport {
    double P = 0;
    double alpha = 0;
    double wrong_syndrome_prob = 0;
    double scale_up = 0;   // N/K
    double slow_down = 0;  // T/Q
    double N = 0;
    double T = 0;
    double parallelism = 0;
    double gamma = 0;
    double epsilon = 0;
    int levels = 0;  // concatenated model only
};

/// m(2w+1)+3
int64_t prep_timesteps(const CodeParams &p);
/// nw + (n+5)/2 - w, the same count written the other way.
int64_t prep_timesteps_alt(const CodeParams &p);

double alpha_analytic(const CodeParams &p, const NoisePoint &noise);

/// g = n(4r+1)
int64_t gate_opportunities(const CodeParams &p);
/// n((n-1)w + (5n+7)/2) r
int64_t storage_serial(const CodeParams &p);
/// n((n-1)w + (n+7)/2 + 2nr)
int64_t storage_parallel(const CodeParams &p);
int64_t storage_opportunities(const CodeParams &p, SyndromeMode mode);

/// Per-opportunity error weight x = (2/3)gamma + (s/g)(2/3)epsilon.
double effective_x(const CodeParams &p, const NoisePoint &noise, SyndromeMode mode);

/// 2 sum_{i=t+1}^{g} C(g,i) x^i, clamped to [0, 1]. Terms are summed in the
/// log domain relative to the first one and the loop stops once the next
/// term is below 1e-3 of the running sum and the term ratio is below 1/2,
/// which bounds the dropped tail by 2e-3 of the result.
double failure_probability(const CodeParams &p, const NoisePoint &noise, SyndromeMode mode);
/// Same sum with the (1-x)^{g-i} factor, i.e. a true binomial tail.
double failure_probability_bounded(const CodeParams &p, const NoisePoint &noise, SyndromeMode mode);

/// 2n(alpha/n)^r
double wrong_syndrome_probability(const CodeParams &p, const NoisePoint &noise);
double wrong_syndrome_from_alpha(const CodeParams &p, double alpha);

/// Overheads for block coding at the given noise point.
OverheadReport block_overheads(const CodeParams &p, const Scenario &s, const NoisePoint &noise);

struct ConcatOptions {
    bool cat_state = false;  // 576 operations per recovery instead of 480
    int64_t eta = 8;
};

/// Throws ModelError E_GAMMA_ABOVE_THRESHOLD when gamma >= gamma0.
OverheadReport concat_overheads(double gamma, double gamma0, const Scenario &s, const ConcatOptions &opt = {});
/// Overheads for a fixed level count L, bypassing the N/K estimate.
OverheadReport concat_overheads_at_level(int levels, const Scenario &s, const ConcatOptions &opt = {});

struct SolveResult {
    double gamma = 0;
    double epsilon = 0;
    double P = 0;
    double target = 0;
    int iterations = 0;
};

/// Largest gamma with P(gamma, ratio*gamma/n) = target, by bisection on
/// [0, 0.1] until |P - target| / target < 1e-3. Throws ModelError
/// E_UNREACHABLE when P(0.1) is still below the target.
SolveResult solve_max_gamma(const CodeParams &p, const Scenario &s);

/// Parameters of the shipped codes, including ones whose matrices are not
/// available for simulation.
CodeParams builtin_params(const std::string &css_name, int64_t r = 0, int64_t eta = 0);

}  // namespace ancilla

#endif
