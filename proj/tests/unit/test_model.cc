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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ancilla/error.h"
#include "ancilla/model/model.h"

using namespace ancilla;

namespace {

using LD = long double;

const SyndromeMode kSerial = SyndromeMode::Serial;
const SyndromeMode kParallel = SyndromeMode::Parallel;

// Straight evaluation of the failure sum over every term, in long double.
LD naive_P(int64_t g, int64_t t, LD x) {
    LD sum = 0;
    for (int64_t i = t + 1; i <= g; i++) {
        LD lc = std::lgamma(LD(g + 1)) - std::lgamma(LD(i + 1)) - std::lgamma(LD(g - i + 1));
        sum += std::exp(lc + LD(i) * std::log(x));
    }
    return std::min<LD>(2 * sum, 1);
}

LD naive_x(int64_t n, int64_t w, int64_t r, LD gamma, LD eps, bool parallel) {
    LD g = LD(n) * (4 * r + 1);
    LD s = parallel ? LD(n) * (LD(n - 1) * w + LD(n) / 2 + 3.5L + 2 * LD(n) * r)
                    : LD(n) * (LD(n - 1) * w + 2.5L * n + 3.5L) * r;
    return 2 * gamma / 3 + (s / g) * 2 * eps / 3;
}

NoisePoint at_ratio(const CodeParams &p, double gamma, double ratio) {
    return {gamma, ratio * gamma / double(p.n)};
}

Scenario shor(SyndromeMode mode) {
    Scenario s;
    s.K = 2150;
    s.Q = 2e10;
    s.mode = mode;
    s.epsilon_ratio = mode == kSerial ? 0.5 : 2.0;
    return s;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; i++) {
        out.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    }
    return out;
}

const std::vector<std::pair<int64_t, int64_t>> kCodes = {{7, 3}, {23, 7}, {55, 11}, {87, 15}};

}  // namespace

TEST(CodeParams, Defaults) {
    CodeParams p = CodeParams::from_nd(23, 7);
    EXPECT_EQ(p.t, 3);
    EXPECT_EQ(p.m, 11);
    EXPECT_EQ(p.w, 8);
    EXPECT_EQ(p.r, 4);
    EXPECT_EQ(p.eta, 8);
    for (auto [n, d] : kCodes) {
        CodeParams q = CodeParams::from_nd(n, d);
        EXPECT_EQ(q.w, 2 * q.t + 2);
        EXPECT_EQ(q.r, q.t + 1);
    }
    CodeParams o = CodeParams::from_nd(7, 3, 1, 20);
    EXPECT_EQ(o.r, 1);
    EXPECT_EQ(o.eta, 20);
}

TEST(CodeParams, FromBuiltinsMatchesFromNd) {
    CodeParams a = builtin_params("css55");
    CodeParams b = CodeParams::from_nd(55, 11);
    EXPECT_EQ(a.n, b.n);
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.r, b.r);
    EXPECT_EQ(builtin_params("css87").d, 15);
    try {
        builtin_params("css9");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "E_UNKNOWN_CODE");
    }
}

TEST(CodeParams, Validation) {
    CodeParams p = CodeParams::from_nd(7, 3);
    p.r = 0;
    EXPECT_THROW(p.validate(), ModelError);
    try {
        CodeParams::from_nd(8, 3).validate();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "E_PARAMS");
    }
}

TEST(Scenario, ValidationAndTarget) {
    Scenario s = shor(kSerial);
    EXPECT_NO_THROW(s.validate());
    EXPECT_NEAR(s.target(CodeParams::from_nd(23, 7)), 8.0 / (2150 * 2e10), 1e-25);
    s.K = 0.5;
    try {
        s.validate();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "E_SCENARIO");
    }
}

TEST(PrepTimesteps, BothFormsAgree) {
    EXPECT_EQ(prep_timesteps(CodeParams::from_nd(7, 3)), 30);
    EXPECT_EQ(prep_timesteps(CodeParams::from_nd(23, 7)), 190);
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        EXPECT_EQ(prep_timesteps(p), prep_timesteps_alt(p));
        EXPECT_EQ(prep_timesteps(p), p.m * (2 * p.w + 1) + 3);
    }
}

TEST(Alpha, ZeroNoise) {
    EXPECT_EQ(alpha_analytic(CodeParams::from_nd(23, 7), {0, 0}), 0.0);
}

TEST(Alpha, SevenQubitExample) {
    LD want = 1 - std::pow(1 - LD(2) / 3 * 1e-3L, 60);
    EXPECT_NEAR(alpha_analytic(CodeParams::from_nd(7, 3), {1e-3, 0}), double(want), 1e-13);
    EXPECT_NEAR(double(want), 3.92e-2, 5e-5);
}

TEST(Alpha, ExponentsIncludeMemory) {
    CodeParams p = CodeParams::from_nd(23, 7);
    LD gate = 2 * (p.m * p.w + 2 * p.n + p.m + 1);
    LD mem = (p.n - 1) * (p.m * (2 * p.w + 1) + 3);
    LD want = 1 - std::pow(1 - LD(2e-4) * 2 / 3, gate) * std::pow(1 - LD(3e-5) / 3, mem);
    EXPECT_NEAR(alpha_analytic(p, {2e-4, 3e-5}), double(want), 1e-13);
}

TEST(Alpha, MonotoneOnGrid) {
    CodeParams p = CodeParams::from_nd(55, 11);
    double prev_g = -1;
    for (double g : log_grid(1e-7, 1e-2, 30)) {
        double prev_e = -1;
        for (double e : log_grid(1e-8, 1e-3, 20)) {
            double a = alpha_analytic(p, {g, e});
            EXPECT_GE(a, prev_e);
            prev_e = a;
        }
        double a0 = alpha_analytic(p, {g, 1e-6});
        EXPECT_GE(a0, prev_g);
        prev_g = a0;
    }
}

TEST(Opportunities, Examples) {
    CodeParams p7 = CodeParams::from_nd(7, 3);
    EXPECT_EQ(p7.r, 2);
    EXPECT_EQ(gate_opportunities(p7), 63);
    EXPECT_EQ(storage_serial(p7), 630);
    CodeParams p23 = CodeParams::from_nd(23, 7);
    EXPECT_EQ(gate_opportunities(p23), 391);
    EXPECT_EQ(storage_serial(p23), 21804);
    EXPECT_EQ(storage_parallel(p23), 8625);
    EXPECT_EQ(storage_opportunities(p23, kSerial), 21804);
    EXPECT_EQ(storage_opportunities(p23, kParallel), 8625);
}

TEST(Opportunities, StorageToGateRatio) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        double ratio = double(storage_serial(p)) / double(gate_opportunities(p));
        double scale = double(n * p.t) / 2;
        EXPECT_GT(ratio, scale / 2) << n;
        EXPECT_LT(ratio, scale * 2) << n;
    }
}

TEST(EffectiveX, MatchesFormula) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        for (bool par : {false, true}) {
            LD want = naive_x(n, p.w, p.r, 1e-5L, 3e-7L, par);
            EXPECT_NEAR(effective_x(p, {1e-5, 3e-7}, par ? kParallel : kSerial), double(want), 1e-18);
        }
    }
}

TEST(FailureProbability, ZeroNoise) {
    EXPECT_EQ(failure_probability(CodeParams::from_nd(7, 3), {0, 0}, kSerial), 0.0);
}

TEST(FailureProbability, MatchesFullSum) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        for (double g : {1e-7, 1e-6, 1e-5, 1e-4}) {
            for (bool par : {false, true}) {
                NoisePoint np = at_ratio(p, g, par ? 2.0 : 0.5);
                LD x = naive_x(n, p.w, p.r, np.gamma, np.epsilon, par);
                LD want = naive_P(gate_opportunities(p), p.t, x);
                double got = failure_probability(p, np, par ? kParallel : kSerial);
                EXPECT_NEAR(got / double(want), 1.0, 2.5e-3) << n << " " << g;
            }
        }
    }
}

TEST(FailureProbability, LeadingTermDominatesAtSmallX) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        NoisePoint np = at_ratio(p, 1e-7, 0.5);
        LD x = naive_x(n, p.w, p.r, np.gamma, np.epsilon, false);
        int64_t g = gate_opportunities(p);
        LD lead = 2 * std::exp(std::lgamma(LD(g + 1)) - std::lgamma(LD(p.t + 2)) - std::lgamma(LD(g - p.t)) +
                               LD(p.t + 1) * std::log(x));
        double ratio = failure_probability(p, np, kSerial) / double(lead);
        // The sum stops after the first term here; allow for rounding only.
        EXPECT_GE(ratio, 1.0 - 1e-12) << n;
        EXPECT_LE(ratio, 1.2);
    }
}

TEST(FailureProbability, ClampedToOne) {
    EXPECT_EQ(failure_probability(CodeParams::from_nd(87, 15), {0.05, 0.01}, kSerial), 1.0);
}

TEST(FailureProbability, BoundedVariantIsSmaller) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        for (double g : log_grid(1e-7, 1e-3, 9)) {
            NoisePoint np = at_ratio(p, g, 0.5);
            EXPECT_LE(failure_probability_bounded(p, np, kSerial), failure_probability(p, np, kSerial) * (1 + 1e-12));
        }
    }
}

TEST(FailureProbability, MonotoneInNoiseAndRepetitions) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        for (SyndromeMode mode : {kSerial, kParallel}) {
            double prev = 0;
            for (double g : log_grid(1e-8, 1e-2, 60)) {
                double v = failure_probability(p, at_ratio(p, g, 0.5), mode);
                EXPECT_GE(v, prev);
                prev = v;
            }
            prev = 0;
            for (double e : log_grid(1e-9, 1e-3, 30)) {
                double v = failure_probability(p, {1e-6, e}, mode);
                EXPECT_GE(v, prev);
                prev = v;
            }
            prev = 0;
            for (int64_t r = 1; r <= 12; r++) {
                double v = failure_probability(CodeParams::from_nd(n, d, r), {1e-6, 1e-8}, mode);
                EXPECT_GE(v, prev);
                prev = v;
            }
        }
    }
}

TEST(FailureProbability, GolaySerialNearBudgetAtQuotedGamma) {
    double P = failure_probability(CodeParams::from_nd(23, 7), {2.2e-6, 2.2e-6 / 46}, kSerial);
    double target = 8.0 / (2150 * 2e10);
    EXPECT_NEAR(P / target, 1.0, 0.2);
}

TEST(WrongSyndrome, Estimate) {
    CodeParams p = CodeParams::from_nd(7, 3);
    EXPECT_NEAR(wrong_syndrome_from_alpha(p, 1e-3), 2.0 * 7 * std::pow(1e-3 / 7, 2), 1e-20);
    EXPECT_NEAR(wrong_syndrome_from_alpha(p, 1e-3), 2.9e-7, 0.05e-7);
    EXPECT_EQ(wrong_syndrome_probability(p, {0, 0}), 0.0);
    double a = alpha_analytic(p, {1e-4, 1e-5});
    EXPECT_NEAR(wrong_syndrome_probability(p, {1e-4, 1e-5}), wrong_syndrome_from_alpha(p, a), 1e-20);
    CodeParams p3 = CodeParams::from_nd(7, 3, 3);
    EXPECT_NEAR(wrong_syndrome_from_alpha(p3, 1e-3) / wrong_syndrome_from_alpha(p, 1e-3), 1e-3 / 7, 1e-12);
}

TEST(BlockOverheads, GolayExamples) {
    CodeParams p = CodeParams::from_nd(23, 7);
    OverheadReport s = block_overheads(p, shor(kSerial), {2e-6, 2e-6 / 46});
    EXPECT_DOUBLE_EQ(s.scale_up, 71);
    EXPECT_DOUBLE_EQ(s.N, 71 * 2150);
    EXPECT_DOUBLE_EQ(s.parallelism, 6450);
    EXPECT_DOUBLE_EQ(s.slow_down, 625650);
    EXPECT_DOUBLE_EQ(s.T, 625650 * 2e10);
    EXPECT_GT(s.P, 0);
    EXPECT_DOUBLE_EQ(s.alpha, alpha_analytic(p, {2e-6, 2e-6 / 46}));
    OverheadReport q = block_overheads(p, shor(kParallel), {2e-6, 4e-6 / 23});
    EXPECT_DOUBLE_EQ(q.scale_up, 215);
    EXPECT_DOUBLE_EQ(q.parallelism, 19350);
    EXPECT_DOUBLE_EQ(q.slow_down, s.slow_down);
}

TEST(BlockOverheads, FormulasForAllCodes) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        for (SyndromeMode mode : {kSerial, kParallel}) {
            OverheadReport o = block_overheads(p, shor(mode), {1e-6, 1e-8});
            double lanes = mode == kSerial ? 2 : 2 * p.r;
            EXPECT_DOUBLE_EQ(o.scale_up, n + lanes * (n + 1));
            EXPECT_DOUBLE_EQ(o.parallelism, 2150 * (1 + lanes));
            EXPECT_DOUBLE_EQ(o.slow_down, double((n - 1) * p.w + 5 * n) * 2 * p.r * 2150 / p.eta);
            EXPECT_DOUBLE_EQ(o.N, o.scale_up * 2150);
            EXPECT_DOUBLE_EQ(o.T, o.slow_down * 2e10);
        }
    }
}

TEST(Concat, AtLevelThree) {
    OverheadReport o = concat_overheads_at_level(3, shor(kSerial));
    EXPECT_DOUBLE_EQ(o.parallelism, 2 * 2150 * 49);
    EXPECT_DOUBLE_EQ(o.slow_down, 49.0 * 480 * 2150 / 8);
    EXPECT_DOUBLE_EQ(o.scale_up, 343);
    EXPECT_EQ(o.levels, 3);
    ConcatOptions cat;
    cat.cat_state = true;
    EXPECT_DOUBLE_EQ(concat_overheads_at_level(3, shor(kSerial), cat).slow_down, 49.0 * 576 * 2150 / 8);
}

TEST(Concat, LevelsFollowScaleUp) {
    Scenario s = shor(kSerial);
    double g0 = 1e-4;
    OverheadReport o = concat_overheads(1e-6, g0, s);
    LD nk = std::pow(std::log(LD(g0) * 2e10) / std::log(LD(g0) / 1e-6), std::log2(LD(7)));
    EXPECT_NEAR(o.scale_up, double(nk), double(nk) * 1e-12);
    int L = int(std::ceil(std::log(double(nk)) / std::log(7.0)));
    EXPECT_EQ(o.levels, L);
    EXPECT_DOUBLE_EQ(o.parallelism, 2 * 2150 * std::pow(7.0, L - 1));
    EXPECT_DOUBLE_EQ(o.slow_down, std::pow(7.0, L - 1) * 480 * 2150 / 8);
}

TEST(Concat, ScaleUpGrowsTowardThreshold) {
    double prev = 0;
    for (double g : log_grid(1e-8, 0.99e-4, 40)) {
        double v = concat_overheads(g, 1e-4, shor(kSerial)).scale_up;
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(Concat, AboveThresholdIsAnError) {
    try {
        concat_overheads(1e-4, 1e-4, shor(kSerial));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "E_GAMMA_ABOVE_THRESHOLD");
    }
    EXPECT_THROW(concat_overheads(2e-4, 1e-4, shor(kSerial)), ModelError);
}

TEST(Solve, RoundTripHitsTarget) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        for (SyndromeMode mode : {kSerial, kParallel}) {
            Scenario s = shor(mode);
            SolveResult r = solve_max_gamma(p, s);
            double P = failure_probability(p, {r.gamma, r.epsilon}, mode);
            EXPECT_NEAR(P / s.target(p), 1.0, 1e-3) << n;
            EXPECT_DOUBLE_EQ(r.epsilon, s.epsilon_ratio * r.gamma / double(n));
            EXPECT_GT(r.iterations, 0);
        }
    }
}

TEST(Solve, LargerBudgetAllowsMoreNoise) {
    CodeParams p = CodeParams::from_nd(23, 7);
    Scenario s = shor(kSerial);
    double g1 = solve_max_gamma(p, s).gamma;
    s.Q = 2e8;
    EXPECT_GT(solve_max_gamma(p, s).gamma, g1);
}

TEST(Solve, UnreachableTarget) {
    Scenario s = shor(kSerial);
    s.K = 1;
    s.Q = 1;
    s.eta = 1000000;
    try {
        solve_max_gamma(CodeParams::from_nd(7, 3), s);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "E_UNREACHABLE");
    }
}

TEST(CurveStructure, ParallelXExceedsSerialX) {
    for (auto [n, d] : kCodes) {
        CodeParams p = CodeParams::from_nd(n, d);
        double sg_s = double(storage_serial(p)) / gate_opportunities(p);
        double sg_p = double(storage_parallel(p)) / gate_opportunities(p);
        bool expect_par_larger = sg_p * 2.0 > sg_s * 0.5;
        for (double g : log_grid(1e-7, 1e-3, 41)) {
            double xs = effective_x(p, at_ratio(p, g, 0.5), kSerial);
            double xp = effective_x(p, at_ratio(p, g, 2.0), kParallel);
            EXPECT_EQ(xp > xs, expect_par_larger) << n << " " << g;
        }
    }
}

TEST(CurveStructure, LargeCodeWinsAtSmallGammaThenCrosses) {
    CodeParams a = CodeParams::from_nd(23, 7);
    CodeParams b = CodeParams::from_nd(87, 15);
    for (SyndromeMode mode : {kSerial, kParallel}) {
        double ratio = mode == kSerial ? 0.5 : 2.0;
        for (double g : log_grid(1e-9, 1e-6, 20)) {
            EXPECT_LT(failure_probability(b, at_ratio(b, g, ratio), mode),
                      failure_probability(a, at_ratio(a, g, ratio), mode));
        }
        bool crossed = false;
        for (double g : log_grid(1e-6, 1e-3, 200)) {
            double pa = failure_probability(a, at_ratio(a, g, ratio), mode);
            double pb = failure_probability(b, at_ratio(b, g, ratio), mode);
            if (pb > pa && pb < 1) {
                crossed = true;
                break;
            }
        }
        EXPECT_TRUE(crossed) << mode_name(mode);
    }
}
