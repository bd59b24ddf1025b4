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


#include "ancilla/model/model.h"

#include <cmath>
#include <limits>

#include "ancilla/codes/catalog.h"
#include "ancilla/codes/css_code.h"
#include "ancilla/error.h"

namespace ancilla {

CodeParams CodeParams::from_nd(int64_t n, int64_t d, int64_t r, int64_t eta) {
    CodeParams p;
    p.n = n;
    p.d = d;
    p.t = (d - 1) / 2;
    p.m = (n - 1) / 2;
    p.w = d + 1;
    p.r = r > 0 ? r : p.t + 1;
    p.eta = eta > 0 ? eta : p.w;
    p.validate();
    return p;
}

CodeParams CodeParams::from_css(const CssCode &css, int64_t r, int64_t eta) {
    return from_nd(static_cast<int64_t>(css.n), static_cast<int64_t>(css.d), r, eta);
}

void CodeParams::validate() const {
    if (n < 3 || n % 2 == 0) {
        throw ModelError("E_PARAMS", "n must be odd and at least 3, got " + std::to_string(n));
    }
    if (d < 1 || d % 2 == 0) {
        throw ModelError("E_PARAMS", "d must be odd and positive, got " + std::to_string(d));
    }
    if (r < 1) {
        throw ModelError("E_PARAMS", "r must be at least 1, got " + std::to_string(r));
    }
    if (eta < 1) {
        throw ModelError("E_PARAMS", "eta must be at least 1, got " + std::to_string(eta));
    }
}

void Scenario::validate() const {
    if (!(K >= 1) || !(Q >= 1)) {
        throw ModelError("E_SCENARIO", "K and Q must be at least 1");
    }
    if (!(epsilon_ratio >= 0) || !std::isfinite(epsilon_ratio)) {
        throw ModelError("E_SCENARIO", "epsilon_ratio must be finite and non-negative");
    }
    if (gamma0 && !(*gamma0 > 0 && *gamma0 < 1)) {
        throw ModelError("E_SCENARIO", "gamma0 must lie in (0, 1)");
    }
    if (eta && *eta < 1) {
        throw ModelError("E_SCENARIO", "eta must be at least 1");
    }
    if (r && *r < 1) {
        throw ModelError("E_SCENARIO", "r must be at least 1");
    }
}

double Scenario::target(const CodeParams &p) const {
    return static_cast<double>(p.eta) / (K * Q);
}

int64_t prep_timesteps(const CodeParams &p) {
    return p.m * (2 * p.w + 1) + 3;
}

int64_t prep_timesteps_alt(const CodeParams &p) {
    return p.n * p.w + (p.n + 5) / 2 - p.w;
}

double alpha_analytic(const CodeParams &p, const NoisePoint &noise) {
    const double gate_exp = 2.0 * static_cast<double>(p.m * p.w + 2 * p.n + p.m + 1);
    const double store_exp = static_cast<double>((p.n - 1) * prep_timesteps(p));
    const double log_keep = gate_exp * std::log1p(-2.0 * noise.gamma / 3.0) + store_exp * std::log1p(-noise.epsilon / 3.0);
    return -std::expm1(log_keep);
}

int64_t gate_opportunities(const CodeParams &p) {
    return p.n * (4 * p.r + 1);
}

// (5n+7)/2 and (n+7)/2 are integers because n is odd.
int64_t storage_serial(const CodeParams &p) {
    return p.n * ((p.n - 1) * p.w + (5 * p.n + 7) / 2) * p.r;
}

int64_t storage_parallel(const CodeParams &p) {
    return p.n * ((p.n - 1) * p.w + (p.n + 7) / 2 + 2 * p.n * p.r);
}

int64_t storage_opportunities(const CodeParams &p, SyndromeMode mode) {
    return mode == SyndromeMode::Serial ? storage_serial(p) : storage_parallel(p);
}

double effective_x(const CodeParams &p, const NoisePoint &noise, SyndromeMode mode) {
    const double g = static_cast<double>(gate_opportunities(p));
    const double s = static_cast<double>(storage_opportunities(p, mode));
    return (2.0 / 3.0) * noise.gamma + (s / g) * (2.0 / 3.0) * noise.epsilon;
}

namespace {

double log_choose(int64_t n, int64_t k) {
    return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
           std::lgamma(static_cast<double>(n - k) + 1);
}

// 2 sum_{i=t+1}^{g} C(g,i) a^i b^{g-i}, with b = 1 for the printed form.
double tail_sum(int64_t g, int64_t t, double a, double b) {
    if (a <= 0) {
        return 0;
    }
    if (t + 1 > g) {
        return 0;
    }
    if (b <= 0) {
        return 1;
    }
    const double la = std::log(a);
    const double lb = std::log(b);
    const double log2 = std::log(2.0);
    auto log_term = [&](int64_t i) { return log_choose(g, i) + static_cast<double>(i) * la + static_cast<double>(g - i) * lb; };

    const int64_t first = t + 1;
    const double l0 = log_term(first);
    if (log2 + l0 >= 0) {
        return 1;
    }
    // Sum of exp(log_term(i) - l0); kept in the log domain once it gets large.
    double log_rel_sum = 0;
    for (int64_t i = first; i < g; ++i) {
        const double next = log_term(i + 1) - l0;
        const double ratio = std::exp(log_term(i + 1) - log_term(i));
        if (next - log_rel_sum < std::log(1e-3) && ratio < 0.5) {
            break;
        }
        const double hi = std::max(log_rel_sum, next);
        log_rel_sum = hi + std::log1p(std::exp(std::min(log_rel_sum, next) - hi));
        if (log2 + l0 + log_rel_sum >= 0) {
            return 1;
        }
    }
    return std::min(1.0, std::exp(log2 + l0 + log_rel_sum));
}

}  // namespace

double failure_probability(const CodeParams &p, const NoisePoint &noise, SyndromeMode mode) {
    return tail_sum(gate_opportunities(p), p.t, effective_x(p, noise, mode), 1.0);
}

double failure_probability_bounded(const CodeParams &p, const NoisePoint &noise, SyndromeMode mode) {
    const double x = std::min(1.0, effective_x(p, noise, mode));
    return tail_sum(gate_opportunities(p), p.t, x, 1.0 - x);
}

double wrong_syndrome_from_alpha(const CodeParams &p, double alpha) {
    const double n = static_cast<double>(p.n);
    return 2.0 * n * std::pow(alpha / n, static_cast<double>(p.r));
}

double wrong_syndrome_probability(const CodeParams &p, const NoisePoint &noise) {
    return wrong_syndrome_from_alpha(p, alpha_analytic(p, noise));
}

OverheadReport block_overheads(const CodeParams &p, const Scenario &s, const NoisePoint &noise) {
    s.validate();
    OverheadReport rep;
    rep.gamma = noise.gamma;
    rep.epsilon = noise.epsilon;
    rep.P = failure_probability(p, noise, s.mode);
    rep.alpha = alpha_analytic(p, noise);
    rep.wrong_syndrome_prob = wrong_syndrome_from_alpha(p, rep.alpha);
    const double n = static_cast<double>(p.n);
    const double r = static_cast<double>(p.r);
    if (s.mode == SyndromeMode::Serial) {
        rep.scale_up = n + 2 * (n + 1);
        rep.parallelism = 3 * s.K;
    } else {
        rep.scale_up = n + 2 * r * (n + 1);
        rep.parallelism = s.K * (1 + 2 * r);
    }
    rep.slow_down = static_cast<double>((p.n - 1) * p.w + 5 * p.n) * 2 * r * s.K / static_cast<double>(p.eta);
    rep.N = rep.scale_up * s.K;
    rep.T = rep.slow_down * s.Q;
    return rep;
}

namespace {

OverheadReport concat_from_level(int levels, const Scenario &s, const ConcatOptions &opt) {
    OverheadReport rep;
    rep.levels = levels;
    const double per_recovery = opt.cat_state ? 576.0 : 480.0;
    const double lower = std::pow(7.0, levels - 1);
    rep.slow_down = lower * per_recovery * s.K / static_cast<double>(opt.eta);
    rep.parallelism = 2 * s.K * lower;
    rep.T = rep.slow_down * s.Q;
    return rep;
}

}  // namespace

OverheadReport concat_overheads(double gamma, double gamma0, const Scenario &s, const ConcatOptions &opt) {
    s.validate();
    if (opt.eta < 1) {
        throw ModelError("E_PARAMS", "eta must be at least 1");
    }
    if (!(gamma > 0)) {
        throw ModelError("E_PARAMS", "gamma must be positive");
    }
    if (!(gamma < gamma0)) {
        throw ModelError("E_GAMMA_ABOVE_THRESHOLD", "gamma must lie below the threshold gamma0");
    }
    const double num = std::log(gamma0 * s.Q);
    if (!(num > 0)) {
        throw ModelError("E_PARAMS", "gamma0 * Q must exceed 1");
    }
    const double scale_up = std::pow(num / std::log(gamma0 / gamma), std::log2(7.0));
    const int levels = std::max(1, static_cast<int>(std::ceil(std::log(scale_up) / std::log(7.0))));
    OverheadReport rep = concat_from_level(levels, s, opt);
    rep.gamma = gamma;
    rep.epsilon = gamma;
    rep.scale_up = scale_up;
    rep.N = scale_up * s.K;
    return rep;
}

OverheadReport concat_overheads_at_level(int levels, const Scenario &s, const ConcatOptions &opt) {
    s.validate();
    if (levels < 1) {
        throw ModelError("E_PARAMS", "levels must be at least 1");
    }
    if (opt.eta < 1) {
        throw ModelError("E_PARAMS", "eta must be at least 1");
    }
    OverheadReport rep = concat_from_level(levels, s, opt);
    // Data qubits only; ancillas are not counted at a fixed level.
    rep.scale_up = std::pow(7.0, levels);
    rep.N = rep.scale_up * s.K;
    return rep;
}

SolveResult solve_max_gamma(const CodeParams &p, const Scenario &s) {
    s.validate();
    SolveResult res;
    res.target = s.target(p);
    const double n = static_cast<double>(p.n);
    auto P_at = [&](double gamma) {
        return failure_probability(p, {gamma, s.epsilon_ratio * gamma / n}, s.mode);
    };
    double lo = 0;
    double hi = 0.1;
    if (P_at(hi) < res.target) {
        throw ModelError("E_UNREACHABLE", "target P is not reached for gamma in [0, 0.1]");
    }
    for (int it = 1; it <= 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double P = P_at(mid);
        res.iterations = it;
        res.gamma = mid;
        res.P = P;
        if (std::abs(P - res.target) / res.target < 1e-3) {
            break;
        }
        if (P < res.target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    res.epsilon = s.epsilon_ratio * res.gamma / n;
    return res;
}

CodeParams builtin_params(const std::string &css_name, int64_t r, int64_t eta) {
    for (const auto &c : builtin_catalog()) {
        if (c.name == css_name || css_name_for(c) == css_name) {
            return CodeParams::from_nd(static_cast<int64_t>(c.n) - 1, static_cast<int64_t>(c.d) - 1, r, eta);
        }
    }
    throw CodeError("E_UNKNOWN_CODE", "unknown code '" + css_name + "'");
}

}  // namespace ancilla
