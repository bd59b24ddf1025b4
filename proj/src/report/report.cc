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


#include "ancilla/report/report.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ancilla/codes/catalog.h"
#include "ancilla/error.h"

namespace ancilla {

using json = nlohmann::ordered_json;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

double default_ratio(SyndromeMode mode) {
    return mode == SyndromeMode::Serial ? 0.5 : 2.0;
}

namespace {

template <typename T>
T field(const json &j, const char *key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw ModelError("E_SCENARIO", std::string("scenario field '") + key + "' is missing or has the wrong type");
    }
}

}  // namespace

Scenario parse_scenario(const json &j) {
    if (!j.is_object()) {
        throw ModelError("E_SCENARIO", "scenario must be a JSON object");
    }
    Scenario s;
    s.K = field<double>(j, "K");
    s.Q = field<double>(j, "Q");
    if (j.contains("mode")) {
        try {
            s.mode = parse_mode(field<std::string>(j, "mode"));
        } catch (const NetworkError &e) {
            throw ModelError("E_SCENARIO", e.what());
        }
    }
    s.epsilon_ratio = j.contains("epsilon_ratio") ? field<double>(j, "epsilon_ratio") : default_ratio(s.mode);
    if (j.contains("gamma0")) {
        s.gamma0 = field<double>(j, "gamma0");
    }
    if (j.contains("eta")) {
        s.eta = field<int64_t>(j, "eta");
    }
    if (j.contains("r")) {
        s.r = field<int64_t>(j, "r");
    }
    s.validate();
    return s;
}

json shor430_preset() {
    return {{"K", 2150}, {"Q", 2e10}};
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ModelError("E_SCENARIO", "cannot open scenario file '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

const std::vector<std::string> &table_codes() {
    static const std::vector<std::string> codes = {"css23", "css55", "css87"};
    return codes;
}

namespace {

// T row of both printed tables, in 1e16.
double printed_T(const std::string &code) {
    if (code == "css23") return 0.3;
    if (code == "css55") return 2;
    if (code == "css87") return 3.9;
    return NAN;
}

}  // namespace

std::vector<TableRow> build_table(const Scenario &s_in, SyndromeMode mode, std::optional<double> ratio) {
    Scenario s = s_in;
    s.mode = mode;
    s.epsilon_ratio = ratio.value_or(default_ratio(mode));
    s.validate();

    std::vector<TableRow> rows;
    TableRow conc;
    conc.mode = mode;
    conc.code = "concat7^3";
    if (s.gamma0) {
        ConcatOptions opt;
        if (s.eta) {
            opt.eta = *s.eta;
        }
        OverheadReport c = concat_overheads(1e-6, *s.gamma0, s, opt);
        conc.gamma = 1;
        conc.epsilon = 1;
        conc.N = c.N / 1e5;
        conc.T = c.T / 1e16;
        conc.parallelism = c.parallelism / 1e4;
        conc.source = "computed";
        conc.flags = "levels=" + std::to_string(c.levels);
    } else {
        conc.gamma = 1;
        conc.epsilon = 1;
        conc.N = 13;
        conc.T = 10;
        conc.parallelism = 20;
        conc.source = "quoted, not computed";
    }
    rows.push_back(conc);

    for (const auto &code : table_codes()) {
        CodeParams p = builtin_params(code, s.r.value_or(0), s.eta.value_or(0));
        SolveResult sol = solve_max_gamma(p, s);
        OverheadReport rep = block_overheads(p, s, {sol.gamma, sol.epsilon});
        TableRow row;
        row.mode = mode;
        row.code = code;
        row.gamma = sol.gamma / 1e-6;
        row.epsilon = sol.epsilon / 1e-6;
        row.N = rep.N / 1e5;
        row.T = rep.T / 1e16;
        row.parallelism = rep.parallelism / 1e4;
        row.source = "computed";
        row.T_table = printed_T(code);
        double q = row.T / *row.T_table;
        if (q > 1.25 || q < 0.8) {
            row.flags = "T_differs_from_table";
        }
        rows.push_back(row);
    }
    return rows;
}

std::string table_csv(const std::vector<TableRow> &rows) {
    std::ostringstream out;
    out << "mode,code,gamma_1e-6,epsilon_1e-6,N_1e5,T_1e16,parallelism_1e4,T_table_1e16,source,flags\n";
    for (const auto &r : rows) {
        out << mode_name(r.mode) << ',' << r.code << ',' << sci(r.gamma) << ',' << sci(r.epsilon) << ',' << sci(r.N) << ',' << sci(r.T) << ','
            << sci(r.parallelism) << ',' << (r.T_table ? sci(*r.T_table) : "") << ",\"" << r.source << "\"," << r.flags
            << '\n';
    }
    return out.str();
}

json table_json(const std::vector<TableRow> &rows) {
    json arr = json::array();
    for (const auto &r : rows) {
        json o = {{"mode", mode_name(r.mode)}, {"code", r.code},   {"gamma_1e-6", r.gamma},           {"epsilon_1e-6", r.epsilon},
                  {"N_1e5", r.N},     {"T_1e16", r.T},                   {"parallelism_1e4", r.parallelism},
                  {"source", r.source}, {"flags", r.flags}};
        o["T_table_1e16"] = r.T_table ? json(*r.T_table) : json(nullptr);
        arr.push_back(o);
    }
    return arr;
}

void CurveSpec::validate() const {
    if (!(gamma_min > 0) || !(gamma_max > gamma_min) || !std::isfinite(gamma_max)) {
        throw ModelError("E_GRID", "gamma grid needs 0 < gamma_min < gamma_max");
    }
    if (points < 2) {
        throw ModelError("E_GRID", "gamma grid needs at least 2 points");
    }
    if (!(epsilon_ratio >= 0)) {
        throw ModelError("E_GRID", "epsilon ratio must be non-negative");
    }
}

std::vector<double> CurveSpec::grid() const {
    validate();
    std::vector<double> g;
    if (include_zero) {
        g.push_back(0);
    }
    const double a = std::log10(gamma_min);
    const double b = std::log10(gamma_max);
    for (int i = 0; i < points; ++i) {
        g.push_back(i + 1 == points ? gamma_max : std::pow(10.0, a + (b - a) * i / (points - 1)));
    }
    return g;
}

std::vector<std::pair<double, double>> figure4_curve(const CurveSpec &spec) {
    CodeParams p = builtin_params(spec.code, spec.r, spec.eta);
    std::vector<std::pair<double, double>> rows;
    for (double gamma : spec.grid()) {
        NoisePoint noise{gamma, spec.epsilon_ratio * gamma / static_cast<double>(p.n)};
        rows.emplace_back(gamma, failure_probability(p, noise, spec.mode));
    }
    return rows;
}

std::string curve_csv(const std::vector<std::pair<double, double>> &rows) {
    std::string out = "gamma,P\n";
    for (const auto &[g, P] : rows) {
        out += sci(g) + "," + sci(P) + "\n";
    }
    return out;
}

json curve_json(const CurveSpec &spec, const std::vector<std::pair<double, double>> &rows) {
    json pts = json::array();
    for (const auto &[g, P] : rows) {
        pts.push_back({{"gamma", g}, {"P", P}});
    }
    return {{"code", spec.code}, {"mode", mode_name(spec.mode)}, {"epsilon_ratio", spec.epsilon_ratio}, {"points", pts}};
}

json code_list_json() {
    json parents = json::array();
    json css = json::array();
    for (const auto &c : builtin_catalog()) {
        parents.push_back({{"name", c.name}, {"n", c.n}, {"k", c.k}, {"d", c.d}, {"d_verified", c.d_verified}});
        css.push_back({{"name", css_name_for(c)},
                       {"parent", c.name},
                       {"n", c.n - 1},
                       {"k", 1},
                       {"d", c.d - 1},
                       {"matrices_available", c.d_verified && c.k <= kMaxEnumerationDim}});
    }
    return {{"parents", parents}, {"css", css}};
}

json code_verify_json(const std::string &name, unsigned threads) {
    const ClassicalCode *code = nullptr;
    for (const auto &c : builtin_catalog()) {
        if (c.name == name || css_name_for(c) == name) {
            code = &c;
        }
    }
    if (!code) {
        throw CodeError("E_UNKNOWN_CODE", "unknown code '" + name + "'");
    }
    CodeReport rep = verify_code_properties(*code, threads);
    json j = {{"name", code->name},
              {"n", code->n},
              {"k", code->k},
              {"d", code->d},
              {"self_dual", rep.self_dual},
              {"doubly_even", rep.doubly_even},
              {"doubly_even_by", rep.doubly_even_enumerated ? "enumeration" : "generator certificate"},
              {"min_distance_checked", rep.min_distance_checked}};
    j["min_distance"] = rep.min_distance_checked ? json(rep.min_distance) : json("unverified");
    if (rep.weights) {
        json w = json::array();
        for (const auto &[weight, count] : *rep.weights) {
            w.push_back({weight, count});
        }
        j["weights"] = w;
    }
    CodeParams p = CodeParams::from_nd(static_cast<int64_t>(code->n) - 1, static_cast<int64_t>(code->d) - 1);
    j["css"] = {{"name", css_name_for(*code)}, {"n", p.n}, {"d", p.d}, {"t", p.t}, {"m", p.m}, {"w", p.w}};
    return j;
}

json network_json(const PrepNetwork &net, const CssCode &css) {
    ResourceCount rc = count_resources(net);
    json kinds = json::object();
    for (const auto &[kind, count] : rc.ops_by_kind) {
        kinds[gate_kind_name(kind)] = count;
    }
    CodeParams p = CodeParams::from_css(css);
    json j = {{"code", net.code_name},
              {"n", net.n},
              {"ops", rc.ops_total},
              {"ops_by_kind", kinds},
              {"timesteps", rc.timesteps},
              {"timesteps_model", prep_timesteps(p)},
              {"ops_model", 2 * (p.n + p.m + 1) + 2 * p.m * p.w},
              {"idle_qubit_timesteps", rc.idle_qubit_timesteps},
              {"idle_model", rc.idle_model},
              {"final_check_gates", rc.final_check_gates},
              {"final_check_gates_model", rc.final_check_gates_model},
              {"violations", check_schedule_legality(net)}};
    json lines = json::array();
    std::istringstream dump(dump_network(net));
    for (std::string line; std::getline(dump, line);) {
        lines.push_back(line);
    }
    j["dump"] = lines;
    return j;
}

namespace {

json ci_json(uint64_t k, uint64_t n) {
    auto [lo, hi] = wilson95(k, n);
    return json::array({lo, hi});
}

}  // namespace

json cycle_json(const CycleStats &st, const CodeParams &p) {
    const CycleTally &t = st.tally;
    NoisePoint noise{st.noise.gamma, st.noise.epsilon};
    return {{"code", st.code},
            {"mode", mode_name(st.mode)},
            {"r", st.r},
            {"gamma", st.noise.gamma},
            {"epsilon", st.noise.epsilon},
            {"seed", st.seed},
            {"requested_trials", st.requested_trials},
            {"trials", t.trials},
            {"partial", st.partial},
            {"failures", t.failures},
            {"failures_x", t.failures_x},
            {"failures_z", t.failures_z},
            {"ambiguous", t.ambiguous},
            {"failure_rate", st.failure_rate()},
            {"ci95", ci_json(t.failures, t.trials)},
            {"prep_attempts", t.prep_attempts},
            {"prep_rejections", t.prep_rejections},
            {"alpha_measured", st.alpha_measured()},
            {"alpha_analytic", alpha_analytic(p, noise)},
            {"P_analytic", failure_probability(p, noise, st.mode)},
            {"rounds", t.rounds},
            {"cycles_with_extra_rounds", t.cycles_with_extra_rounds},
            {"decided", {{"unanimous", t.decided_unanimous}, {"developed", t.decided_developed}, {"majority", t.decided_majority}}}};
}

json prep_json(const PrepStats &st, const CodeParams &p) {
    const PrepTally &t = st.tally;
    return {{"code", st.code},
            {"gamma", st.noise.gamma},
            {"epsilon", st.noise.epsilon},
            {"seed", st.seed},
            {"requested_trials", st.requested_trials},
            {"trials", t.attempts},
            {"partial", st.partial},
            {"rejections", t.rejections},
            {"alpha_measured", st.alpha_measured()},
            {"alpha_sigma", st.alpha_sigma()},
            {"ci95", ci_json(t.rejections, t.attempts)},
            {"alpha_analytic", alpha_analytic(p, {st.noise.gamma, st.noise.epsilon})},
            {"accepted_syndrome_invalid", t.accepted_syndrome_invalid},
            {"accepted_bit_residual", t.accepted_bit_residual}};
}

json syndrome_json(const SyndromeStats &st, const CodeParams &p) {
    const SyndromeTally &t = st.tally;
    return {{"code", st.code},
            {"gamma", st.noise.gamma},
            {"epsilon", st.noise.epsilon},
            {"seed", st.seed},
            {"requested_trials", st.requested_trials},
            {"trials", t.rounds},
            {"partial", st.partial},
            {"wrong_x", t.wrong_x},
            {"wrong_z", t.wrong_z},
            {"wrong_x_rate", st.wrong_x_rate()},
            {"wrong_z_rate", st.wrong_z_rate()},
            {"ci95_x", ci_json(t.wrong_x, t.rounds)},
            {"ci95_z", ci_json(t.wrong_z, t.rounds)},
            {"prep_attempts", t.prep_attempts},
            {"prep_rejections", t.prep_rejections},
            {"alpha_analytic", alpha_analytic(p, {st.noise.gamma, st.noise.epsilon})}};
}

json solve_json(const std::string &code, const CodeParams &p, const Scenario &s, const SolveResult &res,
                const OverheadReport &rep) {
    return {{"code", code},
            {"mode", mode_name(s.mode)},
            {"K", s.K},
            {"Q", s.Q},
            {"epsilon_ratio", s.epsilon_ratio},
            {"r", p.r},
            {"eta", p.eta},
            {"target", res.target},
            {"gamma", res.gamma},
            {"epsilon", res.epsilon},
            {"P", res.P},
            {"iterations", res.iterations},
            {"alpha", rep.alpha},
            {"wrong_syndrome_prob", rep.wrong_syndrome_prob},
            {"N_over_K", rep.scale_up},
            {"T_over_Q", rep.slow_down},
            {"N", rep.N},
            {"T", rep.T},
            {"parallelism", rep.parallelism}};
}

}  // namespace ancilla
