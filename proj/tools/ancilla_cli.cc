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


// Command-line driver: codes | network | figure4 | tables | simulate | solve.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "ancilla/codes/catalog.h"
#include "ancilla/codes/css_code.h"
#include "ancilla/error.h"
#include "ancilla/model/model.h"
#include "ancilla/network/network.h"
#include "ancilla/report/report.h"
#include "ancilla/sim/block_cycle.h"

namespace {

using namespace ancilla;
using json = nlohmann::ordered_json;

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) {
    g_interrupted = true;
}

struct Globals {
    std::string out;
    uint64_t seed = 1;
    unsigned threads = 0;
    std::string format;
};

void emit(const Globals &g, const std::string &text) {
    if (g.out.empty() || g.out == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(g.out, std::ios::out | std::ios::trunc);
    if (!f) {
        throw Error("E_IO", "cannot write '" + g.out + "'");
    }
    f << text;
}

std::string fmt_or(const Globals &g, const char *def) {
    return g.format.empty() ? def : g.format;
}

void require_format(const std::string &f, std::initializer_list<const char *> allowed) {
    for (const char *a : allowed) {
        if (f == a) {
            return;
        }
    }
    throw Error("E_FORMAT", "format '" + f + "' is not supported by this command");
}

Scenario scenario_from(const std::string &arg, std::optional<double> &ratio) {
    json j;
    if (arg == "shor430" && !std::filesystem::exists(arg)) {
        j = shor430_preset();
    } else {
        j = read_json_file(arg);
    }
    Scenario s = parse_scenario(j);
    if (j.contains("epsilon_ratio")) {
        ratio = s.epsilon_ratio;
    }
    return s;
}

// ---- codes

void cmd_codes(const Globals &g, bool list, const std::string &verify) {
    std::string f = fmt_or(g, "text");
    require_format(f, {"text", "json"});
    if (!verify.empty()) {
        json j = code_verify_json(verify, g.threads);
        if (f == "json") {
            emit(g, j.dump(2) + "\n");
            return;
        }
        std::ostringstream o;
        o << j["name"].get<std::string>() << " [" << j["n"] << "," << j["k"] << "," << j["d"] << "]\n";
        o << "self_dual " << j["self_dual"] << "\n";
        o << "doubly_even " << j["doubly_even"] << " (" << j["doubly_even_by"].get<std::string>() << ")\n";
        o << "min_distance " << (j["min_distance"].is_string() ? j["min_distance"].get<std::string>() : j["min_distance"].dump())
          << "\n";
        if (j.contains("weights")) {
            o << "weights";
            for (const auto &wc : j["weights"]) {
                o << " " << wc[0] << ":" << wc[1];
            }
            o << "\n";
        }
        const json &c = j["css"];
        o << c["name"].get<std::string>() << " [[" << c["n"] << ",1," << c["d"] << "]] t=" << c["t"] << " m=" << c["m"]
          << " w=" << c["w"] << "\n";
        emit(g, o.str());
        return;
    }
    (void)list;
    json j = code_list_json();
    if (f == "json") {
        emit(g, j.dump(2) + "\n");
        return;
    }
    std::ostringstream o;
    o << "parent codes\n";
    for (const auto &p : j["parents"]) {
        o << "  " << p["name"].get<std::string>() << " [" << p["n"] << "," << p["k"] << "," << p["d"] << "]"
          << (p["d_verified"].get<bool>() ? "" : " (d trusted)") << "\n";
    }
    o << "css codes\n";
    for (const auto &c : j["css"]) {
        o << "  " << c["name"].get<std::string>() << " [[" << c["n"] << ",1," << c["d"] << "]] from "
          << c["parent"].get<std::string>() << (c["matrices_available"].get<bool>() ? "" : " (not simulated)") << "\n";
    }
    emit(g, o.str());
}

// ---- network

void cmd_network(const Globals &g, const std::string &code, size_t r, const std::string &mode) {
    std::string f = fmt_or(g, "text");
    require_format(f, {"text", "json"});
    const CssCode &css = builtin_css(code);
    PrepNetwork net = build_prep_network(css);
    json j = network_json(net, css);
    if (r > 0) {
        CorrectionSchedule cs = build_correction_schedule(css, r, parse_mode(mode));
        j["correction"] = {{"r", cs.r},
                           {"mode", mode_name(cs.mode)},
                           {"eta", cs.eta},
                           {"lanes", cs.lanes.size()},
                           {"rounds", cs.rounds.size()},
                           {"interaction_steps_per_round", cs.interaction_steps_per_round()},
                           {"qubits", cs.num_qubits()}};
    }
    if (f == "json") {
        emit(g, j.dump(2) + "\n");
        return;
    }
    std::ostringstream o;
    o << dump_network(net);
    o << "ops " << j["ops"] << " timesteps " << j["timesteps"] << " (model " << j["timesteps_model"] << ")\n";
    o << "idle_qubit_timesteps " << j["idle_qubit_timesteps"] << " (model " << j["idle_model"] << ")\n";
    o << "final_check_gates " << j["final_check_gates"] << " (model " << j["final_check_gates_model"] << ")\n";
    for (const auto &v : j["violations"]) {
        o << "violation " << v.get<std::string>() << "\n";
    }
    if (j.contains("correction")) {
        const json &c = j["correction"];
        o << "correction r=" << c["r"] << " mode=" << c["mode"].get<std::string>() << " lanes=" << c["lanes"]
          << " rounds=" << c["rounds"] << " steps_per_round=" << c["interaction_steps_per_round"] << "\n";
    }
    emit(g, o.str());
}

// ---- figure4

void cmd_figure4(const Globals &g, CurveSpec spec, bool all, std::optional<double> ratio) {
    std::string f = fmt_or(g, "csv");
    require_format(f, {"csv", "json"});
    if (!all) {
        spec.epsilon_ratio = ratio.value_or(default_ratio(spec.mode));
        auto rows = figure4_curve(spec);
        emit(g, f == "csv" ? curve_csv(rows) : curve_json(spec, rows).dump(2) + "\n");
        return;
    }
    if (g.out.empty()) {
        throw Error("E_USAGE", "--all needs --out <directory>");
    }
    std::filesystem::create_directories(g.out);
    for (const char *code : {"css7", "css23", "css55", "css87"}) {
        for (SyndromeMode mode : {SyndromeMode::Serial, SyndromeMode::Parallel}) {
            CurveSpec s = spec;
            s.code = code;
            s.mode = mode;
            s.epsilon_ratio = ratio.value_or(default_ratio(mode));
            auto rows = figure4_curve(s);
            Globals gi = g;
            gi.out = (std::filesystem::path(g.out) / ("figure4_" + s.code + "_" + mode_name(mode) + "." + f)).string();
            emit(gi, f == "csv" ? curve_csv(rows) : curve_json(s, rows).dump(2) + "\n");
        }
    }
}

// ---- tables

void cmd_tables(const Globals &g, const std::string &scenario, const std::string &mode_arg, std::optional<double> ratio_arg) {
    std::string f = fmt_or(g, "csv");
    require_format(f, {"csv", "json"});
    std::optional<double> ratio;
    Scenario s = scenario_from(scenario, ratio);
    if (ratio_arg) {
        ratio = ratio_arg;
    }
    std::vector<SyndromeMode> modes;
    if (mode_arg == "both") {
        modes = {SyndromeMode::Serial, SyndromeMode::Parallel};
    } else {
        modes = {parse_mode(mode_arg)};
    }
    std::vector<TableRow> rows;
    for (SyndromeMode m : modes) {
        auto part = build_table(s, m, ratio);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    emit(g, f == "csv" ? table_csv(rows) : table_json(rows).dump(2) + "\n");
}

// ---- simulate

struct SimArgs {
    std::string code;
    double gamma = 0;
    std::optional<double> epsilon;
    std::optional<double> ratio;
    size_t r = 0;
    std::string mode = "serial";
    double trials = 0;
    bool prep_only = false;
    bool rounds_only = false;
    std::string policy = "repeat";
    size_t extra_rounds = 0;
    bool quiet = false;
};

void cmd_simulate(const Globals &g, const SimArgs &a) {
    std::string f = fmt_or(g, "json");
    require_format(f, {"json"});
    if (!(a.trials >= 1) || a.trials != std::floor(a.trials) || a.trials > 1e15) {
        throw Error("E_TRIALS", "trials must be a positive integer");
    }
    if (a.epsilon && a.ratio) {
        throw Error("E_USAGE", "give either --epsilon or --ratio, not both");
    }
    const CssCode &css = builtin_css(a.code);
    if (!css.matrices_available) {
        throw NetworkError("E_NO_MATRICES", "matrices unavailable for " + css.name + " (parent distance not verified)");
    }
    NoiseModel noise;
    noise.gamma = a.gamma;
    noise.epsilon = a.epsilon ? *a.epsilon : a.ratio.value_or(0) * a.gamma / static_cast<double>(css.n);
    noise.validate();
    CodeParams p = CodeParams::from_css(css, static_cast<int64_t>(a.r));

    RunControl ctl;
    ctl.threads = g.threads;
    ctl.cancel = &g_interrupted;
    std::mutex mu;
    auto last = std::chrono::steady_clock::now();
    if (!a.quiet) {
        ctl.progress = [&](uint64_t done, uint64_t total) {
            std::lock_guard<std::mutex> lock(mu);
            auto now = std::chrono::steady_clock::now();
            if (done == total || now - last > std::chrono::milliseconds(500)) {
                last = now;
                std::fprintf(stderr, "\r%llu / %llu", static_cast<unsigned long long>(done),
                             static_cast<unsigned long long>(total));
                if (done == total) {
                    std::fputc('\n', stderr);
                }
            }
        };
    }
    std::signal(SIGINT, on_sigint);
    const auto t0 = std::chrono::steady_clock::now();
    const auto trials = static_cast<uint64_t>(a.trials);
    json j;
    if (a.prep_only && a.rounds_only) {
        throw Error("E_USAGE", "give at most one of --prep-only and --rounds-only");
    }
    if (a.rounds_only) {
        SyndromeStats st = simulate_syndrome_rounds(css, noise, trials, g.seed, ctl);
        j = syndrome_json(st, p);
    } else if (a.prep_only) {
        PrepStats st = simulate_prep(css, noise, trials, g.seed, ctl);
        j = prep_json(st, p);
    } else {
        CycleOptions opts;
        if (a.policy == "repeat") {
            opts.policy = DecisionPolicy::Repeat;
        } else if (a.policy == "accept-first-clean") {
            opts.policy = DecisionPolicy::AcceptFirstClean;
        } else {
            throw Error("E_USAGE", "unknown policy '" + a.policy + "'");
        }
        opts.extra_round_budget = a.extra_rounds;
        CycleStats st = simulate_block_cycle(css, noise, static_cast<size_t>(p.r), parse_mode(a.mode), trials, g.seed, ctl, opts);
        j = cycle_json(st, p);
    }
    std::signal(SIGINT, SIG_DFL);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!a.quiet) {
        std::fprintf(stderr, "elapsed %.3f s\n", secs);
    }
    emit(g, j.dump(2) + "\n");
}

// ---- solve

void cmd_solve(const Globals &g, std::vector<std::string> codes, const std::string &scenario, const std::string &mode_arg,
               std::optional<double> ratio_arg, int64_t r, int64_t eta) {
    std::string f = fmt_or(g, "json");
    require_format(f, {"json", "csv"});
    std::optional<double> ratio;
    Scenario s = scenario_from(scenario, ratio);
    if (!mode_arg.empty()) {
        s.mode = parse_mode(mode_arg);
        if (!ratio) {
            s.epsilon_ratio = default_ratio(s.mode);
        }
    }
    if (ratio_arg) {
        s.epsilon_ratio = *ratio_arg;
    }
    if (r > 0) {
        s.r = r;
    }
    if (eta > 0) {
        s.eta = eta;
    }
    s.validate();
    if (codes.empty()) {
        codes = table_codes();
    }
    json arr = json::array();
    std::string csv = "code,mode,gamma,epsilon,P,target,N,T,parallelism\n";
    for (const auto &code : codes) {
        CodeParams p = builtin_params(code, s.r.value_or(0), s.eta.value_or(0));
        SolveResult res = solve_max_gamma(p, s);
        OverheadReport rep = block_overheads(p, s, {res.gamma, res.epsilon});
        arr.push_back(solve_json(code, p, s, res, rep));
        csv += code + "," + mode_name(s.mode) + "," + sci(res.gamma) + "," + sci(res.epsilon) + "," + sci(res.P) + "," +
               sci(res.target) + "," + sci(rep.N) + "," + sci(rep.T) + "," + sci(rep.parallelism) + "\n";
    }
    emit(g, f == "csv" ? csv : arr.dump(2) + "\n");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ancilla factory error-correction model and simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--out", g.out, "Output path (default stdout)");
    app.add_option("--seed", g.seed, "Master seed for simulations");
    app.add_option("--threads", g.threads, "Worker threads, 0 = all cores");
    app.add_option("--format", g.format, "csv | json | text (default depends on command)")
        ->check(CLI::IsMember({"csv", "json", "text"}));

    auto *codes = app.add_subcommand("codes", "List the catalog or verify one code");
    bool list = false;
    std::string verify;
    codes->add_flag("--list", list, "List parent and CSS codes");
    codes->add_option("--verify", verify, "Verify properties of a parent or CSS code");

    auto *network = app.add_subcommand("network", "Dump the preparation network of a CSS code");
    std::string net_code;
    size_t net_r = 0;
    std::string net_mode = "serial";
    network->add_option("--code", net_code, "CSS code, e.g. css7")->required();
    network->add_option("--r", net_r, "Also describe the correction schedule with r rounds");
    network->add_option("--mode", net_mode, "serial | parallel");

    auto *fig = app.add_subcommand("figure4", "P versus gamma curves");
    CurveSpec spec;
    spec.code = "css23";
    std::string fig_mode = "serial";
    std::optional<double> fig_ratio;
    bool fig_all = false;
    fig->add_option("--code", spec.code, "CSS code");
    fig->add_option("--mode", fig_mode, "serial | parallel");
    fig->add_option("--ratio", fig_ratio, "n*epsilon/gamma (default 1/2 serial, 2 parallel)");
    fig->add_option("--gamma-min", spec.gamma_min, "Smallest gamma (default 1e-7)");
    fig->add_option("--gamma-max", spec.gamma_max, "Largest gamma (default 1e-3)");
    fig->add_option("--points", spec.points, "Log-spaced grid points (default 41)");
    fig->add_flag("--include-zero", spec.include_zero, "Prepend a gamma = 0 row");
    fig->add_option("--r", spec.r, "Syndrome repetitions (default t+1)");
    fig->add_option("--eta", spec.eta, "Steps per whole-computer correction (default w)");
    fig->add_flag("--all", fig_all, "All codes and modes, one file each under --out");

    auto *tables = app.add_subcommand("tables", "Tables of tolerable error rates and overheads");
    std::string tab_scenario = "shor430";
    std::string tab_mode = "both";
    std::optional<double> tab_ratio;
    tables->add_option("--scenario", tab_scenario, "Scenario JSON file, or the built-in 'shor430'");
    tables->add_option("--mode", tab_mode, "serial | parallel | both");
    tables->add_option("--ratio", tab_ratio, "n*epsilon/gamma override");

    auto *sim = app.add_subcommand("simulate", "Monte Carlo of ancilla preparation or full correction cycles");
    SimArgs sa;
    sim->add_option("--code", sa.code, "CSS code")->required();
    sim->add_option("--gamma", sa.gamma, "Gate and measurement error probability")->required();
    sim->add_option("--epsilon", sa.epsilon, "Memory error probability per qubit per step");
    sim->add_option("--ratio", sa.ratio, "n*epsilon/gamma, instead of --epsilon");
    sim->add_option("--r", sa.r, "Syndrome repetitions (default t+1)");
    sim->add_option("--mode", sa.mode, "serial | parallel");
    sim->add_option("--trials", sa.trials, "Number of trials")->required();
    sim->add_flag("--prep-only", sa.prep_only, "Simulate ancilla preparation only");
    sim->add_flag("--rounds-only", sa.rounds_only, "Single syndrome rounds against a clean block");
    sim->add_option("--policy", sa.policy, "repeat | accept-first-clean");
    sim->add_option("--extra-rounds", sa.extra_rounds, "Extra rounds before majority vote (default 2r)");
    sim->add_flag("--quiet", sa.quiet, "No progress or timing on stderr");

    auto *solve = app.add_subcommand("solve", "Maximum tolerable gamma for a scenario");
    std::vector<std::string> solve_codes;
    std::string solve_scenario = "shor430";
    std::string solve_mode;
    std::optional<double> solve_ratio;
    int64_t solve_r = 0;
    int64_t solve_eta = 0;
    solve->add_option("--code", solve_codes, "CSS codes (default css23 css55 css87)");
    solve->add_option("--scenario", solve_scenario, "Scenario JSON file, or the built-in 'shor430'");
    solve->add_option("--mode", solve_mode, "serial | parallel");
    solve->add_option("--ratio", solve_ratio, "n*epsilon/gamma (default 1/2 serial, 2 parallel)");
    solve->add_option("--r", solve_r, "Syndrome repetitions (default t+1)");
    solve->add_option("--eta", solve_eta, "Steps per whole-computer correction (default w)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        std::cerr << "error: E_USAGE: " << msg << "\n";
        return 2;
    }

    try {
        if (*codes) {
            cmd_codes(g, list, verify);
        } else if (*network) {
            cmd_network(g, net_code, net_r, net_mode);
        } else if (*fig) {
            spec.mode = parse_mode(fig_mode);
            cmd_figure4(g, spec, fig_all, fig_ratio);
        } else if (*tables) {
            cmd_tables(g, tab_scenario, tab_mode, tab_ratio);
        } else if (*sim) {
            cmd_simulate(g, sa);
        } else if (*solve) {
            cmd_solve(g, solve_codes, solve_scenario, solve_mode, solve_ratio, solve_r, solve_eta);
        }
    } catch (const Error &e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        std::cerr << "error: " << e.code() << ": " << msg << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: E_INTERNAL: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
