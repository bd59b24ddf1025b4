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


#include "ancilla/network/network.h"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

#include "ancilla/error.h"

namespace ancilla {

const char *gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::PrepZ:
            return "prep";
        case GateKind::Hadamard:
            return "hadamard";
        case GateKind::Xor:
            return "xor";
        case GateKind::MeasureZ:
            return "measure";
    }
    return "?";
}

const char *phase_name(Phase p) {
    switch (p) {
        case Phase::Generation:
            return "generation";
        case Phase::Verification:
            return "verification";
        case Phase::FinalHadamard:
            return "final_hadamard";
        case Phase::Interaction:
            return "interaction";
    }
    return "?";
}

PrepNetwork build_prep_network(const CssCode &css) {
    if (!css.network_available) {
        throw NetworkError("E_NO_MATRICES", "code '" + css.name + "': no weight-w basis, cannot build a network");
    }
    const uint32_t n = static_cast<uint32_t>(css.n);
    const uint32_t v = n;
    PrepNetwork net;
    net.code_name = css.name;
    net.n = n;
    net.num_qubits = n + 1;

    auto single = [&](Gate g) {
        Timestep s;
        s.gates.push_back(g);
        net.steps.push_back(std::move(s));
    };

    Timestep prep;
    prep.free_evolution = false;
    for (uint32_t q = 0; q <= n; q++) {
        prep.gates.push_back(Gate::prep(q, Phase::Generation));
    }
    net.steps.push_back(std::move(prep));

    Timestep seeds;
    for (size_t s : css.seeds) {
        seeds.gates.push_back(Gate::hadamard(static_cast<uint32_t>(s), Phase::Generation));
    }
    net.steps.push_back(std::move(seeds));

    const BitMatrix &g = css.c_small.generator;
    for (size_t i = 0; i < css.m; i++) {
        uint32_t seed = static_cast<uint32_t>(css.seeds[i]);
        for (size_t q : g.row(i).support()) {
            if (q != seed) {
                single(Gate::xor_gate(seed, static_cast<uint32_t>(q), Phase::Generation));
            }
        }
    }

    for (size_t i = 0; i < css.m; i++) {
        for (size_t q : g.row(i).support()) {
            single(Gate::xor_gate(static_cast<uint32_t>(q), v, Phase::Verification));
        }
        single(Gate::measure(v, Phase::Verification));
    }
    for (size_t q : css.final_check.support()) {
        single(Gate::xor_gate(static_cast<uint32_t>(q), v, Phase::Verification));
    }
    Timestep last;
    last.free_evolution = false;
    last.gates.push_back(Gate::measure(v, Phase::Verification));
    for (uint32_t q = 0; q < n; q++) {
        last.gates.push_back(Gate::hadamard(q, Phase::FinalHadamard));
    }
    net.steps.push_back(std::move(last));
    return net;
}

PrepNetwork without_phase(const PrepNetwork &net, Phase phase) {
    PrepNetwork out = net;
    out.steps.clear();
    for (const auto &s : net.steps) {
        Timestep t;
        t.free_evolution = s.free_evolution;
        for (const auto &g : s.gates) {
            if (g.phase != phase) {
                t.gates.push_back(g);
            }
        }
        if (!t.gates.empty()) {
            out.steps.push_back(std::move(t));
        }
    }
    return out;
}

ResourceCount count_resources(const PrepNetwork &net) {
    ResourceCount rc;
    rc.timesteps = net.steps.size();
    std::vector<size_t> verifier_xors_since_measure;
    size_t run = 0;
    for (const auto &s : net.steps) {
        std::set<uint32_t> touched;
        for (const auto &g : s.gates) {
            rc.ops_total++;
            rc.ops_by_kind[g.kind]++;
            touched.insert(g.q);
            if (g.two_qubit()) {
                touched.insert(g.target);
                if (g.target == net.verifier()) {
                    run++;
                }
            }
            if (g.kind == GateKind::MeasureZ && g.q == net.verifier()) {
                verifier_xors_since_measure.push_back(run);
                run = 0;
            }
        }
        if (s.free_evolution) {
            rc.idle_qubit_timesteps += net.num_qubits - std::min(net.num_qubits, touched.size());
        }
    }
    if (!verifier_xors_since_measure.empty()) {
        rc.final_check_gates = verifier_xors_since_measure.back();
    }
    if (net.n > 0) {
        rc.idle_model = (net.n - 1) * rc.timesteps;
        rc.final_check_gates_model = (net.n - 1) / 2;
    }
    return rc;
}

std::vector<std::string> check_schedule_legality(const PrepNetwork &net) {
    std::vector<std::string> out;
    for (size_t i = 0; i < net.steps.size(); i++) {
        const std::string where = "step " + std::to_string(i) + ": ";
        std::map<uint32_t, size_t> uses;
        size_t block_two_qubit = 0;
        for (const auto &g : net.steps[i].gates) {
            std::vector<uint32_t> qs{g.q};
            if (g.two_qubit()) {
                qs.push_back(g.target);
                if (g.q == g.target) {
                    out.push_back(where + "xor control equals target (" + std::to_string(g.q) + ")");
                }
                if (g.q < net.n || g.target < net.n) {
                    block_two_qubit++;
                }
            }
            for (uint32_t q : qs) {
                if (q >= net.num_qubits) {
                    out.push_back(where + "qubit " + std::to_string(q) + " out of range");
                }
                uses[q]++;
            }
        }
        for (auto [q, c] : uses) {
            if (c > 1) {
                out.push_back(where + "qubit " + std::to_string(q) + " used " + std::to_string(c) + " times");
            }
        }
        if (block_two_qubit > 1) {
            out.push_back(where + std::to_string(block_two_qubit) + " two-qubit gates touch the ancilla block");
        }
    }
    return out;
}

std::string dump_network(const PrepNetwork &net) {
    std::ostringstream out;
    for (const auto &s : net.steps) {
        bool first = true;
        for (const auto &g : s.gates) {
            if (!first) {
                out << ' ';
            }
            first = false;
            switch (g.kind) {
                case GateKind::PrepZ:
                    out << "P(" << g.q << ")";
                    break;
                case GateKind::Hadamard:
                    out << "H(" << g.q << ")";
                    break;
                case GateKind::Xor:
                    out << "X(" << g.q << ">" << g.target << ")";
                    break;
                case GateKind::MeasureZ:
                    out << "M(" << g.q << ")";
                    break;
            }
        }
        out << '\n';
    }
    return out.str();
}

PrepNetwork parse_network_dump(std::string_view text, size_t n) {
    static const std::regex token(R"(([PHXM])\((\d+)(?:>(\d+))?\))");
    PrepNetwork net;
    net.code_name = "custom";
    net.n = n;
    net.num_qubits = n + 1;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    bool seen_verifier_xor = false;
    while (std::getline(in, line)) {
        line_no++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        Timestep s;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            std::smatch mt;
            if (!std::regex_match(tok, mt, token)) {
                throw ParseError("network dump line " + std::to_string(line_no) + ": bad token '" + tok + "'");
            }
            char kind = mt[1].str()[0];
            uint32_t q = static_cast<uint32_t>(std::stoul(mt[2].str()));
            bool has_target = mt[3].matched;
            if ((kind == 'X') != has_target) {
                throw ParseError("network dump line " + std::to_string(line_no) + ": bad token '" + tok + "'");
            }
            Phase ph = seen_verifier_xor ? Phase::Verification : Phase::Generation;
            switch (kind) {
                case 'P':
                    s.gates.push_back(Gate::prep(q, ph));
                    break;
                case 'H':
                    s.gates.push_back(Gate::hadamard(q, ph));
                    break;
                case 'M':
                    s.gates.push_back(Gate::measure(q, ph));
                    break;
                default: {
                    uint32_t t = static_cast<uint32_t>(std::stoul(mt[3].str()));
                    if (t == n) {
                        seen_verifier_xor = true;
                        ph = Phase::Verification;
                    }
                    s.gates.push_back(Gate::xor_gate(q, t, ph));
                }
            }
        }
        net.steps.push_back(std::move(s));
    }
    if (!net.steps.empty()) {
        net.steps.front().free_evolution = false;
        net.steps.back().free_evolution = false;
        for (auto &g : net.steps.back().gates) {
            if (g.kind == GateKind::Hadamard) {
                g.phase = Phase::FinalHadamard;
            }
        }
    }
    return net;
}

const char *mode_name(SyndromeMode m) {
    return m == SyndromeMode::Serial ? "serial" : "parallel";
}

SyndromeMode parse_mode(std::string_view s) {
    if (s == "serial") {
        return SyndromeMode::Serial;
    }
    if (s == "parallel") {
        return SyndromeMode::Parallel;
    }
    throw NetworkError("E_MODE", "mode must be 'serial' or 'parallel', got '" + std::string(s) + "'");
}

CorrectionSchedule build_correction_schedule(const CssCode &css, size_t r, SyndromeMode mode, size_t eta) {
    if (r < 1) {
        throw NetworkError("E_INVALID_R", "syndrome repetitions r must be at least 1");
    }
    CorrectionSchedule cs;
    cs.code_name = css.name;
    cs.n = css.n;
    cs.r = r;
    cs.mode = mode;
    cs.eta = eta == 0 ? css.w : eta;
    cs.prep_x = build_prep_network(css);
    cs.prep_z = cs.prep_x;
    cs.prep_z.conjugate_basis = true;

    const size_t n = css.n;
    size_t num_lanes = mode == SyndromeMode::Serial ? 2 : 2 * r;
    for (size_t l = 0; l < num_lanes; l++) {
        Lane lane;
        lane.role = l % 2 == 0 ? AncillaRole::BitSyndrome : AncillaRole::SignSyndrome;
        lane.base = n + l * (n + 1);
        cs.lanes.push_back(lane);
    }
    for (size_t j = 0; j < r; j++) {
        size_t lx = mode == SyndromeMode::Serial ? 0 : 2 * j;
        size_t lz = lx + 1;
        cs.lanes[lx].rounds.push_back(j);
        cs.lanes[lz].rounds.push_back(j);
        uint32_t bx = static_cast<uint32_t>(cs.lanes[lx].base);
        uint32_t bz = static_cast<uint32_t>(cs.lanes[lz].base);
        std::vector<Timestep> steps;
        for (uint32_t q = 0; q < n; q++) {
            Timestep s;
            s.gates.push_back(Gate::xor_gate(q, bx + q, Phase::Interaction));
            steps.push_back(std::move(s));
        }
        for (uint32_t q = 0; q < n; q++) {
            Timestep s;
            s.gates.push_back(Gate::xor_gate(bz + q, q, Phase::Interaction));
            steps.push_back(std::move(s));
        }
        Timestep meas;
        for (uint32_t q = 0; q < n; q++) {
            meas.gates.push_back(Gate::measure(bx + q, Phase::Interaction));
            meas.gates.push_back(Gate::measure(bz + q, Phase::Interaction));
        }
        steps.push_back(std::move(meas));
        cs.rounds.push_back(std::move(steps));
    }
    return cs;
}

std::vector<Gate> CorrectionSchedule::gate_multiset() const {
    std::vector<Gate> out;
    for (const auto &lane : lanes) {
        const PrepNetwork &p = lane.role == AncillaRole::BitSyndrome ? prep_x : prep_z;
        for (size_t use = 0; use < lane.rounds.size(); use++) {
            for (const auto &s : p.steps) {
                for (Gate g : s.gates) {
                    g.q += static_cast<uint32_t>(lane.base);
                    if (g.two_qubit()) {
                        g.target += static_cast<uint32_t>(lane.base);
                    }
                    out.push_back(g);
                }
            }
        }
    }
    for (const auto &round : rounds) {
        for (const auto &s : round) {
            out.insert(out.end(), s.gates.begin(), s.gates.end());
        }
    }
    std::sort(out.begin(), out.end(), [](const Gate &a, const Gate &b) {
        return std::tie(a.kind, a.q, a.target, a.phase) < std::tie(b.kind, b.q, b.target, b.phase);
    });
    return out;
}

}  // namespace ancilla
