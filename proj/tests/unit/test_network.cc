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

#include <algorithm>
#include <set>

#include "ancilla/codes/css_code.h"
#include "ancilla/error.h"
#include "ancilla/network/network.h"

using namespace ancilla;

namespace {

const char *kBuildable[] = {"css7", "css23", "css55", "css87"};

size_t count_kind(const PrepNetwork &net, GateKind k) {
    size_t c = 0;
    for (const auto &s : net.steps) {
        for (const auto &g : s.gates) {
            c += g.kind == k;
        }
    }
    return c;
}

PrepNetwork hand_net(std::vector<std::vector<Gate>> steps, size_t n = 3) {
    PrepNetwork net;
    net.code_name = "hand";
    net.n = n;
    net.num_qubits = n + 1;
    for (auto &s : steps) {
        net.steps.push_back({std::move(s), true});
    }
    return net;
}

}  // namespace

TEST(PrepNetwork, SevenQubitCodeCounts) {
    PrepNetwork net = build_prep_network(builtin_css("css7"));
    ResourceCount rc = count_resources(net);
    EXPECT_EQ(rc.ops_total, 46u);
    EXPECT_EQ(rc.timesteps, 30u);
    EXPECT_EQ(rc.idle_model, 180u);
}

TEST(PrepNetwork, CountsFollowTimestepFormulaAndCensus) {
    for (const char *name : kBuildable) {
        const CssCode &css = builtin_css(name);
        SCOPED_TRACE(name);
        PrepNetwork net = build_prep_network(css);
        ResourceCount rc = count_resources(net);
        size_t n = css.n, m = css.m, w = css.w;
        EXPECT_EQ(rc.timesteps, m * (2 * w + 1) + 3);
        EXPECT_EQ(rc.ops_total, 2 * (n + m + 1) + 2 * m * w);
        // Per-category census.
        EXPECT_EQ(count_kind(net, GateKind::PrepZ), n + 1);
        EXPECT_EQ(count_kind(net, GateKind::MeasureZ), m + 1);
        EXPECT_EQ(count_kind(net, GateKind::Hadamard), n + m);
        EXPECT_EQ(count_kind(net, GateKind::Xor), m * (w - 1) + m * (w + 1));
        EXPECT_EQ(rc.final_check_gates, rc.final_check_gates_model);
    }
    EXPECT_EQ(count_resources(build_prep_network(builtin_css("css23"))).timesteps, 190u);
    EXPECT_EQ(count_resources(build_prep_network(builtin_css("css23"))).ops_total, 246u);
    EXPECT_EQ(count_resources(build_prep_network(builtin_css("css55"))).timesteps, 678u);
}

TEST(PrepNetwork, PhasesAreInOrder) {
    PrepNetwork net = build_prep_network(builtin_css("css23"));
    int last = 0;
    size_t gen_xor = 0, ver_xor = 0;
    for (const auto &s : net.steps) {
        for (const auto &g : s.gates) {
            EXPECT_GE(int(g.phase), last);
            last = std::max(last, int(g.phase));
            if (g.kind == GateKind::Xor) {
                (g.phase == Phase::Generation ? gen_xor : ver_xor)++;
            }
        }
    }
    EXPECT_EQ(gen_xor, 11u * 7u);
    EXPECT_EQ(ver_xor, 11u * 9u);
    EXPECT_FALSE(net.steps.front().free_evolution);
    EXPECT_FALSE(net.steps.back().free_evolution);
}

TEST(PrepNetwork, GenerationFansOutFromSeeds) {
    const CssCode &css = builtin_css("css7");
    PrepNetwork net = build_prep_network(css);
    std::set<uint32_t> seeds(css.seeds.begin(), css.seeds.end());
    std::vector<std::pair<uint32_t, uint32_t>> xors;
    for (const auto &s : net.steps) {
        for (const auto &g : s.gates) {
            if (g.kind == GateKind::Xor && g.phase == Phase::Generation) {
                xors.emplace_back(g.q, g.target);
            }
            if (g.kind == GateKind::Hadamard && g.phase == Phase::Generation) {
                EXPECT_TRUE(seeds.count(g.q));
            }
        }
    }
    ASSERT_EQ(xors.size(), css.m * (css.w - 1));
    size_t k = 0;
    for (size_t row = 0; row < css.m; row++) {
        for (size_t q : css.c_small.generator.row(row).support()) {
            if (q == css.seeds[row]) {
                continue;
            }
            EXPECT_EQ(xors[k].first, css.seeds[row]);
            EXPECT_EQ(xors[k].second, q);
            k++;
        }
    }
}

TEST(CountResources, EmptyNetworkIsZero) {
    PrepNetwork net;
    ResourceCount rc = count_resources(net);
    EXPECT_EQ(rc.ops_total, 0u);
    EXPECT_EQ(rc.timesteps, 0u);
    EXPECT_EQ(rc.idle_qubit_timesteps, 0u);
}

TEST(CountResources, IdleCountExcludesNoFreeEvolutionSteps) {
    PrepNetwork net = build_prep_network(builtin_css("css7"));
    ResourceCount rc = count_resources(net);
    size_t idle = 0;
    for (const auto &s : net.steps) {
        if (!s.free_evolution) {
            continue;
        }
        std::set<uint32_t> busy;
        for (const auto &g : s.gates) {
            busy.insert(g.q);
            if (g.two_qubit()) {
                busy.insert(g.target);
            }
        }
        idle += net.num_qubits - busy.size();
    }
    EXPECT_EQ(rc.idle_qubit_timesteps, idle);
    EXPECT_LE(rc.idle_qubit_timesteps, rc.idle_model);
}

TEST(Legality, BuilderOutputIsLegal) {
    for (const char *name : kBuildable) {
        EXPECT_TRUE(check_schedule_legality(build_prep_network(builtin_css(name))).empty()) << name;
    }
}

TEST(Legality, TwoBlockXorsInOneStep) {
    auto net = hand_net({{Gate::xor_gate(0, 1, Phase::Generation), Gate::xor_gate(2, 3, Phase::Verification)}});
    EXPECT_EQ(check_schedule_legality(net).size(), 1u);
}

TEST(Legality, QubitUsedTwice) {
    auto net = hand_net({{Gate::hadamard(0, Phase::Generation), Gate::prep(0, Phase::Generation)}});
    EXPECT_EQ(check_schedule_legality(net).size(), 1u);
}

TEST(Legality, SingleQubitGatesMayShareAStepWithOneXor) {
    auto net = hand_net({{Gate::xor_gate(0, 1, Phase::Generation), Gate::hadamard(2, Phase::Generation),
                          Gate::measure(3, Phase::Verification)}});
    EXPECT_TRUE(check_schedule_legality(net).empty());
}

TEST(Legality, ControlEqualsTargetAndOutOfRange) {
    EXPECT_FALSE(check_schedule_legality(hand_net({{Gate::xor_gate(1, 1, Phase::Generation)}})).empty());
    EXPECT_FALSE(check_schedule_legality(hand_net({{Gate::hadamard(9, Phase::Generation)}})).empty());
}

TEST(NetworkDump, RoundTrips) {
    for (const char *name : {"css7", "css23"}) {
        const CssCode &css = builtin_css(name);
        PrepNetwork net = build_prep_network(css);
        std::string text = dump_network(net);
        PrepNetwork back = parse_network_dump(text, css.n);
        EXPECT_EQ(dump_network(back), text);
        ASSERT_EQ(back.steps.size(), net.steps.size());
        for (size_t i = 0; i < net.steps.size(); i++) {
            EXPECT_EQ(back.steps[i].gates, net.steps[i].gates) << "step " << i;
            EXPECT_EQ(back.steps[i].free_evolution, net.steps[i].free_evolution) << "step " << i;
        }
    }
}

TEST(NetworkDump, TokenFormat) {
    std::string text = dump_network(build_prep_network(builtin_css("css7")));
    EXPECT_EQ(text.substr(0, 5), "P(0) ");
    EXPECT_NE(text.find("X(0>"), std::string::npos);
    EXPECT_NE(text.find("M(7)"), std::string::npos);
    EXPECT_THROW(parse_network_dump("P(0) Q(1)\n", 3), ParseError);
}

TEST(PrepNetwork, LargestCodeCounts) {
    ResourceCount rc = count_resources(build_prep_network(builtin_css("css87")));
    EXPECT_EQ(rc.timesteps, 1422u);
    EXPECT_EQ(rc.ops_total, 1638u);
    EXPECT_EQ(rc.final_check_gates, 43u);
}

TEST(PrepNetwork, RequiresWeightWBasis) {
    CssCode css = builtin_css("css7");
    css.network_available = false;
    try {
        build_prep_network(css);
        FAIL();
    } catch (const NetworkError &e) {
        EXPECT_EQ(e.code(), "E_NO_MATRICES");
    }
}

TEST(WithoutPhase, DropsGatesAndEmptySteps) {
    PrepNetwork net = build_prep_network(builtin_css("css7"));
    PrepNetwork gen = without_phase(net, Phase::Verification);
    EXPECT_EQ(count_kind(gen, GateKind::Xor), 9u);
    EXPECT_LT(gen.steps.size(), net.steps.size());
}

// ---- correction schedules

TEST(CorrectionSchedule, SerialSevenQubit) {
    CorrectionSchedule cs = build_correction_schedule(builtin_css("css7"), 2, SyndromeMode::Serial);
    EXPECT_EQ(cs.lanes.size(), 2u);
    EXPECT_EQ(cs.rounds.size(), 2u);
    EXPECT_EQ(cs.interaction_steps_per_round(), 15u);
    EXPECT_EQ(cs.eta, 4u);
    EXPECT_TRUE(cs.prep_z.conjugate_basis);
    EXPECT_FALSE(cs.prep_x.conjugate_basis);
    for (const auto &lane : cs.lanes) {
        EXPECT_EQ(lane.rounds.size(), 2u);
    }
}

TEST(CorrectionSchedule, ParallelGolayHasTwoRLanes) {
    CorrectionSchedule cs = build_correction_schedule(builtin_css("css23"), 4, SyndromeMode::Parallel);
    EXPECT_EQ(cs.lanes.size(), 8u);
    EXPECT_EQ(cs.num_qubits(), 23u + 8u * 24u);
    for (const auto &lane : cs.lanes) {
        EXPECT_EQ(lane.rounds.size(), 1u);
    }
}

TEST(CorrectionSchedule, ModesCoincideAtOneRound) {
    for (const char *name : {"css7", "css23"}) {
        const CssCode &css = builtin_css(name);
        auto s = build_correction_schedule(css, 1, SyndromeMode::Serial);
        auto p = build_correction_schedule(css, 1, SyndromeMode::Parallel);
        EXPECT_EQ(s.gate_multiset(), p.gate_multiset()) << name;
    }
}

TEST(CorrectionSchedule, RoundStructure) {
    const CssCode &css = builtin_css("css23");
    CorrectionSchedule cs = build_correction_schedule(css, 3, SyndromeMode::Serial);
    for (const auto &round : cs.rounds) {
        ASSERT_EQ(round.size(), 2 * css.n + 1);
        size_t xors = 0;
        for (const auto &step : round) {
            std::set<uint32_t> used;
            for (const auto &g : step.gates) {
                EXPECT_TRUE(used.insert(g.q).second);
                if (g.two_qubit()) {
                    EXPECT_TRUE(used.insert(g.target).second);
                    xors++;
                }
            }
        }
        EXPECT_EQ(xors, 2 * css.n);
        EXPECT_EQ(round.back().gates.size(), 2 * css.n);
    }
}

TEST(CorrectionSchedule, InvalidR) {
    try {
        build_correction_schedule(builtin_css("css7"), 0, SyndromeMode::Serial);
        FAIL();
    } catch (const NetworkError &e) {
        EXPECT_EQ(e.code(), "E_INVALID_R");
    }
}

TEST(SyndromeMode, ParsesNames) {
    EXPECT_EQ(parse_mode("serial"), SyndromeMode::Serial);
    EXPECT_EQ(parse_mode("parallel"), SyndromeMode::Parallel);
    EXPECT_STREQ(mode_name(SyndromeMode::Parallel), "parallel");
    EXPECT_THROW(parse_mode("both"), NetworkError);
}
