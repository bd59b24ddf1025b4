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


#ifndef ANCILLA_REPORT_REPORT_H
#define ANCILLA_REPORT_REPORT_H

#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ancilla/model/model.h"
#include "ancilla/sim/block_cycle.h"

namespace ancilla {

/// Scientific notation with 6 significant digits ("%.5e").
std::string sci(double v);

/// Parses {K, Q, mode?, epsilon_ratio?, gamma0?, eta?, r?}. When the ratio is
/// absent it follows the mode: 1/2 for serial, 2 for parallel.
/// Throws ModelError E_SCENARIO on missing or ill-typed fields.
Scenario parse_scenario(const nlohmann::ordered_json &j);
/// Reads a JSON file; throws ModelError E_SCENARIO or ParseError.
nlohmann::ordered_json read_json_file(const std::string &path);
/// {"K": 2150, "Q": 2e10}
nlohmann::ordered_json shor430_preset();
double default_ratio(SyndromeMode mode);

/// One table column in the units of the printed tables: gamma and epsilon in
/// 1e-6, N in 1e5, T in 1e16, parallelism in 1e4.
struct TableRow {
    SyndromeMode mode = SyndromeMode::Serial;
    std::string code;
    double gamma = 0;
    double epsilon = 0;
    double N = 0;
    double T = 0;
    double parallelism = 0;
    /// "computed", or "quoted, not computed" for the concatenated reference.
    std::string source;
    /// T entry of the printed table, for the block codes.
    std::optional<double> T_table;
    std::string flags;
};

/// Codes compared in the tables.
const std::vector<std::string> &table_codes();

/// Rows for the given mode: the concatenated reference first, then one row per
/// block code at its maximum tolerable gamma. `ratio` defaults to
/// default_ratio(mode). The reference row is computed only when the scenario
/// carries gamma0.
std::vector<TableRow> build_table(const Scenario &s, SyndromeMode mode, std::optional<double> ratio = std::nullopt);
std::string table_csv(const std::vector<TableRow> &rows);
nlohmann::ordered_json table_json(const std::vector<TableRow> &rows);

struct CurveSpec {
    std::string code;
    SyndromeMode mode = SyndromeMode::Serial;
    double epsilon_ratio = 0.5;
    double gamma_min = 1e-7;
    double gamma_max = 1e-3;
    int points = 41;
    bool include_zero = false;
    int64_t r = 0;
    int64_t eta = 0;

    /// Throws ModelError E_GRID unless 0 < gamma_min < gamma_max and points >= 2.
    void validate() const;
    /// Log-spaced, strictly increasing; a leading 0 when include_zero.
    std::vector<double> grid() const;
};

std::vector<std::pair<double, double>> figure4_curve(const CurveSpec &spec);
std::string curve_csv(const std::vector<std::pair<double, double>> &rows);
nlohmann::ordered_json curve_json(const CurveSpec &spec, const std::vector<std::pair<double, double>> &rows);

nlohmann::ordered_json code_list_json();
/// Properties, weight distribution where enumerable, and CSS parameters.
nlohmann::ordered_json code_verify_json(const std::string &name, unsigned threads);

nlohmann::ordered_json network_json(const PrepNetwork &net, const CssCode &css);

/// Everything except timing. Rates are derived from the tallies.
nlohmann::ordered_json cycle_json(const CycleStats &st, const CodeParams &p);
nlohmann::ordered_json prep_json(const PrepStats &st, const CodeParams &p);
nlohmann::ordered_json syndrome_json(const SyndromeStats &st, const CodeParams &p);

nlohmann::ordered_json solve_json(const std::string &code, const CodeParams &p, const Scenario &s, const SolveResult &res,
                          const OverheadReport &rep);

}  // namespace ancilla

#endif
