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


#include "ancilla/codes/catalog.h"

#include <fstream>
#include <mutex>
#include <sstream>

#include "ancilla/error.h"

namespace ancilla {

extern const char *const kBuiltinCatalogText;

namespace {

std::string_view trim(std::string_view s) {
    size_t hash = s.find('#');
    if (hash != std::string_view::npos) {
        s = s.substr(0, hash);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(std::string_view source, size_t line, const std::string &msg) {
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

size_t parse_count(std::string_view source, size_t line, const std::string &field, const std::string &tok) {
    size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos != tok.size() || tok.empty() || tok[0] == '-') {
        fail(source, line, "field '" + field + "' is not a non-negative integer: '" + tok + "'");
    }
    return v;
}

}  // namespace

std::vector<ClassicalCode> parse_code_catalog(std::string_view text, std::string_view source) {
    std::vector<ClassicalCode> codes;
    std::istringstream in{std::string(text)};
    std::string raw;
    size_t line_no = 0;

    bool in_code = false;
    size_t header_line = 0;
    std::string name;
    size_t n = 0, k = 0, d = 0;
    bool verified = false;
    std::vector<BitVec> rows;

    while (std::getline(in, raw)) {
        line_no++;
        std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (!in_code) {
            std::istringstream ls{std::string(line)};
            std::string kw, tn, tk, td, tv, extra;
            ls >> kw >> name >> tn >> tk >> td >> tv;
            if (kw != "code") {
                fail(source, line_no, "expected 'code <name> <n> <k> <d> <verified>', got '" + std::string(line) + "'");
            }
            if (tv.empty() || (ls >> extra)) {
                fail(source, line_no, "code header needs exactly 5 fields after 'code'");
            }
            n = parse_count(source, line_no, "n", tn);
            k = parse_count(source, line_no, "k", tk);
            d = parse_count(source, line_no, "d", td);
            if (tv != "0" && tv != "1") {
                fail(source, line_no, "field 'verified' must be 0 or 1, got '" + tv + "'");
            }
            verified = tv == "1";
            if (n == 0 || k > n) {
                fail(source, line_no, "code '" + name + "': need 0 < n and k <= n");
            }
            for (const auto &c : codes) {
                if (c.name == name) {
                    fail(source, line_no, "duplicate code name '" + name + "'");
                }
            }
            in_code = true;
            header_line = line_no;
            rows.clear();
            continue;
        }
        if (line == "end") {
            if (rows.size() != k) {
                fail(source, line_no,
                     "code '" + name + "': expected " + std::to_string(k) + " rows before 'end', got " +
                         std::to_string(rows.size()));
            }
            BitMatrix g = BitMatrix::from_rows(rows, n);
            if (g.rank() != k) {
                fail(source, header_line, "code '" + name + "': generator rows are linearly dependent");
            }
            if (d > n) {
                fail(source, header_line, "code '" + name + "': d exceeds n");
            }
            codes.push_back(ClassicalCode::from_generator(name, std::move(g), d, verified));
            in_code = false;
            continue;
        }
        if (rows.size() == k) {
            fail(source, line_no, "code '" + name + "': more than " + std::to_string(k) + " rows, missing 'end'");
        }
        try {
            rows.push_back(BitVec::from_hex(line, n));
        } catch (const std::invalid_argument &e) {
            fail(source, line_no,
                 "code '" + name + "' row " + std::to_string(rows.size()) + " '" + std::string(line) + "': " + e.what());
        }
    }
    if (in_code) {
        fail(source, header_line, "code '" + name + "' is missing 'end'");
    }
    return codes;
}

std::vector<ClassicalCode> load_code_catalog(const std::filesystem::path &path) {
    std::ifstream f(path);
    if (!f) {
        throw ParseError("cannot open catalog file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_code_catalog(buf.str(), path.string());
}

std::string_view builtin_catalog_text() {
    return kBuiltinCatalogText;
}

const std::vector<ClassicalCode> &builtin_catalog() {
    static const std::vector<ClassicalCode> codes = parse_code_catalog(kBuiltinCatalogText, "builtin catalog");
    return codes;
}

const ClassicalCode &builtin_code(std::string_view name) {
    for (const auto &c : builtin_catalog()) {
        if (c.name == name) {
            return c;
        }
    }
    throw CodeError("E_UNKNOWN_CODE", "unknown code '" + std::string(name) + "'");
}

}  // namespace ancilla
