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


#ifndef ANCILLA_CODES_CATALOG_H
#define ANCILLA_CODES_CATALOG_H

#include <filesystem>
#include <string_view>
#include <vector>

#include "ancilla/codes/classical_code.h"

namespace ancilla {

/// Parses the line-oriented code-data format:
///
///     # comment
///     code <name> <n> <k> <d> <verified:0|1>
///     <k rows of big-endian hex, leftmost bit = coordinate 0>
///     end
///
/// Throws ParseError carrying `source:line:` on malformed input or when a
/// generator is rank deficient.
std::vector<ClassicalCode> parse_code_catalog(std::string_view text, std::string_view source = "<catalog>");
std::vector<ClassicalCode> load_code_catalog(const std::filesystem::path &path);

/// Raw text of the catalog compiled into the library.
std::string_view builtin_catalog_text();
/// Parsed once on first use.
const std::vector<ClassicalCode> &builtin_catalog();
/// Throws CodeError("E_UNKNOWN_CODE") for names not in the catalog.
const ClassicalCode &builtin_code(std::string_view name);

}  // namespace ancilla

#endif
