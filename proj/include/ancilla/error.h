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

#ifndef ANCILLA_ERROR_H
#define ANCILLA_ERROR_H

#include <stdexcept>
#include <string>

namespace ancilla {

/// Base exception. Carries a short machine-readable code (e.g. "E_PARSE") next
/// to the human-readable message; the CLI prints both on one line.
class Error : public std::runtime_error {
   public:
    Error(std::string code, const std::string &message) : std::runtime_error(message), code_(std::move(code)) {
    }
    const std::string &code() const noexcept {
        return code_;
    }

   private:
    std::string code_;
};

struct CodeError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string &message) : Error("E_PARSE", message) {
    }
};

struct NetworkError : Error {
    using Error::Error;
};

struct PreparationError : Error {
    PreparationError(const std::string &message) : Error("E_PREPARATION", message) {
    }
};

struct ModelError : Error {
    using Error::Error;
};

}  // namespace ancilla

#endif
