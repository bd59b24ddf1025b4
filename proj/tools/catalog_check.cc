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


// Build-time gate for the code catalog: every code must be self-dual and
// doubly even, and codes flagged verified must enumerate to their stated
// minimum distance. Exits nonzero on the first failure.

#include <cstdio>
#include <exception>

#include "ancilla/codes/catalog.h"
#include "ancilla/codes/classical_code.h"
#include "ancilla/error.h"

int main(int argc, char **argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <catalog.txt>\n", argv[0]);
        return 2;
    }
    try {
        auto codes = ancilla::load_code_catalog(argv[1]);
        int bad = 0;
        for (const auto &c : codes) {
            auto rep = ancilla::verify_code_properties(c);
            const char *why = nullptr;
            if (!rep.self_dual) {
                why = "not self-dual";
            } else if (!rep.doubly_even) {
                why = "not doubly even";
            } else if (c.d_verified && (!rep.min_distance_checked || rep.min_distance != c.d)) {
                why = "enumerated minimum distance differs from the stated d";
            }
            if (why) {
                std::fprintf(stderr, "catalog: code '%s' rejected: %s\n", c.name.c_str(), why);
                bad++;
            } else {
                std::printf("catalog: %s [%zu,%zu,%zu] ok%s\n", c.name.c_str(), c.n, c.k, c.d,
                            rep.min_distance_checked ? "" : " (d trusted)");
            }
        }
        return bad ? 1 : 0;
    } catch (const ancilla::Error &e) {
        std::fprintf(stderr, "error: %s: %s\n", e.code().c_str(), e.what());
        return 1;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: E_INTERNAL: %s\n", e.what());
        return 1;
    }
}
