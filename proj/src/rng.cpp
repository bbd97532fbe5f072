// Copyright 2026 The CQCS Authors
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

#include "cqcs/rng.hpp"

namespace cqcs {

uint64_t derive_seed(uint64_t parent, std::initializer_list<uint64_t> path) {
    uint64_t h = mix64(parent ^ 0x6a09e667f3bcc909ULL);
    for (uint64_t p : path) {
        h = mix64(h ^ mix64(p + 0x3c6ef372fe94f82bULL));
    }
    return h;
}

uint64_t label_hash(std::string_view label) {
    // FNV-1a, then mixed.
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

uint64_t Rng::index(uint64_t n) {
    // Rejection sampling removes modulo bias.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

}  // namespace cqcs
