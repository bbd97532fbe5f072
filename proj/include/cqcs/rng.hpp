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

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace cqcs {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// master seed plus a tuple of counters.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from `parent` and an ordered list of counters. Equal
/// inputs give equal seeds; the result does not depend on evaluation order of
/// any other stream.
uint64_t derive_seed(uint64_t parent, std::initializer_list<uint64_t> path);

/// Stable 64-bit hash of a label, for naming streams ("profile", "train").
uint64_t label_hash(std::string_view label);

/// Thin wrapper over mt19937_64 with portable conversions. The standard
/// distributions are implementation-defined, so they are avoided wherever
/// output must be byte-reproducible.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    uint64_t index(uint64_t n);

    bool bernoulli(double p) { return uniform() < p; }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace cqcs
