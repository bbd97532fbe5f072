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
#include <limits>
#include <vector>

#include "cqcs/topology.hpp"

namespace cqcs {

inline constexpr uint32_t kUnreachable = std::numeric_limits<uint32_t>::max();

/// All-pairs hop distance (DM) and best path fidelity (RM), row-major.
struct PathMatrices {
    size_t n = 0;
    std::vector<uint32_t> hops;
    std::vector<double> fidelity;

    uint32_t distance(Qubit i, Qubit j) const { return hops[i * n + j]; }
    double reliability(Qubit i, Qubit j) const { return fidelity[i * n + j]; }
};

/// Min-plus relaxation for hop counts and an independent max-product
/// relaxation for path fidelity, where each link contributes
/// 1 - two_qubit_error. Unreachable pairs get kUnreachable and 0.
PathMatrices floyd_warshall(const CouplingGraph &graph, const NoiseProfile &profile);

}  // namespace cqcs
