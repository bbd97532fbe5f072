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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqcs/reliability.hpp"
#include "cqcs/topology.hpp"

namespace cqcs {

/// Growth heuristic for the greedy subgraph search.
///  - NoisePrioritized adds argmax_j sum_{i in S} RM[i,j] * m[j].
///  - DepthPrioritized adds argmax_j sum_{i in S} m[j] / DM[i,j], breaking ties
///    with the noise-prioritized value.
enum class AllocationPolicy { NoisePrioritized, DepthPrioritized };

AllocationPolicy parse_allocation_policy(std::string_view text);
std::string_view to_string(AllocationPolicy policy);

struct Allocation {
    size_t instance_id = 0;
    /// physical_qubits[logical] = physical qubit.
    std::vector<Qubit> physical_qubits;
    /// Coupling edges with both endpoints in physical_qubits, sorted.
    std::vector<Edge> induced_edges;
    double score = 0.0;
};

/// Greedy BFS growth from `start` over qubits with available[q] != 0. Returns
/// nullopt if the candidate set empties before reaching `size` qubits.
///
/// Score of the finished subgraph: mean over unordered pairs of the policy's
/// pairwise term (RM for noise, 1/DM for depth) times the mean measurement
/// reliability over the subgraph. A single qubit scores m[start].
std::optional<Allocation> grow_subgraph(const CouplingGraph &graph, Qubit start, size_t size,
                                        const PathMatrices &matrices, const NoiseProfile &profile,
                                        std::span<const unsigned char> available, AllocationPolicy policy);

struct AllocationResult {
    std::vector<Allocation> allocations;
    size_t requested = 0;

    size_t achieved() const { return allocations.size(); }
    size_t shortfall() const { return requested - allocations.size(); }
};

/// Places up to `instances` disjoint subgraphs of `width` qubits, one after
/// another, each time keeping the best-scoring growth over all available
/// starts (ties go to the lowest start index). If that leaves fewer
/// instances than fit by qubit count, a bounded lookahead retries, taking at
/// each step the best-ranked subgraph that keeps the most remaining instances
/// placeable; the larger placement wins. Allocations come back ordered by
/// score, best first, with instance ids renumbered. A shortfall is reported,
/// never thrown. Per-start searches run on `workers` threads; the result does
/// not depend on the worker count.
AllocationResult allocate_instances(const CouplingGraph &graph, const PathMatrices &matrices,
                                    const NoiseProfile &profile, size_t width, size_t instances,
                                    AllocationPolicy policy, size_t workers = 1);

/// `inst <k>: <q0> <q1> ... ; score <s>`
std::string format_allocation(const Allocation &allocation);

/// True if the qubits are distinct and induce a connected subgraph.
bool is_connected_subgraph(const CouplingGraph &graph, std::span<const Qubit> qubits);

}  // namespace cqcs
