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
#include <vector>

#include "cqcs/allocator.hpp"
#include "cqcs/circuit.hpp"

namespace cqcs {

/// A logical circuit rewritten onto one allocation. Qubits of `circuit` are
/// local positions 0..w-1; `physical[pos]` is the device qubit behind each
/// position. Measurements keep the logical index as their classical bit.
struct RoutedCircuit {
    Circuit circuit;
    std::vector<Qubit> physical;
    std::vector<Edge> local_edges;       // induced topology in local positions
    std::vector<Qubit> final_layout;     // logical -> local position
    size_t swap_count = 0;
    size_t depth = 0;

    Qubit final_physical(Qubit logical) const { return physical[final_layout[logical]]; }
};

struct RouterOptions {
    /// Weight of the lookahead window relative to the front layer.
    double lookahead_weight = 0.5;
    /// Number of upcoming two-qubit gates in the lookahead window.
    size_t lookahead_gates = 20;
};

/// SWAP insertion on the allocation's induced topology, starting from the
/// identity layout (logical i on allocation.physical_qubits[i]).
///
/// Front-layer heuristic: each candidate SWAP touching a blocked front gate is
/// scored by the summed hop distance of the front gates after the swap plus
/// lookahead_weight times the same sum over the lookahead window; the lowest
/// score wins, then the least recently swapped edge, then the lowest edge
/// index. A shortest-path fallback guarantees progress.
///
/// Throws std::invalid_argument when the widths differ or the allocation is
/// disconnected.
RoutedCircuit route(const Circuit &circuit, const Allocation &allocation, const RouterOptions &options = {});

/// Wraps an already-physical circuit: position i is device qubit physical[i]
/// and the layout is the identity. Used for hand-built circuits in tests and
/// tools.
RoutedCircuit identity_routing(const Circuit &circuit, std::vector<Qubit> physical);

/// Cycle count under layer_circuit, measurement cycle included.
size_t depth(const Circuit &circuit);

}  // namespace cqcs
