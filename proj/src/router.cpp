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

#include "cqcs/router.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace cqcs {

size_t depth(const Circuit &circuit) {
    return layer_circuit(circuit).size();
}

RoutedCircuit identity_routing(const Circuit &circuit, std::vector<Qubit> physical) {
    if (physical.size() != circuit.width()) {
        throw std::invalid_argument("identity routing needs one physical qubit per position");
    }
    RoutedCircuit out;
    out.circuit = circuit;
    out.physical = std::move(physical);
    out.final_layout.resize(circuit.width());
    for (size_t i = 0; i < circuit.width(); ++i) {
        out.final_layout[i] = static_cast<Qubit>(i);
    }
    out.depth = depth(circuit);
    return out;
}

namespace {

constexpr uint32_t kFar = std::numeric_limits<uint32_t>::max() / 4;

std::vector<std::vector<uint32_t>> local_distances(size_t w, const std::vector<std::vector<Qubit>> &adj) {
    std::vector<std::vector<uint32_t>> d(w, std::vector<uint32_t>(w, kFar));
    for (size_t s = 0; s < w; ++s) {
        std::deque<Qubit> queue{static_cast<Qubit>(s)};
        d[s][s] = 0;
        while (!queue.empty()) {
            Qubit q = queue.front();
            queue.pop_front();
            for (Qubit n : adj[q]) {
                if (d[s][n] == kFar) {
                    d[s][n] = d[s][q] + 1;
                    queue.push_back(n);
                }
            }
        }
    }
    return d;
}

}  // namespace

RoutedCircuit route(const Circuit &circuit, const Allocation &allocation, const RouterOptions &options) {
    const size_t w = circuit.width();
    if (allocation.physical_qubits.size() != w) {
        throw std::invalid_argument(fmt::format("circuit width {} does not match allocation width {}", w,
                                                allocation.physical_qubits.size()));
    }

    RoutedCircuit out;
    out.physical = allocation.physical_qubits;
    std::vector<std::pair<Qubit, Qubit>> global_to_local;
    for (size_t i = 0; i < w; ++i) {
        global_to_local.emplace_back(out.physical[i], static_cast<Qubit>(i));
    }
    std::sort(global_to_local.begin(), global_to_local.end());
    auto to_local = [&](Qubit g) {
        auto it = std::lower_bound(global_to_local.begin(), global_to_local.end(), std::make_pair(g, Qubit{0}));
        if (it == global_to_local.end() || it->first != g) {
            throw std::invalid_argument(fmt::format("induced edge endpoint {} not in allocation", g));
        }
        return it->second;
    };
    std::vector<std::vector<Qubit>> adj(w);
    for (const Edge &e : allocation.induced_edges) {
        out.local_edges.emplace_back(to_local(e.u), to_local(e.v));
    }
    std::sort(out.local_edges.begin(), out.local_edges.end());
    for (const Edge &e : out.local_edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto &a : adj) {
        std::sort(a.begin(), a.end());
    }
    const auto dist = local_distances(w, adj);
    for (size_t i = 0; i < w; ++i) {
        if (dist[0][i] == kFar) {
            throw std::invalid_argument("allocation does not induce a connected subgraph");
        }
    }

    // Dependency DAG over non-measurement gates; measurements are appended
    // after routing under the final layout.
    const auto &gates = circuit.gates();
    std::vector<size_t> body;
    std::vector<Gate> measures;
    for (size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].kind == GateKind::MEASURE) {
            measures.push_back(gates[i]);
        } else {
            body.push_back(i);
        }
    }
    const size_t m = body.size();
    std::vector<std::vector<size_t>> successors(m);
    std::vector<size_t> pending(m, 0);
    {
        std::vector<long> last(w, -1);
        for (size_t k = 0; k < m; ++k) {
            const Gate &g = gates[body[k]];
            auto link = [&](Qubit q) {
                if (last[q] >= 0) {
                    successors[static_cast<size_t>(last[q])].push_back(k);
                    ++pending[k];
                }
                last[q] = static_cast<long>(k);
            };
            link(g.q0);
            if (g.is_two_qubit()) {
                link(g.q1);
            }
        }
    }

    std::vector<Qubit> l2p(w), p2l(w);
    for (size_t i = 0; i < w; ++i) {
        l2p[i] = p2l[i] = static_cast<Qubit>(i);
    }
    Circuit routed(w);
    std::vector<size_t> front;
    for (size_t k = 0; k < m; ++k) {
        if (pending[k] == 0) {
            front.push_back(k);
        }
    }
    std::vector<unsigned char> done(m, 0);
    std::vector<long> last_swapped(out.local_edges.size(), -1);
    long step = 0;
    size_t swaps_since_progress = 0;
    size_t lookahead_cursor = 0;  // first body index that may still be unexecuted

    auto adjacent = [&](const Gate &g) { return dist[l2p[g.q0]][l2p[g.q1]] == 1; };
    auto emit_swap = [&](Qubit a, Qubit b) {
        routed.swap(a, b);
        std::swap(p2l[a], p2l[b]);
        l2p[p2l[a]] = a;
        l2p[p2l[b]] = b;
        ++out.swap_count;
    };

    size_t executed = 0;
    while (executed < m) {
        // Execute everything currently executable.
        bool progressed = true;
        while (progressed) {
            progressed = false;
            std::sort(front.begin(), front.end());
            std::vector<size_t> next_front;
            for (size_t k : front) {
                const Gate &g = gates[body[k]];
                if (g.is_two_qubit() && !adjacent(g)) {
                    next_front.push_back(k);
                    continue;
                }
                Gate mapped = g;
                mapped.q0 = l2p[g.q0];
                if (g.is_two_qubit()) {
                    mapped.q1 = l2p[g.q1];
                }
                routed.append(mapped);
                done[k] = 1;
                ++executed;
                progressed = true;
                for (size_t s : successors[k]) {
                    if (--pending[s] == 0) {
                        next_front.push_back(s);
                    }
                }
            }
            front = std::move(next_front);
            if (progressed) {
                swaps_since_progress = 0;
            }
        }
        if (front.empty()) {
            break;
        }

        if (swaps_since_progress > 2 * w + 8) {
            // Fallback: walk the first blocked gate's control toward its target.
            const Gate &g = gates[body[front.front()]];
            Qubit a = l2p[g.q0];
            const Qubit b = l2p[g.q1];
            while (dist[a][b] > 1) {
                Qubit next = a;
                for (Qubit n : adj[a]) {
                    if (dist[n][b] < dist[next][b]) {
                        next = n;
                    }
                }
                emit_swap(a, next);
                a = next;
            }
            swaps_since_progress = 0;
            continue;
        }

        // Lookahead window: the next unexecuted two-qubit gates outside the front.
        while (lookahead_cursor < m && done[lookahead_cursor]) {
            ++lookahead_cursor;
        }
        std::vector<size_t> window;
        for (size_t k = lookahead_cursor; k < m && window.size() < options.lookahead_gates; ++k) {
            if (!done[k] && gates[body[k]].is_two_qubit() &&
                std::find(front.begin(), front.end(), k) == front.end()) {
                window.push_back(k);
            }
        }

        std::vector<unsigned char> touched(w, 0);
        for (size_t k : front) {
            const Gate &g = gates[body[k]];
            touched[l2p[g.q0]] = touched[l2p[g.q1]] = 1;
        }
        auto cost_after = [&](const std::vector<size_t> &set, Qubit a, Qubit b) {
            auto pos = [&](Qubit logical) {
                Qubit p = l2p[logical];
                return p == a ? b : (p == b ? a : p);
            };
            double total = 0.0;
            for (size_t k : set) {
                const Gate &g = gates[body[k]];
                total += dist[pos(g.q0)][pos(g.q1)];
            }
            return total;
        };

        size_t best = out.local_edges.size();
        double best_score = 0.0;
        for (size_t e = 0; e < out.local_edges.size(); ++e) {
            const Edge &edge = out.local_edges[e];
            if (!touched[edge.u] && !touched[edge.v]) {
                continue;
            }
            const double score = cost_after(front, edge.u, edge.v) +
                                 options.lookahead_weight * cost_after(window, edge.u, edge.v);
            if (best == out.local_edges.size() || score < best_score ||
                (score == best_score && last_swapped[e] < last_swapped[best])) {
                best = e;
                best_score = score;
            }
        }
        emit_swap(out.local_edges[best].u, out.local_edges[best].v);
        last_swapped[best] = step++;
        ++swaps_since_progress;
    }

    for (const Gate &g : measures) {
        routed.measure(l2p[g.q0], g.cbit);
    }
    out.final_layout = l2p;
    out.circuit = std::move(routed);
    out.depth = depth(out.circuit);
    return out;
}

}  // namespace cqcs
