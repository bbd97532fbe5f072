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

#include "cqcs/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "cqcs/error.hpp"
#include "cqcs/parallel.hpp"

namespace cqcs {

AllocationPolicy parse_allocation_policy(std::string_view text) {
    if (text == "noise") return AllocationPolicy::NoisePrioritized;
    if (text == "depth") return AllocationPolicy::DepthPrioritized;
    throw InputError(fmt::format("unknown allocation policy '{}'", text));
}

std::string_view to_string(AllocationPolicy policy) {
    return policy == AllocationPolicy::NoisePrioritized ? "noise" : "depth";
}

namespace {

// Heuristic sums are compared with a small relative tolerance so that
// floating-point summation order cannot decide a tie.
bool greater_than(double a, double b) {
    return a > b + 1e-12 * std::max(1.0, std::abs(b));
}

double inverse_distance(uint32_t hops) {
    return hops == kUnreachable || hops == 0 ? 0.0 : 1.0 / static_cast<double>(hops);
}

struct CandidateKey {
    double primary = 0.0;
    double secondary = 0.0;
};

bool better(const CandidateKey &a, const CandidateKey &b) {
    if (greater_than(a.primary, b.primary)) return true;
    if (greater_than(b.primary, a.primary)) return false;
    return greater_than(a.secondary, b.secondary);
}

double subgraph_score(const std::vector<Qubit> &s, const PathMatrices &m, const NoiseProfile &profile,
                      AllocationPolicy policy) {
    double mean_m = 0.0;
    for (Qubit q : s) {
        mean_m += profile.measurement_reliability(q);
    }
    mean_m /= static_cast<double>(s.size());
    if (s.size() == 1) {
        return mean_m;
    }
    double pair_sum = 0.0;
    for (size_t a = 0; a < s.size(); ++a) {
        for (size_t b = a + 1; b < s.size(); ++b) {
            pair_sum += policy == AllocationPolicy::NoisePrioritized ? m.reliability(s[a], s[b])
                                                                     : inverse_distance(m.distance(s[a], s[b]));
        }
    }
    const double pairs = static_cast<double>(s.size() * (s.size() - 1) / 2);
    return pair_sum / pairs * mean_m;
}

}  // namespace

std::optional<Allocation> grow_subgraph(const CouplingGraph &graph, Qubit start, size_t size,
                                        const PathMatrices &matrices, const NoiseProfile &profile,
                                        std::span<const unsigned char> available, AllocationPolicy policy) {
    const size_t n = graph.num_qubits();
    if (size == 0) {
        throw std::invalid_argument("subgraph size must be at least 1");
    }
    if (start >= n || !available[start]) {
        throw std::invalid_argument(fmt::format("start qubit {} is not available", start));
    }
    std::vector<Qubit> s{start};
    std::vector<unsigned char> in_s(n, 0);
    in_s[start] = 1;
    std::vector<Qubit> candidates;

    while (s.size() < size) {
        candidates.clear();
        for (Qubit i : s) {
            for (Qubit j : graph.neighbors(i)) {
                if (available[j] && !in_s[j]) {
                    candidates.push_back(j);
                }
            }
        }
        if (candidates.empty()) {
            return std::nullopt;
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        Qubit best = candidates.front();
        CandidateKey best_key{-1.0, -1.0};
        for (Qubit j : candidates) {
            const double mj = profile.measurement_reliability(j);
            double reliability_sum = 0.0;
            double inverse_distance_sum = 0.0;
            for (Qubit i : s) {
                reliability_sum += matrices.reliability(i, j);
                inverse_distance_sum += inverse_distance(matrices.distance(i, j));
            }
            CandidateKey key;
            if (policy == AllocationPolicy::NoisePrioritized) {
                key.primary = reliability_sum * mj;
            } else {
                key.primary = inverse_distance_sum * mj;
                key.secondary = reliability_sum * mj;
            }
            // Candidates are visited in ascending order, so strict improvement
            // keeps the lowest index on ties.
            if (better(key, best_key)) {
                best_key = key;
                best = j;
            }
        }
        s.push_back(best);
        in_s[best] = 1;
    }

    Allocation a;
    a.physical_qubits = s;
    a.score = subgraph_score(s, matrices, profile, policy);
    for (const Edge &e : graph.edges()) {
        if (in_s[e.u] && in_s[e.v]) {
            a.induced_edges.push_back(e);
        }
    }
    return a;
}

namespace {

struct Search {
    const CouplingGraph &graph;
    const PathMatrices &matrices;
    const NoiseProfile &profile;
    size_t width;
    AllocationPolicy policy;
    size_t workers;

    std::vector<std::optional<Allocation>> grow_all(const std::vector<unsigned char> &available) const {
        std::vector<std::optional<Allocation>> trials(graph.num_qubits());
        parallel_for(graph.num_qubits(), workers, [&](size_t q) {
            if (available[q]) {
                trials[q] = grow_subgraph(graph, static_cast<Qubit>(q), width, matrices, profile, available, policy);
            }
        });
        return trials;
    }

    // Best-scoring growth, ties to the lowest start.
    std::optional<Allocation> best(const std::vector<unsigned char> &available) const {
        std::optional<Allocation> out;
        for (auto &t : grow_all(available)) {
            if (t && (!out || greater_than(t->score, out->score))) {
                out = std::move(t);
            }
        }
        return out;
    }

    std::vector<Allocation> greedy(std::vector<unsigned char> available, size_t count) const {
        std::vector<Allocation> out;
        while (out.size() < count) {
            auto a = best(available);
            if (!a) {
                break;
            }
            for (Qubit q : a->physical_qubits) {
                available[q] = 0;
            }
            out.push_back(std::move(*a));
        }
        return out;
    }

    // Distinct grown subgraphs, best score first.
    std::vector<Allocation> ranked(const std::vector<unsigned char> &available, size_t limit) const {
        std::vector<Allocation> all;
        for (auto &t : grow_all(available)) {
            if (t) {
                all.push_back(std::move(*t));
            }
        }
        std::stable_sort(all.begin(), all.end(), [](const Allocation &a, const Allocation &b) {
            return greater_than(a.score, b.score);
        });
        std::vector<Allocation> out;
        std::vector<std::vector<Qubit>> seen;
        for (auto &a : all) {
            std::vector<Qubit> key = a.physical_qubits;
            std::sort(key.begin(), key.end());
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
                continue;
            }
            seen.push_back(std::move(key));
            out.push_back(std::move(a));
            if (out.size() == limit) {
                break;
            }
        }
        return out;
    }
};

constexpr size_t kLookaheadCandidates = 16;

// Greedy placement that, at each step, takes the best-ranked subgraph whose
// removal still lets greedy placement finish the most remaining instances.
std::vector<Allocation> lookahead(const Search &search, size_t count) {
    std::vector<unsigned char> available(search.graph.num_qubits(), 1);
    std::vector<Allocation> out;
    while (out.size() < count) {
        std::vector<Allocation> cands = search.ranked(available, kLookaheadCandidates);
        if (cands.empty()) {
            break;
        }
        const size_t remaining = count - out.size() - 1;
        size_t pick = 0;
        size_t pick_total = 0;
        for (size_t i = 0; i < cands.size(); ++i) {
            std::vector<unsigned char> rest = available;
            for (Qubit q : cands[i].physical_qubits) {
                rest[q] = 0;
            }
            const size_t total = search.greedy(std::move(rest), remaining).size();
            if (i == 0 || total > pick_total) {
                pick = i;
                pick_total = total;
            }
            if (total == remaining) {
                break;
            }
        }
        for (Qubit q : cands[pick].physical_qubits) {
            available[q] = 0;
        }
        out.push_back(std::move(cands[pick]));
    }
    return out;
}

}  // namespace

AllocationResult allocate_instances(const CouplingGraph &graph, const PathMatrices &matrices,
                                    const NoiseProfile &profile, size_t width, size_t instances,
                                    AllocationPolicy policy, size_t workers) {
    if (instances == 0) {
        throw std::invalid_argument("at least one instance is required");
    }
    if (width == 0 || width > graph.num_qubits()) {
        throw std::invalid_argument(
            fmt::format("width {} does not fit a {}-qubit topology", width, graph.num_qubits()));
    }
    const Search search{graph, matrices, profile, width, policy, workers};
    AllocationResult result;
    result.requested = instances;
    result.allocations = search.greedy(std::vector<unsigned char>(graph.num_qubits(), 1), instances);

    // A greedy pick can strand the remaining qubits in fragments too small
    // for another instance. Retry with lookahead unless capacity rules it out.
    const size_t capacity = graph.num_qubits() / width;
    if (result.achieved() < std::min(instances, capacity)) {
        std::vector<Allocation> alt = lookahead(search, std::min(instances, capacity));
        if (alt.size() > result.achieved()) {
            result.allocations = std::move(alt);
        }
    }
    std::stable_sort(result.allocations.begin(), result.allocations.end(),
                     [](const Allocation &a, const Allocation &b) { return a.score > b.score; });
    for (size_t k = 0; k < result.allocations.size(); ++k) {
        result.allocations[k].instance_id = k;
    }
    if (result.shortfall() > 0) {
        warn(fmt::format("{}: only {} of {} instances of width {} could be mapped", graph.name(),
                         result.achieved(), instances, width));
    }
    return result;
}

std::string format_allocation(const Allocation &allocation) {
    return fmt::format("inst {}: {} ; score {}", allocation.instance_id, fmt::join(allocation.physical_qubits, " "),
                       allocation.score);
}

bool is_connected_subgraph(const CouplingGraph &graph, std::span<const Qubit> qubits) {
    if (qubits.empty()) {
        return false;
    }
    std::vector<unsigned char> member(graph.num_qubits(), 0);
    for (Qubit q : qubits) {
        if (q >= graph.num_qubits() || member[q]) {
            return false;
        }
        member[q] = 1;
    }
    std::vector<Qubit> stack{qubits.front()};
    member[qubits.front()] = 2;
    size_t reached = 1;
    while (!stack.empty()) {
        Qubit q = stack.back();
        stack.pop_back();
        for (Qubit n : graph.neighbors(q)) {
            if (member[n] == 1) {
                member[n] = 2;
                ++reached;
                stack.push_back(n);
            }
        }
    }
    return reached == qubits.size();
}

}  // namespace cqcs
