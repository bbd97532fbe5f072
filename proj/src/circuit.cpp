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

#include "cqcs/circuit.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "cqcs/error.hpp"
#include "cqcs/rng.hpp"

namespace cqcs {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::RX: return "rx";
        case GateKind::RZ: return "rz";
        case GateKind::CNOT: return "cx";
        case GateKind::SWAP: return "swap";
        case GateKind::MEASURE: return "measure";
    }
    return "?";
}

Circuit &Circuit::h(Qubit q) { return append({.kind = GateKind::H, .q0 = q}); }
Circuit &Circuit::rx(Qubit q, double angle) { return append({.kind = GateKind::RX, .q0 = q, .angle = angle}); }
Circuit &Circuit::rz(Qubit q, double angle) { return append({.kind = GateKind::RZ, .q0 = q, .angle = angle}); }
Circuit &Circuit::cnot(Qubit c, Qubit t) { return append({.kind = GateKind::CNOT, .q0 = c, .q1 = t}); }
Circuit &Circuit::swap(Qubit a, Qubit b) { return append({.kind = GateKind::SWAP, .q0 = a, .q1 = b}); }
Circuit &Circuit::measure(Qubit q, uint32_t cbit) {
    return append({.kind = GateKind::MEASURE, .q0 = q, .cbit = cbit});
}

Circuit &Circuit::append(const Gate &gate) {
    if (gate.q0 >= width_ || (gate.is_two_qubit() && gate.q1 >= width_)) {
        throw std::invalid_argument(fmt::format("{} gate on qubit outside width {}", to_string(gate.kind), width_));
    }
    if (gate.is_two_qubit() && gate.q0 == gate.q1) {
        throw std::invalid_argument(fmt::format("{} gate with repeated operand {}", to_string(gate.kind), gate.q0));
    }
    gates_.push_back(gate);
    return *this;
}

void Circuit::validate() const {
    std::vector<bool> measured(width_, false);
    for (const Gate &g : gates_) {
        if (measured[g.q0] || (g.is_two_qubit() && measured[g.q1])) {
            throw std::invalid_argument(fmt::format("qubit used after measurement by {}", to_string(g.kind)));
        }
        if (g.kind == GateKind::MEASURE) {
            measured[g.q0] = true;
        }
    }
}

std::vector<std::vector<size_t>> layer_circuit(const Circuit &circuit) {
    std::vector<size_t> next_free(circuit.width(), 0);
    std::vector<std::vector<size_t>> layers;
    std::vector<size_t> measures;
    const auto &gates = circuit.gates();
    for (size_t i = 0; i < gates.size(); ++i) {
        const Gate &g = gates[i];
        if (g.kind == GateKind::MEASURE) {
            measures.push_back(i);
            continue;
        }
        size_t cycle = next_free[g.q0];
        if (g.is_two_qubit()) {
            cycle = std::max(cycle, next_free[g.q1]);
        }
        if (cycle >= layers.size()) {
            layers.resize(cycle + 1);
        }
        layers[cycle].push_back(i);
        next_free[g.q0] = cycle + 1;
        if (g.is_two_qubit()) {
            next_free[g.q1] = cycle + 1;
        }
    }
    if (!measures.empty()) {
        layers.push_back(std::move(measures));
    }
    return layers;
}

Circuit bind_parameters(const Circuit &circuit, std::span<const double> values) {
    Circuit out(circuit.width());
    for (Gate g : circuit.gates()) {
        if (g.param >= 0) {
            if (static_cast<size_t>(g.param) >= values.size()) {
                throw std::invalid_argument(fmt::format("parameter {} not bound", g.param));
            }
            g.angle = g.param_scale * values[static_cast<size_t>(g.param)];
        }
        out.append(g);
    }
    return out;
}

void ProblemGraph::validate() const {
    if (num_vars < 2) {
        throw std::invalid_argument("problem graph needs at least two variables");
    }
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].u == sorted[i].v || sorted[i].v >= num_vars) {
            throw std::invalid_argument("problem graph edge is a self loop or out of range");
        }
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw std::invalid_argument("problem graph has a duplicate edge");
        }
    }
}

ProblemGraph read_problem_graph(const std::filesystem::path &path) {
    CouplingGraph g = read_edge_list_file(path);
    ProblemGraph p{.num_vars = g.num_qubits(), .edges = g.edges()};
    try {
        p.validate();
    } catch (const std::invalid_argument &e) {
        throw InputError(fmt::format("{}: {}", path.string(), e.what()));
    }
    std::vector<size_t> degree(p.num_vars, 0);
    for (const Edge &e : p.edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    if (std::all_of(degree.begin(), degree.end(), [&](size_t d) { return d == degree[0]; })) {
        p.regularity = static_cast<int>(degree[0]);
    }
    return p;
}

std::vector<double> QaoaParams::flatten() const {
    std::vector<double> v(betas);
    v.insert(v.end(), gammas.begin(), gammas.end());
    return v;
}

QaoaParams QaoaParams::from_flat(std::span<const double> values) {
    if (values.empty() || values.size() % 2 != 0) {
        throw std::invalid_argument("flat QAOA parameter vector must have even, nonzero length");
    }
    const size_t p = values.size() / 2;
    return {std::vector<double>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(p)),
            std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(p), values.end())};
}

Circuit build_qaoa_template(const ProblemGraph &problem, size_t p) {
    if (p == 0) {
        throw std::invalid_argument("QAOA needs p >= 1");
    }
    const size_t n = problem.num_vars;
    Circuit c(n);
    for (Qubit q = 0; q < n; ++q) {
        c.h(q);
    }
    for (size_t k = 0; k < p; ++k) {
        for (const Edge &e : problem.edges) {
            c.cnot(e.u, e.v);
            c.append({.kind = GateKind::RZ, .q0 = e.v, .param = static_cast<int>(p + k), .param_scale = 2.0});
            c.cnot(e.u, e.v);
        }
        for (Qubit q = 0; q < n; ++q) {
            c.append({.kind = GateKind::RX, .q0 = q, .param = static_cast<int>(k), .param_scale = 2.0});
        }
    }
    for (Qubit q = 0; q < n; ++q) {
        c.measure(q, q);
    }
    return c;
}

Circuit build_qaoa(const ProblemGraph &problem, const QaoaParams &params) {
    if (params.betas.size() != params.gammas.size() || params.betas.empty()) {
        throw std::invalid_argument("QAOA parameters need |betas| = |gammas| >= 1");
    }
    const auto flat = params.flatten();
    return bind_parameters(build_qaoa_template(problem, params.p()), flat);
}

namespace {

bool connected(size_t n, const std::vector<Edge> &edges) {
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    size_t components = n;
    for (const Edge &e : edges) {
        size_t a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

}  // namespace

ProblemGraph random_regular_problem(size_t n, size_t degree, uint64_t seed) {
    if (n < 2 || degree == 0 || degree >= n || (n * degree) % 2 != 0) {
        throw std::invalid_argument(fmt::format("no simple {}-regular graph on {} vertices", degree, n));
    }
    Rng rng(seed);
    std::vector<Qubit> points(n * degree);
    constexpr int kMaxAttempts = 100000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        for (size_t i = 0; i < points.size(); ++i) {
            points[i] = static_cast<Qubit>(i / degree);
        }
        // Fisher-Yates with the portable index draw.
        for (size_t i = points.size() - 1; i > 0; --i) {
            std::swap(points[i], points[rng.index(i + 1)]);
        }
        std::vector<Edge> edges;
        bool ok = true;
        for (size_t i = 0; i < points.size(); i += 2) {
            if (points[i] == points[i + 1]) {
                ok = false;
                break;
            }
            edges.emplace_back(points[i], points[i + 1]);
        }
        if (!ok) {
            continue;
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end() || !connected(n, edges)) {
            continue;
        }
        return {.num_vars = n, .edges = std::move(edges), .regularity = static_cast<int>(degree)};
    }
    throw std::runtime_error("random regular graph sampling did not converge");
}

int cut_value(const ProblemGraph &problem, std::string_view bits) {
    if (bits.size() != problem.num_vars) {
        throw std::invalid_argument(
            fmt::format("bitstring length {} does not match {} variables", bits.size(), problem.num_vars));
    }
    int cut = 0;
    for (const Edge &e : problem.edges) {
        cut += bits[e.u] != bits[e.v];
    }
    return cut;
}

int cut_value(const ProblemGraph &problem, uint64_t assignment) {
    int cut = 0;
    for (const Edge &e : problem.edges) {
        cut += static_cast<int>(((assignment >> e.u) ^ (assignment >> e.v)) & 1U);
    }
    return cut;
}

int max_cut_brute_force(const ProblemGraph &problem) {
    const size_t n = problem.num_vars;
    if (n > kMaxBruteForceVars) {
        throw std::invalid_argument(fmt::format("brute-force max cut capped at {} variables", kMaxBruteForceVars));
    }
    // A cut and its complement score the same, so pin the last variable to 0.
    const uint64_t count = uint64_t{1} << (n - 1);
    int best = 0;
    for (uint64_t mask = 0; mask < count; ++mask) {
        best = std::max(best, cut_value(problem, mask));
    }
    return best;
}

double approximation_ratio(std::span<const uint64_t> samples, const ProblemGraph &problem, int optimum) {
    if (samples.empty()) {
        throw std::invalid_argument("approximation ratio of an empty sample set");
    }
    if (optimum <= 0) {
        throw std::invalid_argument("approximation ratio needs a positive optimum");
    }
    int64_t total = 0;
    for (uint64_t s : samples) {
        total += cut_value(problem, s);
    }
    return static_cast<double>(total) / static_cast<double>(samples.size()) / optimum;
}

}  // namespace cqcs
