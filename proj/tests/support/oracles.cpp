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

#include "support/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace cqcs::testing {

PathOracle enumerate_paths(const CouplingGraph &graph, const NoiseProfile &profile) {
    const size_t n = graph.num_qubits();
    PathOracle o;
    o.n = n;
    o.hops.assign(n * n, std::numeric_limits<uint64_t>::max());
    o.fidelity.assign(n * n, 0.0);
    std::vector<std::vector<std::pair<size_t, double>>> adj(n);
    for (size_t i = 0; i < profile.edges.size(); ++i) {
        const Edge e = profile.edges[i];
        const double f = 1.0 - profile.two_qubit_error[i];
        adj[e.u].push_back({e.v, f});
        adj[e.v].push_back({e.u, f});
    }
    std::vector<bool> on_path(n, false);
    for (size_t s = 0; s < n; ++s) {
        std::function<void(size_t, uint64_t, double)> dfs = [&](size_t v, uint64_t len, double fid) {
            auto &h = o.hops[s * n + v];
            h = std::min(h, len);
            auto &f = o.fidelity[s * n + v];
            f = std::max(f, fid);
            on_path[v] = true;
            for (auto [w, ef] : adj[v]) {
                if (!on_path[w]) {
                    dfs(w, len + 1, fid * ef);
                }
            }
            on_path[v] = false;
        };
        dfs(s, 0, 1.0);
    }
    return o;
}

int gray_code_max_cut(const ProblemGraph &problem) {
    const size_t n = problem.num_vars;
    std::vector<int> side(n, 0);
    int cut = 0;
    int best = 0;
    std::vector<std::vector<size_t>> adj(n);
    for (const Edge &e : problem.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (uint64_t step = 1; step < (uint64_t{1} << n); ++step) {
        const size_t flip = static_cast<size_t>(std::countr_zero(step));
        for (size_t w : adj[flip]) {
            cut += side[flip] == side[w] ? 1 : -1;
        }
        side[flip] ^= 1;
        best = std::max(best, cut);
    }
    return best;
}

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using C = std::complex<double>;

int bit(size_t k, size_t q) { return static_cast<int>((k >> q) & 1U); }

Mat single_qubit_full(size_t n, size_t q, const Eigen::Matrix2cd &g) {
    const size_t dim = size_t{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (size_t col = 0; col < dim; ++col) {
        for (int out = 0; out < 2; ++out) {
            const size_t row = (col & ~(size_t{1} << q)) | (static_cast<size_t>(out) << q);
            m(row, col) += g(out, bit(col, q));
        }
    }
    return m;
}

Mat permutation_full(size_t n, const std::function<size_t(size_t)> &f) {
    const size_t dim = size_t{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (size_t col = 0; col < dim; ++col) {
        m(f(col), col) = 1.0;
    }
    return m;
}

Mat gate_full(size_t n, const Gate &g) {
    const C i{0.0, 1.0};
    Eigen::Matrix2cd u;
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            u << s, s, s, -s;
            return single_qubit_full(n, g.q0, u);
        }
        case GateKind::RX: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            u << c, -i * s, -i * s, c;
            return single_qubit_full(n, g.q0, u);
        }
        case GateKind::RZ:
            u << std::exp(-i * (g.angle / 2)), 0, 0, std::exp(i * (g.angle / 2));
            return single_qubit_full(n, g.q0, u);
        case GateKind::CNOT:
            return permutation_full(n, [&](size_t k) { return bit(k, g.q0) ? k ^ (size_t{1} << g.q1) : k; });
        case GateKind::SWAP:
            return permutation_full(n, [&](size_t k) {
                const int a = bit(k, g.q0), b = bit(k, g.q1);
                return a == b ? k : k ^ (size_t{1} << g.q0) ^ (size_t{1} << g.q1);
            });
        case GateKind::MEASURE: break;
    }
    return Mat::Identity(size_t{1} << n, size_t{1} << n);
}

std::vector<double> probabilities(const Vec &psi) {
    std::vector<double> p(static_cast<size_t>(psi.size()));
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
        p[static_cast<size_t>(k)] = std::norm(psi(k));
    }
    return p;
}

}  // namespace

std::vector<double> dense_qaoa_distribution(const ProblemGraph &problem, const std::vector<double> &betas,
                                            const std::vector<double> &gammas) {
    const size_t n = problem.num_vars;
    const size_t dim = size_t{1} << n;
    Mat cost = Mat::Zero(dim, dim);
    for (size_t k = 0; k < dim; ++k) {
        double zz = 0.0;
        for (const Edge &e : problem.edges) {
            zz += (bit(k, e.u) == bit(k, e.v)) ? 1.0 : -1.0;
        }
        cost(k, k) = zz;
    }
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    Mat mixer = Mat::Zero(dim, dim);
    for (size_t q = 0; q < n; ++q) {
        mixer += single_qubit_full(n, q, x);
    }
    Vec psi = Vec::Constant(dim, C(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    const C i{0.0, 1.0};
    for (size_t k = 0; k < betas.size(); ++k) {
        Mat uc = (-i * gammas[k] * cost).exp();
        Mat ub = (-i * betas[k] * mixer).exp();
        psi = ub * (uc * psi);
    }
    return probabilities(psi);
}

std::vector<double> dense_circuit_distribution(const Circuit &circuit) {
    const size_t n = circuit.width();
    Vec psi = Vec::Zero(size_t{1} << n);
    psi(0) = 1.0;
    for (const Gate &g : circuit.gates()) {
        if (g.kind != GateKind::MEASURE) {
            psi = gate_full(n, g) * psi;
        }
    }
    return probabilities(psi);
}

double expected_ratio(const std::vector<double> &distribution, const ProblemGraph &problem, int optimum) {
    double e = 0.0;
    for (size_t k = 0; k < distribution.size(); ++k) {
        int cut = 0;
        for (const Edge &edge : problem.edges) {
            cut += bit(k, edge.u) != bit(k, edge.v);
        }
        e += distribution[k] * cut;
    }
    return e / optimum;
}

CouplingGraph random_connected_graph(size_t n, double extra_edge_probability, Rng &rng) {
    std::vector<Edge> edges;
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    for (size_t i = n; i-- > 1;) {
        std::swap(order[i], order[rng.index(i + 1)]);
    }
    auto add = [&](size_t a, size_t b) {
        Edge e{static_cast<Qubit>(std::min(a, b)), static_cast<Qubit>(std::max(a, b))};
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
            edges.push_back(e);
        }
    };
    for (size_t i = 1; i < n; ++i) {
        add(order[i], order[rng.index(i)]);
    }
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = a + 1; b < n; ++b) {
            if (rng.uniform() < extra_edge_probability) {
                add(a, b);
            }
        }
    }
    return CouplingGraph("random", n, edges);
}

Circuit random_circuit(size_t width, size_t gates, Rng &rng) {
    Circuit c(width);
    for (size_t k = 0; k < gates; ++k) {
        const auto a = static_cast<Qubit>(rng.index(width));
        auto b = width > 1 ? static_cast<Qubit>(rng.index(width - 1)) : a;
        if (b >= a) {
            ++b;
        }
        switch (rng.index(width > 1 ? 5 : 3)) {
            case 0: c.h(a); break;
            case 1: c.rx(a, rng.uniform(-std::numbers::pi, std::numbers::pi)); break;
            case 2: c.rz(a, rng.uniform(-std::numbers::pi, std::numbers::pi)); break;
            case 3: c.cnot(a, b); break;
            default: c.swap(a, b); break;
        }
    }
    for (size_t q = 0; q < width; ++q) {
        c.measure(static_cast<Qubit>(q), static_cast<uint32_t>(q));
    }
    return c;
}

bool within_sigmas(size_t observed, size_t n, double p, double k) {
    const double mean = static_cast<double>(n) * p;
    const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    return std::abs(static_cast<double>(observed) - mean) <= k * sd + 1e-9;
}

CapturedWarnings::CapturedWarnings() {
    set_warning_sink([this](const std::string &m) { messages_.push_back(m); });
}

CapturedWarnings::~CapturedWarnings() { set_warning_sink(nullptr); }

std::vector<double> to_logical(const std::vector<double> &by_position, const std::vector<Qubit> &layout) {
    std::vector<double> out(by_position.size(), 0.0);
    for (uint64_t y = 0; y < by_position.size(); ++y) {
        uint64_t x = 0;
        for (size_t q = 0; q < layout.size(); ++q) {
            x |= ((y >> layout[q]) & 1U) << q;
        }
        out[x] += by_position[y];
    }
    return out;
}

double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distribution sizes differ");
    }
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        s += std::abs(a[i] - b[i]);
    }
    return s / 2;
}

}  // namespace cqcs::testing
