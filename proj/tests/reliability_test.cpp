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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cqcs/reliability.hpp"
#include "support/oracles.hpp"

namespace cqcs {
namespace {

void expect_matches_oracle(const CouplingGraph &g, const NoiseProfile &p) {
    const PathMatrices fw = floyd_warshall(g, p);
    const testing::PathOracle oracle = testing::enumerate_paths(g, p);
    const size_t n = g.num_qubits();
    for (Qubit i = 0; i < n; ++i) {
        for (Qubit j = 0; j < n; ++j) {
            const uint64_t hops = oracle.hops[i * n + j];
            if (hops == std::numeric_limits<uint64_t>::max()) {
                EXPECT_EQ(fw.distance(i, j), kUnreachable);
            } else {
                EXPECT_EQ(fw.distance(i, j), hops) << i << "," << j;
            }
            const double want = oracle.fidelity[i * n + j];
            EXPECT_NEAR(fw.reliability(i, j), want, 1e-12 * std::max(1.0, want)) << i << "," << j;
        }
    }
}

TEST(FloydWarshall, MatchesPathEnumerationOnRandomGraphs) {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const size_t n = 2 + rng.index(7);
        const CouplingGraph g = testing::random_connected_graph(n, 0.3, rng);
        NoiseRanges wide;
        wide.two_qubit = {0.0, 0.5};
        const NoiseProfile p = sample_noise_profile(g, wide, NoiseModel::Pauli, rng.next());
        expect_matches_oracle(g, p);
    }
}

TEST(FloydWarshall, DisconnectedPairsAreUnreachable) {
    const CouplingGraph g("two", 5, {{0, 1}, {1, 2}, {3, 4}});
    const NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Pauli, 3);
    const PathMatrices fw = floyd_warshall(g, p);
    EXPECT_EQ(fw.distance(0, 4), kUnreachable);
    EXPECT_EQ(fw.reliability(0, 4), 0.0);
    EXPECT_EQ(fw.distance(0, 2), 2U);
    expect_matches_oracle(g, p);
}

TEST(FloydWarshall, DiagonalAndSymmetry) {
    const CouplingGraph g = grid_topology(4, 3);
    const NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Pauli, 8);
    const PathMatrices fw = floyd_warshall(g, p);
    for (Qubit i = 0; i < g.num_qubits(); ++i) {
        EXPECT_EQ(fw.distance(i, i), 0U);
        EXPECT_EQ(fw.reliability(i, i), 1.0);
        for (Qubit j = 0; j < g.num_qubits(); ++j) {
            EXPECT_EQ(fw.distance(i, j), fw.distance(j, i));
            EXPECT_DOUBLE_EQ(fw.reliability(i, j), fw.reliability(j, i));
            // Grid hop distance is Manhattan distance.
            const int dx = std::abs(static_cast<int>(i % 4) - static_cast<int>(j % 4));
            const int dy = std::abs(static_cast<int>(i / 4) - static_cast<int>(j / 4));
            EXPECT_EQ(fw.distance(i, j), static_cast<uint32_t>(dx + dy));
        }
    }
}

TEST(FloydWarshall, TriangleInequalities) {
    const CouplingGraph g = build_topology(ArchitectureSpec::parse("rochester"));
    const NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Pauli, 4);
    const PathMatrices fw = floyd_warshall(g, p);
    const size_t n = g.num_qubits();
    for (Qubit i = 0; i < n; ++i) {
        for (Qubit j = 0; j < n; ++j) {
            for (Qubit k = 0; k < n; k += 7) {
                EXPECT_LE(fw.distance(i, j), fw.distance(i, k) + fw.distance(k, j));
                EXPECT_GE(fw.reliability(i, j), fw.reliability(i, k) * fw.reliability(k, j) * (1 - 1e-12));
            }
        }
    }
}

TEST(FloydWarshall, NoiselessReliabilityIsOne) {
    const CouplingGraph g = build_topology(ArchitectureSpec::parse("sycamore"));
    const NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Noiseless, 1);
    const PathMatrices fw = floyd_warshall(g, p);
    for (double f : fw.fidelity) {
        EXPECT_EQ(f, 1.0);
    }
}

TEST(FloydWarshall, PrefersLongerReliablePath) {
    // Direct edge 0-2 is poor; the two-hop route through 1 is better.
    const CouplingGraph g("tri", 3, {{0, 1}, {1, 2}, {0, 2}});
    NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Pauli, 1);
    for (size_t i = 0; i < p.edges.size(); ++i) {
        p.two_qubit_error[i] = p.edges[i] == Edge{0, 2} ? 0.5 : 0.1;
    }
    const PathMatrices fw = floyd_warshall(g, p);
    EXPECT_EQ(fw.distance(0, 2), 1U);
    EXPECT_NEAR(fw.reliability(0, 2), 0.81, 1e-15);
}

}  // namespace
}  // namespace cqcs
