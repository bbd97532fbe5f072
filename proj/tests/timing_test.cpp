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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cqcs/timing.hpp"

namespace cqcs {
namespace {

TEST(Latency, EmptyCircuitCostsProcessingOnly) {
    const LatencyModel m;
    EXPECT_DOUBLE_EQ(sample_latency(Circuit(3), m), m.processing);
}

TEST(Latency, SlowestGatePerCycle) {
    const LatencyModel m;
    Circuit c(3);
    c.h(0).cnot(1, 2).rz(0, 0.1).measure(0, 0).measure(1, 1).measure(2, 2);
    // cycle 1: H and CNOT, cycle 2: RZ, then measurement
    EXPECT_DOUBLE_EQ(sample_latency(c, m),
                     m.two_qubit_cycle + m.single_qubit_cycle + m.measurement + m.processing);
    Circuit s(2);
    s.swap(0, 1);
    LatencyModel slow_swap;
    slow_swap.swap_cycle = 0.9;
    EXPECT_DOUBLE_EQ(sample_latency(s, slow_swap), 0.9 + slow_swap.processing);
}

TEST(Latency, ModelValidation) {
    LatencyModel m;
    EXPECT_NO_THROW(m.validate());
    m.measurement = -1;
    EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(IterationTiming, RelativeLatency) {
    const std::vector<double> lat(60, 1.67 * 20.0);
    const IterationTiming t = iteration_timing(lat, 20.0);
    EXPECT_EQ(t.instances, 60U);
    EXPECT_NEAR(t.slowdown, 1.67, 1e-12);
    EXPECT_NEAR(t.relative_latency, 0.02783, 1e-5);

    const std::vector<double> mixed{21.0, 25.0, 22.0};
    const IterationTiming u = iteration_timing(mixed, 20.0);
    EXPECT_DOUBLE_EQ(u.slowest_latency, 25.0);
    EXPECT_DOUBLE_EQ(u.slowdown, 1.25);
    EXPECT_DOUBLE_EQ(u.relative_latency, 1.25 / 3);

    EXPECT_THROW(iteration_timing(std::vector<double>{}, 20.0), std::invalid_argument);
    EXPECT_THROW(iteration_timing(mixed, 0.0), std::invalid_argument);
}

TEST(IterationTiming, ShotsAndElapsed) {
    EXPECT_EQ(shots_per_instance(1000, 1), 1000U);
    EXPECT_EQ(shots_per_instance(1000, 3), 334U);
    EXPECT_EQ(shots_per_instance(1000, 8), 125U);
    const LatencyModel m;
    EXPECT_DOUBLE_EQ(iteration_elapsed(25.0, 1000, 4, m), 2 * 250 * 25.0 + m.optimizer);
}

TEST(IterationTiming, RecordKeys) {
    const IterationTiming t = iteration_timing(std::vector<double>{22.0, 24.0}, 20.0);
    const auto j = nlohmann::json::parse(timing_record(t, 1.8));
    EXPECT_EQ(j["M"], 2);
    EXPECT_DOUBLE_EQ(j["Ts_us"].get<double>(), 20.0);
    EXPECT_DOUBLE_EQ(j["Ts_prime_us"].get<double>(), 24.0);
    EXPECT_DOUBLE_EQ(j["slowdown"].get<double>(), 1.2);
    EXPECT_DOUBLE_EQ(j["relative_iter_latency"].get<double>(), 0.6);
    EXPECT_DOUBLE_EQ(j["speedup_measured"].get<double>(), 1.8);
}

TEST(Success, ProductOfFidelities) {
    const std::vector<GateCategory> one{{"cx", 100, 0.99}};
    EXPECT_NEAR(estimate_success_probability(one), 0.3660, 1e-4);
    const std::vector<GateCategory> two{{"cx", 100, 0.99}, {"meas", 10, 0.97}};
    EXPECT_NEAR(estimate_success_probability(two), std::pow(0.99, 100) * std::pow(0.97, 10), 1e-15);
    EXPECT_DOUBLE_EQ(estimate_success_probability(std::vector<GateCategory>{}), 1.0);
    EXPECT_THROW(estimate_success_probability(std::vector<GateCategory>{{"x", 1, 0.0}}), std::invalid_argument);
    EXPECT_THROW(estimate_success_probability(std::vector<GateCategory>{{"x", 1, 1.5}}), std::invalid_argument);
}

TEST(Success, MonotoneInCountsAndFidelity) {
    double prev = 1.0;
    for (size_t n = 1; n < 50; ++n) {
        const double p = estimate_success_probability(std::vector<GateCategory>{{"cx", n, 0.995}});
        EXPECT_LT(p, prev);
        EXPECT_GT(estimate_success_probability(std::vector<GateCategory>{{"cx", n, 0.999}}), p);
        prev = p;
    }
}

TEST(Success, LargeQaoaIsHopeless) {
    const GateCounts g = qaoa_gate_counts(300, 3, 1);
    EXPECT_EQ(g.two_qubit, 900U);
    EXPECT_EQ(g.single_qubit, 300U + 450 + 300);
    EXPECT_EQ(g.measurement, 300U);
    const std::vector<GateCategory> cats{
        {"1q", g.single_qubit, 0.999}, {"2q", g.two_qubit, 0.99}, {"meas", g.measurement, 0.97}};
    EXPECT_LT(estimate_success_probability(cats), 0.01);
}

TEST(Counts, MatchBuiltCircuit) {
    const ProblemGraph p = random_regular_problem(10, 3, 3);
    const GateCounts built = count_gates(build_qaoa(p, {{0.1, 0.2}, {0.3, 0.4}}));
    const GateCounts formula = qaoa_gate_counts(10, 3, 2);
    EXPECT_EQ(built.single_qubit, formula.single_qubit);
    EXPECT_EQ(built.two_qubit, formula.two_qubit);
    EXPECT_EQ(built.measurement, formula.measurement);
    EXPECT_THROW(qaoa_gate_counts(5, 3, 1), std::invalid_argument);
}

}  // namespace
}  // namespace cqcs
