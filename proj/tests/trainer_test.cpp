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
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "cqcs/trainer.hpp"
#include "support/oracles.hpp"

namespace cqcs {
namespace {

const ProblemGraph kRing{.num_vars = 4, .edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, .regularity = 2};

ContextOptions context_options(size_t instances) {
    ContextOptions o;
    o.instances = instances;
    return o;
}

TEST(Spsa, LinearObjectiveInOneDimensionIsExact) {
    SpsaConfig cfg;
    cfg.max_iterations = 100;
    const double w = 0.7;
    for (size_t k : {0U, 5U, 40U}) {
        Rng rng(k);
        std::vector<std::vector<double>> calls;
        const Objective f = [&](std::span<const double> x) {
            calls.emplace_back(x.begin(), x.end());
            return w * x[0];
        };
        const std::vector<double> x0{0.25};
        const SpsaStep step = spsa_step(x0, k, cfg, f, rng);
        ASSERT_EQ(calls.size(), 2U);
        const double ck = cfg.c / std::pow(k + 1.0, cfg.gamma_exp);
        const double ak = cfg.a / std::pow(k + 1.0 + 0.1 * 100, cfg.alpha);
        EXPECT_NEAR(std::abs(calls[0][0] - x0[0]), ck, 1e-15);
        EXPECT_NEAR(calls[0][0] + calls[1][0], 2 * x0[0], 1e-15);
        EXPECT_NEAR(step.params[0], x0[0] + ak * w, 1e-12);
    }
}

TEST(Spsa, LinearObjectiveGradientIsUnbiased) {
    SpsaConfig cfg;
    const std::vector<double> w{0.5, -0.2, 0.1};
    const Objective f = [&](std::span<const double> x) { return w[0] * x[0] + w[1] * x[1] + w[2] * x[2]; };
    Rng rng(8);
    const double ak = cfg.a / std::pow(1.0 + cfg.stability_constant(), cfg.alpha);
    std::vector<double> mean(3, 0.0);
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        const SpsaStep s = spsa_step(std::vector<double>(3, 0.0), 0, cfg, f, rng);
        for (size_t i = 0; i < 3; ++i) {
            mean[i] += s.params[i] / ak / trials;
        }
    }
    for (size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(mean[i], w[i], 0.02);
    }
}

TEST(Spsa, ClimbsQuadratic) {
    SpsaConfig cfg;
    cfg.a = 0.5;
    Rng rng(4);
    const Objective f = [](std::span<const double> x) {
        return -(x[0] - 1.0) * (x[0] - 1.0) - (x[1] + 0.5) * (x[1] + 0.5);
    };
    std::vector<double> x{0.0, 0.0};
    for (size_t k = 0; k < 300; ++k) {
        x = spsa_step(x, k, cfg, f, rng).params;
    }
    EXPECT_NEAR(x[0], 1.0, 0.05);
    EXPECT_NEAR(x[1], -0.5, 0.05);
}

TEST(Spsa, ConfigValidation) {
    SpsaConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_DOUBLE_EQ(cfg.stability_constant(), 50.0);
    cfg.stability = 7;
    EXPECT_DOUBLE_EQ(cfg.stability_constant(), 7.0);
    cfg.alpha = 1.5;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.samples = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Initial, RangesAndDeterminism) {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        const auto p = initial_parameters(3, seed);
        ASSERT_EQ(p.size(), 6U);
        for (size_t k = 0; k < 3; ++k) {
            EXPECT_GE(p[k], 0.0);
            EXPECT_LT(p[k], std::numbers::pi / 4);
            EXPECT_GE(p[3 + k], 0.0);
            EXPECT_LT(p[3 + k], std::numbers::pi / 2);
        }
        EXPECT_EQ(p, initial_parameters(3, seed));
    }
}

TEST(Context, SplitsSamplesAcrossInstances) {
    const CouplingGraph g = grid_topology(4, 3);
    const NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Noiseless, 1);
    const TrainingContext ctx = prepare_context(g, p, kRing, 4, context_options(3));
    ASSERT_EQ(ctx.instances(), 3U);
    EXPECT_DOUBLE_EQ(ctx.utilization, 1.0);
    EXPECT_EQ(shots_per_instance(1000, 3), 334U);
    const Evaluation e = evaluate(ctx, std::vector<double>{0.3, 0.6}, 1000, 5);
    EXPECT_EQ(e.shots.size(), 1002U);
    EXPECT_GE(e.ratio, 0.0);
    EXPECT_LE(e.ratio, 1.0);
    EXPECT_EQ(ctx.timing.instances, 3U);
    EXPECT_GE(ctx.timing.slowest_latency, ctx.timing.baseline_latency * 0.5);
}

TEST(Context, RejectsProblemWiderThanDevice) {
    const CouplingGraph g = grid_topology(2, 2);
    const NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Pauli, 1);
    const ProblemGraph wide = random_regular_problem(6, 3, 1);
    EXPECT_THROW(prepare_context(g, p, wide, max_cut_brute_force(wide), {}), std::runtime_error);
}

TEST(Train, FourQubitRingReachesGridSearchOptimum) {
    // Best p = 1 expected ratio on a 120 x 120 grid of (beta, gamma).
    double best = 0.0;
    for (int i = 0; i < 120; ++i) {
        for (int j = 0; j < 120; ++j) {
            const double beta = std::numbers::pi / 2 * i / 120, gamma = std::numbers::pi * j / 120;
            best = std::max(best, testing::expected_ratio(testing::dense_qaoa_distribution(kRing, {beta}, {gamma}),
                                                          kRing, 4));
        }
    }
    EXPECT_NEAR(best, 0.75, 1e-3);

    const CouplingGraph g = grid_topology(2, 2);
    const NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Noiseless, 1);
    const TrainingContext ctx = prepare_context(g, p, kRing, 4, {});
    SpsaConfig cfg;
    cfg.samples = 2000;
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        const TrainingTrace t = train(ctx, cfg, {}, initial_parameters(1, seed), seed);
        const auto &final = t.records.back().params;
        const double reached =
            testing::expected_ratio(testing::dense_qaoa_distribution(kRing, {final[0]}, {final[1]}), kRing, 4);
        EXPECT_GT(reached, best - 0.02) << "seed " << seed;
        EXPECT_NEAR(t.plateau_ratio, reached, 0.03) << "seed " << seed;
    }
}

TEST(Train, ElapsedTimeFollowsIterationModel) {
    const CouplingGraph g = grid_topology(4, 3);
    const NoiseProfile p = sample_noise_profile(g, {}, NoiseModel::Noiseless, 1);
    const TrainingContext ctx = prepare_context(g, p, kRing, 4, context_options(3));
    SpsaConfig cfg;
    cfg.samples = 300;
    cfg.max_iterations = 40;
    const LatencyModel lat;
    const TrainingTrace t = train(ctx, cfg, lat, initial_parameters(1, 2), 2);
    ASSERT_FALSE(t.records.empty());
    const double per = 2 * 100 * ctx.timing.slowest_latency + lat.optimizer;
    EXPECT_DOUBLE_EQ(iteration_elapsed(ctx.timing.slowest_latency, 300, 3, lat), per);
    for (size_t k = 0; k < t.records.size(); ++k) {
        EXPECT_EQ(t.records[k].iteration, k + 1);
        EXPECT_NEAR(t.records[k].elapsed_us, per * (k + 1), 1e-6);
    }
    EXPECT_LE(t.records.size(), 40U);
    const TrainingTrace again = train(ctx, cfg, lat, initial_parameters(1, 2), 2);
    ASSERT_EQ(again.records.size(), t.records.size());
    EXPECT_EQ(again.records.back().params, t.records.back().params);
}

TEST(Trace, MovingAverageAndPlateauSummary) {
    TrainingTrace t;
    for (size_t k = 0; k < 20; ++k) {
        t.records.push_back({.iteration = k + 1, .elapsed_us = 10.0 * (k + 1), .ratio = k < 10 ? 0.1 * k : 1.0, .params = {}});
    }
    const auto ma = moving_average(t, 4);
    ASSERT_EQ(ma.size(), 20U);
    EXPECT_DOUBLE_EQ(ma[0], 0.0);
    EXPECT_DOUBLE_EQ(ma[1], 0.05);
    EXPECT_DOUBLE_EQ(ma[19], 1.0);
    SpsaConfig cfg;
    cfg.moving_average = 4;
    cfg.plateau_fraction = 0.95;
    summarize_trace(t, cfg);
    EXPECT_DOUBLE_EQ(t.plateau_ratio, 1.0);
    // iteration 12 averages 0.925, iteration 13 0.975
    EXPECT_DOUBLE_EQ(t.time_to_plateau_us, 130.0);
}

TEST(Trace, CsvLayout) {
    TrainingTrace t;
    t.layers = 2;
    t.records.push_back({.iteration = 1, .elapsed_us = 12.5, .ratio = 0.6, .params = {0.1, 0.2, 0.3, 0.4}});
    std::ostringstream out;
    write_trace_csv(out, t);
    EXPECT_EQ(out.str(), "iter,elapsed_us,approx_ratio,beta_0,beta_1,gamma_0,gamma_1\n1,12.5,0.6,0.1,0.2,0.3,0.4\n");
}

}  // namespace
}  // namespace cqcs
