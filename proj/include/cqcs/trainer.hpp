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
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "cqcs/allocator.hpp"
#include "cqcs/circuit.hpp"
#include "cqcs/reliability.hpp"
#include "cqcs/rng.hpp"
#include "cqcs/router.hpp"
#include "cqcs/simulator.hpp"
#include "cqcs/timing.hpp"
#include "cqcs/topology.hpp"

namespace cqcs {

struct SpsaConfig {
    double a = 3.0;
    double c = 0.1;
    /// Stability constant A; negative means 0.1 * max_iterations.
    double stability = -1.0;
    double alpha = 0.602;
    double gamma_exp = 0.101;
    size_t max_iterations = 500;
    /// Samples per objective evaluation (N).
    size_t samples = 1000;
    size_t moving_average = 10;
    size_t plateau_window = 30;
    double plateau_threshold = 0.002;
    /// Time to plateau: first time the moving average reaches this fraction
    /// of the final plateau ratio.
    double plateau_fraction = 0.95;

    double stability_constant() const;
    /// Throws std::invalid_argument on out-of-range settings.
    void validate() const;
};

using Objective = std::function<double(std::span<const double>)>;

struct SpsaStep {
    std::vector<double> params;
    double f_plus = 0.0;
    double f_minus = 0.0;
};

/// One ascent step at iteration k >= 0: Rademacher perturbation from rng,
/// exactly two calls to f.
SpsaStep spsa_step(std::span<const double> params, size_t k, const SpsaConfig &config, const Objective &f, Rng &rng);

/// Concurrent instances of one QAOA problem on a device.
struct TrainingContext {
    ProblemGraph problem;
    int optimum = 0;
    size_t layers = 1;
    /// Utilization-scaled profile used for simulation.
    NoiseProfile profile;
    AllocationResult allocation;
    /// Parametric routed templates, one per allocation.
    std::vector<RoutedCircuit> routed;
    IterationTiming timing;
    double utilization = 0.0;

    size_t instances() const { return routed.size(); }
};

struct ContextOptions {
    size_t layers = 1;
    size_t instances = 1;
    AllocationPolicy policy = AllocationPolicy::DepthPrioritized;
    RouterOptions router;
    LatencyModel latency;
    size_t workers = 1;
};

/// Allocates, routes and times the instances, and scales the noise by the
/// resulting utilization. The latency baseline is the single-instance
/// placement on the same device and policy. Throws std::runtime_error when
/// not even one instance fits.
TrainingContext prepare_context(const CouplingGraph &graph, const NoiseProfile &base_profile,
                                const PathMatrices &matrices, const ProblemGraph &problem, int optimum,
                                const ContextOptions &options);
TrainingContext prepare_context(const CouplingGraph &graph, const NoiseProfile &base_profile,
                                const ProblemGraph &problem, int optimum, const ContextOptions &options);

struct Evaluation {
    double ratio = 0.0;
    ShotBatch shots;
};

/// Samples every instance ceil(N/M) times at `params`. Instance i covers
/// global shot indices [i*s, (i+1)*s) of the stream `seed`.
Evaluation evaluate(const TrainingContext &context, std::span<const double> params, size_t samples, uint64_t seed,
                    size_t workers = 1);

enum class StopReason { Plateau, IterationCap };
std::string_view to_string(StopReason reason);

struct TraceRecord {
    size_t iteration = 0;  // 1-based
    double elapsed_us = 0.0;
    double ratio = 0.0;    // mean of the iteration's two evaluations
    std::vector<double> params;  // after the update
};

struct TrainingTrace {
    size_t layers = 1;
    std::vector<TraceRecord> records;
    StopReason reason = StopReason::IterationCap;
    double plateau_ratio = 0.0;
    double time_to_plateau_us = 0.0;
};

/// Trailing moving average of the record ratios, window `width`
/// (shorter at the start).
std::vector<double> moving_average(const TrainingTrace &trace, size_t width);

/// Final plateau ratio and time to plateau of a finished trace.
void summarize_trace(TrainingTrace &trace, const SpsaConfig &config);

/// Starting angles: beta in [0, pi/4), gamma in [0, pi/2).
std::vector<double> initial_parameters(size_t layers, uint64_t seed);

/// SPSA ascent from `initial` until plateau or the iteration cap. Iteration k
/// costs 2 ceil(N/M) T'_s + T_opt of modeled time.
TrainingTrace train(const TrainingContext &context, const SpsaConfig &config, const LatencyModel &latency,
                    std::span<const double> initial, uint64_t seed, size_t workers = 1);

/// iter,elapsed_us,approx_ratio,beta_0..,gamma_0..
void write_trace_csv(std::ostream &out, const TrainingTrace &trace);

}  // namespace cqcs
