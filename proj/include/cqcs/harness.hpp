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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cqcs/allocator.hpp"
#include "cqcs/router.hpp"
#include "cqcs/timing.hpp"
#include "cqcs/topology.hpp"
#include "cqcs/trainer.hpp"

namespace cqcs {

struct ExperimentConfig {
    ArchitectureSpec arch = ArchitectureSpec::parse("grid:30x30");
    std::filesystem::path data_dir = default_data_dir();
    std::vector<NoiseModel> noise_models{NoiseModel::Noiseless};
    NoiseRanges ranges;
    ConcurrencyFactors crosstalk;
    std::vector<AllocationPolicy> policies{AllocationPolicy::DepthPrioritized};
    /// Requested concurrent instances; M = 1 is always run as the baseline.
    std::vector<size_t> instances{1};
    size_t width = 12;
    size_t degree = 3;
    /// Problem graph file; empty means a random regular graph of `width`.
    std::filesystem::path graph;
    std::vector<size_t> layers{1};
    std::vector<size_t> samples{1000};
    SpsaConfig spsa;
    LatencyModel latency;
    RouterOptions router;
    uint64_t seed = 1;
    size_t repetitions = 1;
    /// Parallel experiment jobs.
    size_t jobs = 1;
    std::filesystem::path out = "results";

    /// Throws InputError.
    void validate() const;
};

/// Flat `key = value` lines, `#` comments, comma-separated lists. Relative
/// paths resolve against `base_dir`. Throws InputError naming the line.
ExperimentConfig parse_config(std::istream &in, const std::filesystem::path &base_dir = {});
ExperimentConfig load_config(const std::filesystem::path &path);

/// Per (sweep point, repetition).
struct RunRecord {
    std::string arch;
    NoiseModel noise = NoiseModel::Noiseless;
    AllocationPolicy policy = AllocationPolicy::DepthPrioritized;
    size_t layers = 1;
    size_t samples = 0;
    size_t requested = 0;
    size_t repetition = 0;
    size_t achieved = 0;
    IterationTiming timing;
    double utilization = 0.0;
    size_t iterations = 0;
    StopReason reason = StopReason::IterationCap;
    double plateau_ratio = 0.0;
    double time_to_plateau_us = 0.0;
    /// Time to plateau of the M = 1 run with the same repetition over this
    /// run's time to plateau.
    double speedup = 0.0;
    std::vector<Allocation> allocations;
    TrainingTrace trace;
};

/// Per sweep point, averaged over repetitions.
struct SummaryRow {
    std::string arch;
    NoiseModel noise = NoiseModel::Noiseless;
    AllocationPolicy policy = AllocationPolicy::DepthPrioritized;
    size_t layers = 1;
    size_t samples = 0;
    size_t requested = 0;
    size_t achieved = 0;  // minimum over repetitions
    double ts_us = 0.0;
    double ts_prime_us = 0.0;
    double slowdown = 0.0;
    double plateau_ratio = 0.0;
    double time_to_plateau_us = 0.0;
    /// Mean time to plateau at M = 1 over the mean at this M.
    double speedup = 0.0;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;
    std::vector<SummaryRow> summary;
    ProblemGraph problem;
    int optimum = 0;
    bool shortfall = false;
};

/// Runs every sweep point and repetition. Writes nothing.
ExperimentResult run_experiment(const ExperimentConfig &config);

/// Writes summary.csv, runs.csv, timing.jsonl, problem.edges and per-run
/// traces/ and allocations/ into `dir`, each file atomically.
void write_results(const ExperimentResult &result, const std::filesystem::path &dir);

void write_summary_csv(std::ostream &out, const std::vector<SummaryRow> &rows);
void write_runs_csv(std::ostream &out, const std::vector<RunRecord> &runs);
/// One timing record per run.
void write_timing_jsonl(std::ostream &out, const std::vector<RunRecord> &runs);

/// Two-qubit Pauli range of the high-noise sensitivity study.
inline constexpr RateRange kSensitivityTwoQubitRange{0.0007, 0.0597};

struct SensitivityResult {
    size_t instances = 0;
    double utilization = 0.0;
    /// Per repetition.
    std::vector<double> speedup;
    std::vector<double> ratio_gap;  // plateau(M = 1) - plateau(M)
    std::vector<double> slowdown;
    ExperimentResult experiment;
};

/// Pauli noise with the widened two-qubit range on a grid, at M = 1 and
/// M = `instances`. Throws InputError for non-grid architectures or when
/// the instances cannot reach `min_utilization` of the device.
SensitivityResult sensitivity_run(ExperimentConfig config, size_t instances, double min_utilization);

}  // namespace cqcs
