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
#include <span>
#include <string>
#include <vector>

#include "cqcs/circuit.hpp"
#include "cqcs/router.hpp"

namespace cqcs {

/// Durations in microseconds.
struct LatencyModel {
    double single_qubit_cycle = 0.035;
    double two_qubit_cycle = 0.30;
    double swap_cycle = 0.30;
    double measurement = 1.0;
    /// Per-shot overhead: reset, readout transfer, host-side bookkeeping.
    double processing = 13.0;
    /// Classical optimizer time per iteration. 1000 shots of a 25 us sample
    /// take about 167 times this.
    double optimizer = 150.0;

    void validate() const;
};

/// Sum over gate cycles of the slowest gate in the cycle, plus the
/// measurement duration if the circuit measures, plus the processing overhead.
double sample_latency(const Circuit &circuit, const LatencyModel &model);
inline double sample_latency(const RoutedCircuit &routed, const LatencyModel &model) {
    return sample_latency(routed.circuit, model);
}

struct IterationTiming {
    std::vector<double> instance_latency;  // T_s per instance
    double baseline_latency = 0.0;         // T_s of the M = 1 run
    double slowest_latency = 0.0;          // T'_s
    size_t instances = 0;                  // M
    double slowdown = 0.0;                 // T'_s / T_s
    double relative_latency = 0.0;         // (1/M) (T'_s / T_s)
};

/// Throws std::invalid_argument for an empty list or a non-positive baseline.
IterationTiming iteration_timing(std::span<const double> instance_latency, double baseline_latency);

/// Shots drawn from each instance so that M instances cover N samples.
size_t shots_per_instance(size_t samples, size_t instances);

/// Modeled wall time of one SPSA iteration: two evaluations of
/// ceil(N/M) shots at the slowest instance latency, plus the optimizer.
double iteration_elapsed(double slowest_latency, size_t samples, size_t instances, const LatencyModel &model);

struct GateCategory {
    std::string name;
    size_t count = 0;
    double fidelity = 1.0;
};

/// Product of fidelity^count. Throws std::invalid_argument when a fidelity
/// is outside (0, 1].
double estimate_success_probability(std::span<const GateCategory> categories);

struct GateCounts {
    size_t single_qubit = 0;
    size_t two_qubit = 0;  // CNOT and SWAP
    size_t measurement = 0;
};

GateCounts count_gates(const Circuit &circuit);

/// Unrouted gate counts of a p-layer QAOA on a d-regular graph with n vertices.
GateCounts qaoa_gate_counts(size_t num_vars, size_t degree, size_t layers);

/// {"M":..,"Ts_us":..,"Ts_prime_us":..,"slowdown":..,"relative_iter_latency":..,"speedup_measured":..}
std::string timing_record(const IterationTiming &timing, double speedup_measured);

}  // namespace cqcs
