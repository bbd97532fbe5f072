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

#include "cqcs/timing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace cqcs {

void LatencyModel::validate() const {
    const std::pair<const char *, double> fields[] = {
        {"single-qubit cycle", single_qubit_cycle}, {"two-qubit cycle", two_qubit_cycle},
        {"swap cycle", swap_cycle},                 {"measurement", measurement},
        {"processing", processing},                 {"optimizer", optimizer},
    };
    for (auto [name, v] : fields) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(fmt::format("{} duration must be finite and >= 0, got {}", name, v));
        }
    }
}

double sample_latency(const Circuit &circuit, const LatencyModel &model) {
    double total = model.processing;
    const auto &gates = circuit.gates();
    for (const auto &layer : layer_circuit(circuit)) {
        double longest = 0.0;
        for (size_t gi : layer) {
            switch (gates[gi].kind) {
                case GateKind::H:
                case GateKind::RX:
                case GateKind::RZ: longest = std::max(longest, model.single_qubit_cycle); break;
                case GateKind::CNOT: longest = std::max(longest, model.two_qubit_cycle); break;
                case GateKind::SWAP: longest = std::max(longest, model.swap_cycle); break;
                case GateKind::MEASURE: longest = std::max(longest, model.measurement); break;
            }
        }
        total += longest;
    }
    return total;
}

IterationTiming iteration_timing(std::span<const double> instance_latency, double baseline_latency) {
    if (instance_latency.empty()) {
        throw std::invalid_argument("iteration timing needs at least one instance");
    }
    if (!(baseline_latency > 0.0)) {
        throw std::invalid_argument(fmt::format("baseline latency must be positive, got {}", baseline_latency));
    }
    IterationTiming t;
    t.instance_latency.assign(instance_latency.begin(), instance_latency.end());
    t.baseline_latency = baseline_latency;
    t.slowest_latency = *std::max_element(instance_latency.begin(), instance_latency.end());
    t.instances = instance_latency.size();
    t.slowdown = t.slowest_latency / baseline_latency;
    t.relative_latency = t.slowdown / static_cast<double>(t.instances);
    return t;
}

size_t shots_per_instance(size_t samples, size_t instances) {
    if (instances == 0) {
        throw std::invalid_argument("instance count must be positive");
    }
    return (samples + instances - 1) / instances;
}

double iteration_elapsed(double slowest_latency, size_t samples, size_t instances, const LatencyModel &model) {
    return 2.0 * static_cast<double>(shots_per_instance(samples, instances)) * slowest_latency + model.optimizer;
}

double estimate_success_probability(std::span<const GateCategory> categories) {
    double p = 1.0;
    for (const auto &c : categories) {
        if (!(c.fidelity > 0.0 && c.fidelity <= 1.0)) {
            throw std::invalid_argument(fmt::format("fidelity of {} gates outside (0, 1]: {}", c.name, c.fidelity));
        }
        p *= std::pow(c.fidelity, static_cast<double>(c.count));
    }
    return p;
}

GateCounts count_gates(const Circuit &circuit) {
    GateCounts counts;
    for (const Gate &g : circuit.gates()) {
        if (g.kind == GateKind::MEASURE) {
            ++counts.measurement;
        } else if (g.is_two_qubit()) {
            ++counts.two_qubit;
        } else {
            ++counts.single_qubit;
        }
    }
    return counts;
}

GateCounts qaoa_gate_counts(size_t num_vars, size_t degree, size_t layers) {
    if (num_vars * degree % 2 != 0) {
        throw std::invalid_argument("no regular graph with an odd degree sum");
    }
    const size_t edges = num_vars * degree / 2;
    // Per layer: CNOT RZ CNOT per edge, RX per vertex.
    return {.single_qubit = num_vars + layers * (edges + num_vars),
            .two_qubit = layers * 2 * edges,
            .measurement = num_vars};
}

std::string timing_record(const IterationTiming &timing, double speedup_measured) {
    nlohmann::ordered_json j;
    j["M"] = timing.instances;
    j["Ts_us"] = timing.baseline_latency;
    j["Ts_prime_us"] = timing.slowest_latency;
    j["slowdown"] = timing.slowdown;
    j["relative_iter_latency"] = timing.relative_latency;
    j["speedup_measured"] = speedup_measured;
    return j.dump();
}

}  // namespace cqcs
