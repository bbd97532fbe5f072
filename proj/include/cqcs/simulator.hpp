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
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cqcs/circuit.hpp"
#include "cqcs/kernels.hpp"
#include "cqcs/rng.hpp"
#include "cqcs/router.hpp"
#include "cqcs/topology.hpp"

namespace cqcs {

inline constexpr size_t kMaxSimulatedWidth = 24;
inline constexpr size_t kMaxExactWidth = 12;

/// 2^n amplitudes, starting in |0...0>.
class StateVector {
  public:
    explicit StateVector(size_t num_qubits, const KernelTable &kernels = active_kernels());

    size_t num_qubits() const { return num_qubits_; }
    size_t dim() const { return amps_.size(); }
    std::span<Amplitude> amplitudes() { return amps_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    const KernelTable &kernels() const { return *kernels_; }

    void reset();
    void assign(std::span<const Amplitude> amps);

    void apply_matrix(unsigned q, const Amplitude (&m)[4]) { kernels_->apply_matrix(amps_.data(), dim(), q, m); }
    void apply_diagonal(unsigned q, Amplitude d0, Amplitude d1) {
        kernels_->apply_diagonal(amps_.data(), dim(), q, d0, d1);
    }
    void apply_cnot(unsigned c, unsigned t) { kernels_->apply_cnot(amps_.data(), dim(), c, t); }
    void apply_swap(unsigned a, unsigned b) { kernels_->apply_swap(amps_.data(), dim(), a, b); }
    /// Unitary action of a non-measurement gate.
    void apply_gate(const Gate &gate);

    double norm_squared() const;
    double excited_probability(unsigned q) const {
        return kernels_->excited_probability(amps_.data(), dim(), q);
    }
    std::vector<double> probabilities() const;

  private:
    size_t num_qubits_;
    const KernelTable *kernels_;
    std::vector<Amplitude> amps_;
};

/// With probability `rate` apply one of X, Y, Z chosen uniformly.
struct PauliChannel {
    double rate = 0.0;
};

/// Amplitude and phase damping as a trajectory draw over
/// K0 = diag(1, sqrt((1-g)(1-l))), K1 = sqrt(g)|0><1|, K2 = sqrt((1-g)l)|1><1|.
struct DampingChannel {
    double gamma = 0.0;
    double lambda = 0.0;
};

using Channel = std::variant<PauliChannel, DampingChannel>;

/// Applies the channel independently to each listed qubit, drawing from rng.
/// Throws std::invalid_argument for rates outside [0, 1).
void apply_channel(StateVector &state, std::span<const unsigned> qubits, const Channel &channel, Rng &rng);

/// Outcomes in logical-qubit order: bit q of outcomes[i] is logical qubit q.
struct ShotBatch {
    size_t width = 0;
    std::vector<uint64_t> outcomes;

    size_t size() const { return outcomes.size(); }
};

/// Character i is logical qubit i (logical qubit 0 first).
std::string format_bitstring(uint64_t outcome, size_t width);
/// One bitstring per line.
void write_shot_dump(std::ostream &out, const ShotBatch &batch);

struct ShotOptions {
    uint64_t seed = 0;
    /// Shot i draws from stream derive_seed(seed, {first_shot_index + i}), so
    /// splitting a batch across calls or workers leaves outcomes unchanged.
    uint64_t first_shot_index = 0;
    size_t workers = 1;
};

/// Trajectory simulation of `routed` under `profile` (its model tag selects
/// the channels). Per cycle: gates, then gate-attached noise on the gate
/// operands, then idle noise on every qubit at its single-qubit rate. Readout
/// flips each bit with the qubit's measurement error. SWAPs apply the
/// two-qubit channel three times per operand.
///
/// Throws std::invalid_argument when the width exceeds kMaxSimulatedWidth or
/// the profile does not cover the routed qubits and couplings.
ShotBatch run_shots(const RoutedCircuit &routed, const NoiseProfile &profile, size_t shots,
                    const ShotOptions &options);

/// Noiseless |amplitude|^2 of the final state, indexed by qubit position.
/// Measurements are ignored. Width is capped at kMaxExactWidth.
std::vector<double> exact_distribution(const Circuit &circuit);

}  // namespace cqcs
