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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqcs/topology.hpp"

namespace cqcs {

enum class GateKind : uint8_t { H, RX, RZ, CNOT, SWAP, MEASURE };

std::string_view to_string(GateKind kind);

struct Gate {
    GateKind kind = GateKind::H;
    Qubit q0 = 0;
    Qubit q1 = 0;      // target for CNOT, partner for SWAP
    double angle = 0;  // RX / RZ only
    // Parametric rotations have angle = param_scale * values[param].
    int param = -1;
    double param_scale = 0.0;
    uint32_t cbit = 0;  // MEASURE only

    bool is_two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::SWAP; }
};

/// Ordered gate list over `width` qubits.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(size_t width) : width_(width) {}

    size_t width() const { return width_; }
    const std::vector<Gate> &gates() const { return gates_; }
    size_t size() const { return gates_.size(); }

    Circuit &h(Qubit q);
    Circuit &rx(Qubit q, double angle);
    Circuit &rz(Qubit q, double angle);
    Circuit &cnot(Qubit control, Qubit target);
    Circuit &swap(Qubit a, Qubit b);
    Circuit &measure(Qubit q, uint32_t cbit);
    /// Appends after checking qubit indices.
    Circuit &append(const Gate &gate);

    /// Throws std::invalid_argument if a qubit is measured twice or used after
    /// its measurement.
    void validate() const;

  private:
    size_t width_ = 0;
    std::vector<Gate> gates_;
};

/// Greedy earliest-fit cycles: each gate lands one cycle after the latest
/// cycle used by any of its qubits. All measurements share one final cycle.
/// Returns gate indices per cycle.
std::vector<std::vector<size_t>> layer_circuit(const Circuit &circuit);

/// Replaces every parametric angle with param_scale * values[param].
Circuit bind_parameters(const Circuit &circuit, std::span<const double> values);

struct ProblemGraph {
    size_t num_vars = 0;
    std::vector<Edge> edges;
    int regularity = 0;  // informational; 0 when not regular or unknown

    /// Throws std::invalid_argument unless simple, undirected, num_vars >= 2.
    void validate() const;
};

ProblemGraph read_problem_graph(const std::filesystem::path &path);

struct QaoaParams {
    std::vector<double> betas;
    std::vector<double> gammas;

    size_t p() const { return betas.size(); }
    /// [beta_0 .. beta_{p-1}, gamma_0 .. gamma_{p-1}]
    std::vector<double> flatten() const;
    static QaoaParams from_flat(std::span<const double> values);
};

/// H on every qubit; p blocks of {CNOT(u,v) RZ(v, 2 gamma_k) CNOT(u,v) per edge,
/// RX(q, 2 beta_k) per qubit}; measure all. Rotations reference the flattened
/// parameter vector.
Circuit build_qaoa_template(const ProblemGraph &problem, size_t p);
Circuit build_qaoa(const ProblemGraph &problem, const QaoaParams &params);

/// Random simple connected d-regular graph from the pairing model with
/// rejection. Throws std::invalid_argument when n * degree is odd or
/// degree >= n.
ProblemGraph random_regular_problem(size_t n, size_t degree, uint64_t seed);

/// Bitstring character i is variable i.
int cut_value(const ProblemGraph &problem, std::string_view bits);
/// Bit i of `assignment` is variable i.
int cut_value(const ProblemGraph &problem, uint64_t assignment);

inline constexpr size_t kMaxBruteForceVars = 24;
int max_cut_brute_force(const ProblemGraph &problem);

/// Mean cut value of the samples divided by `optimum`.
double approximation_ratio(std::span<const uint64_t> samples, const ProblemGraph &problem, int optimum);

}  // namespace cqcs
