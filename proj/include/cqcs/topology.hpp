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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqcs {

using Qubit = uint32_t;

/// Undirected edge, normalized so that u < v.
struct Edge {
    Qubit u = 0;
    Qubit v = 0;

    Edge() = default;
    Edge(Qubit a, Qubit b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge &) const = default;
};

/// Physical-qubit connectivity of a QPU.
class CouplingGraph {
  public:
    CouplingGraph() = default;
    /// Throws InputError on self loops, duplicates or out-of-range endpoints.
    CouplingGraph(std::string name, size_t num_qubits, std::vector<Edge> edges);

    const std::string &name() const { return name_; }
    size_t num_qubits() const { return num_qubits_; }
    /// Sorted, unique.
    const std::vector<Edge> &edges() const { return edges_; }
    /// Sorted ascending.
    const std::vector<Qubit> &neighbors(Qubit q) const { return adjacency_[q]; }

    bool has_edge(Qubit a, Qubit b) const;
    /// Position of the edge in edges(), if present.
    std::optional<size_t> edge_index(Qubit a, Qubit b) const;
    bool is_connected() const;

  private:
    std::string name_;
    size_t num_qubits_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Qubit>> adjacency_;
};

/// Architecture descriptor: `grid:WxH`, a bundled name (`rochester`,
/// `sycamore`, `melbourne`), or `file:<path>`.
struct ArchitectureSpec {
    enum class Kind { Grid, Named, File };
    Kind kind = Kind::Grid;
    size_t width = 0;
    size_t height = 0;
    std::string name;
    std::filesystem::path path;
    /// Melbourne is bundled in a 16-qubit and a 14-qubit variant.
    int melbourne_qubits = 16;

    static ArchitectureSpec parse(std::string_view text);
    std::string label() const;
};

/// Directory holding the bundled `*.edges` files. `CQCS_DATA_DIR` in the
/// environment overrides the compiled-in location.
std::filesystem::path default_data_dir();

CouplingGraph grid_topology(size_t width, size_t height);
CouplingGraph build_topology(const ArchitectureSpec &spec,
                             const std::filesystem::path &data_dir = default_data_dir());

/// Edge-list format: `qubits <N>` then `<u> <v>` per line, `#` comments.
CouplingGraph read_edge_list(std::istream &in, std::string name);
CouplingGraph read_edge_list_file(const std::filesystem::path &path);
void write_edge_list(std::ostream &out, const CouplingGraph &graph);

enum class NoiseModel { Noiseless, Pauli, Apd, Coherent };

NoiseModel parse_noise_model(std::string_view text);
std::string_view to_string(NoiseModel model);

struct RateRange {
    double min = 0.0;
    double max = 0.0;
};

/// Sampling ranges for each rate category. Defaults are the Sycamore-derived
/// ranges used for every architecture.
struct NoiseRanges {
    RateRange single_qubit{0.0006, 0.0024};
    RateRange two_qubit{0.0007, 0.0065};
    RateRange measurement{0.0116, 0.0495};
    RateRange coherent_angle{0.025 * std::numbers::pi, 0.05 * std::numbers::pi};

    /// Throws InputError unless min <= max, rates in [0,1) and angles in [0,pi).
    void validate() const;
};

/// Relative error increase at 100% qubit utilization, per category.
struct ConcurrencyFactors {
    double single_qubit = 0.0667;
    double two_qubit = 0.431;
    double measurement = 0.236;
};

struct NoiseProfile {
    NoiseModel model = NoiseModel::Noiseless;
    std::vector<double> single_qubit_error;   // per qubit
    std::vector<double> measurement_error;    // per qubit
    std::vector<double> coherent_angle;       // per qubit, radians
    std::vector<Edge> edges;                  // same order as the graph
    std::vector<double> two_qubit_error;      // per edge
    ConcurrencyFactors factors;

    size_t num_qubits() const { return single_qubit_error.size(); }
    /// Throws std::out_of_range if (a, b) is not a coupling edge.
    double two_qubit(Qubit a, Qubit b) const;
    /// m[j]: probability a readout of qubit j is recorded correctly.
    double measurement_reliability(Qubit q) const { return 1.0 - measurement_error[q]; }
};

/// I.i.d. uniform draws within `ranges`; deterministic in `seed`. Every
/// category is drawn for every model (in a fixed order) so that profiles for
/// different models with one seed describe the same device; the Noiseless
/// model zeroes everything.
NoiseProfile sample_noise_profile(const CouplingGraph &graph, const NoiseRanges &ranges,
                                  NoiseModel model, uint64_t seed);

/// Linear crosstalk scaling: each rate r becomes r * (1 + u * f) for the
/// category's factor f. Angles are unchanged. Throws std::invalid_argument
/// for u outside [0, 1].
NoiseProfile effective_noise(const NoiseProfile &profile, double utilization);

/// `q <i> <e1q> <emeas> <theta>` per qubit, `e <u> <v> <e2q>` per edge.
void write_profile_dump(std::ostream &out, const NoiseProfile &profile);
NoiseProfile read_profile_dump(std::istream &in, NoiseModel model);

}  // namespace cqcs
