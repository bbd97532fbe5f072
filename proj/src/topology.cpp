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

#include "cqcs/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "cqcs/error.hpp"
#include "cqcs/rng.hpp"

namespace cqcs {

CouplingGraph::CouplingGraph(std::string name, size_t num_qubits, std::vector<Edge> edges)
    : name_(std::move(name)), num_qubits_(num_qubits), edges_(std::move(edges)), adjacency_(num_qubits) {
    for (const Edge &e : edges_) {
        if (e.u == e.v) {
            throw InputError(fmt::format("{}: self loop on qubit {}", name_, e.u));
        }
        if (e.v >= num_qubits_) {
            throw InputError(fmt::format("{}: edge {}-{} out of range for {} qubits", name_, e.u, e.v, num_qubits_));
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        throw InputError(fmt::format("{}: duplicate edge {}-{}", name_, dup->u, dup->v));
    }
    for (const Edge &e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
    }
}

bool CouplingGraph::has_edge(Qubit a, Qubit b) const {
    return edge_index(a, b).has_value();
}

std::optional<size_t> CouplingGraph::edge_index(Qubit a, Qubit b) const {
    if (a == b) {
        return std::nullopt;
    }
    Edge key(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) {
        return std::nullopt;
    }
    return static_cast<size_t>(it - edges_.begin());
}

bool CouplingGraph::is_connected() const {
    if (num_qubits_ == 0) {
        return true;
    }
    std::vector<bool> seen(num_qubits_, false);
    std::vector<Qubit> stack{0};
    seen[0] = true;
    size_t count = 1;
    while (!stack.empty()) {
        Qubit q = stack.back();
        stack.pop_back();
        for (Qubit n : adjacency_[q]) {
            if (!seen[n]) {
                seen[n] = true;
                ++count;
                stack.push_back(n);
            }
        }
    }
    return count == num_qubits_;
}

namespace {

size_t parse_size(std::string_view text, std::string_view what) {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InputError(fmt::format("invalid {} '{}'", what, text));
    }
    return value;
}

}  // namespace

ArchitectureSpec ArchitectureSpec::parse(std::string_view text) {
    ArchitectureSpec spec;
    if (text.starts_with("grid:")) {
        std::string_view dims = text.substr(5);
        auto x = dims.find('x');
        if (x == std::string_view::npos) {
            throw InputError(fmt::format("grid architecture needs WxH, got '{}'", text));
        }
        spec.kind = Kind::Grid;
        spec.width = parse_size(dims.substr(0, x), "grid width");
        spec.height = parse_size(dims.substr(x + 1), "grid height");
        if (spec.width == 0 || spec.height == 0) {
            throw InputError("grid dimensions must be positive");
        }
        return spec;
    }
    if (text.starts_with("file:")) {
        spec.kind = Kind::File;
        spec.path = std::string(text.substr(5));
        return spec;
    }
    spec.kind = Kind::Named;
    spec.name = std::string(text);
    if (spec.name != "sycamore" && spec.name != "rochester" && spec.name != "melbourne" && spec.name != "melbourne14") {
        throw InputError(fmt::format("unknown architecture '{}' (grid:WxH, sycamore, rochester, melbourne, "
                                     "melbourne14 or file:PATH)",
                                     text));
    }
    if (spec.name == "melbourne14") {
        spec.name = "melbourne";
        spec.melbourne_qubits = 14;
    }
    return spec;
}

std::string ArchitectureSpec::label() const {
    switch (kind) {
        case Kind::Grid:
            return fmt::format("grid{}x{}", width, height);
        case Kind::File:
            return path.stem().string();
        case Kind::Named:
            if (name == "melbourne" && melbourne_qubits == 14) {
                return "melbourne14";
            }
            return name;
    }
    return name;
}

std::filesystem::path default_data_dir() {
    if (const char *env = std::getenv("CQCS_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
#ifdef CQCS_DATA_DIR
    return CQCS_DATA_DIR;
#else
    return "data";
#endif
}

CouplingGraph grid_topology(size_t width, size_t height) {
    std::vector<Edge> edges;
    edges.reserve(2 * width * height);
    for (size_t r = 0; r < height; ++r) {
        for (size_t c = 0; c < width; ++c) {
            auto q = static_cast<Qubit>(r * width + c);
            if (c + 1 < width) {
                edges.emplace_back(q, q + 1);
            }
            if (r + 1 < height) {
                edges.emplace_back(q, static_cast<Qubit>(q + width));
            }
        }
    }
    return CouplingGraph(fmt::format("grid{}x{}", width, height), width * height, std::move(edges));
}

CouplingGraph build_topology(const ArchitectureSpec &spec, const std::filesystem::path &data_dir) {
    switch (spec.kind) {
        case ArchitectureSpec::Kind::Grid:
            return grid_topology(spec.width, spec.height);
        case ArchitectureSpec::Kind::File: {
            CouplingGraph g = read_edge_list_file(spec.path);
            if (!g.is_connected()) {
                warn(fmt::format("topology '{}' is not connected", spec.path.string()));
            }
            return g;
        }
        case ArchitectureSpec::Kind::Named:
            break;
    }
    std::string file;
    if (spec.name == "rochester" || spec.name == "sycamore") {
        file = spec.name;
    } else if (spec.name == "melbourne") {
        if (spec.melbourne_qubits == 16) {
            file = "melbourne";
        } else if (spec.melbourne_qubits == 14) {
            file = "melbourne14";
        } else {
            throw InputError(fmt::format("melbourne is available with 14 or 16 qubits, not {}", spec.melbourne_qubits));
        }
    } else {
        throw InputError(fmt::format("unknown architecture '{}'", spec.name));
    }
    std::ifstream in(data_dir / "arch" / (file + ".edges"));
    if (!in) {
        throw InputError(fmt::format("bundled topology '{}' not found under {}", file, data_dir.string()));
    }
    return read_edge_list(in, file);
}

CouplingGraph read_edge_list(std::istream &in, std::string name) {
    std::optional<size_t> num_qubits;
    std::vector<Edge> edges;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) {
            continue;
        }
        std::string second, extra;
        if (!(fields >> second) || (fields >> extra)) {
            throw InputError(fmt::format("{}:{}: expected two fields", name, lineno));
        }
        if (!num_qubits) {
            if (first != "qubits") {
                throw InputError(fmt::format("{}:{}: expected 'qubits <N>' header", name, lineno));
            }
            num_qubits = parse_size(second, "qubit count");
            continue;
        }
        auto u = parse_size(first, "qubit index");
        auto v = parse_size(second, "qubit index");
        edges.emplace_back(static_cast<Qubit>(u), static_cast<Qubit>(v));
    }
    if (!num_qubits) {
        throw InputError(fmt::format("{}: missing 'qubits <N>' header", name));
    }
    return CouplingGraph(std::move(name), *num_qubits, std::move(edges));
}

CouplingGraph read_edge_list_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open edge list '{}'", path.string()));
    }
    return read_edge_list(in, path.stem().string());
}

void write_edge_list(std::ostream &out, const CouplingGraph &graph) {
    out << "qubits " << graph.num_qubits() << '\n';
    for (const Edge &e : graph.edges()) {
        out << e.u << ' ' << e.v << '\n';
    }
}

NoiseModel parse_noise_model(std::string_view text) {
    if (text == "noiseless" || text == "none") return NoiseModel::Noiseless;
    if (text == "pauli") return NoiseModel::Pauli;
    if (text == "apd") return NoiseModel::Apd;
    if (text == "coherent") return NoiseModel::Coherent;
    throw InputError(fmt::format("unknown noise model '{}'", text));
}

std::string_view to_string(NoiseModel model) {
    switch (model) {
        case NoiseModel::Noiseless: return "noiseless";
        case NoiseModel::Pauli: return "pauli";
        case NoiseModel::Apd: return "apd";
        case NoiseModel::Coherent: return "coherent";
    }
    return "?";
}

void NoiseRanges::validate() const {
    auto check = [](const RateRange &r, double upper, std::string_view what) {
        if (!(r.min <= r.max)) {
            throw InputError(fmt::format("{} range has min > max", what));
        }
        if (r.min < 0.0 || r.max >= upper) {
            throw InputError(fmt::format("{} range [{}, {}] outside [0, {})", what, r.min, r.max, upper));
        }
    };
    check(single_qubit, 1.0, "single-qubit error");
    check(two_qubit, 1.0, "two-qubit error");
    check(measurement, 1.0, "measurement error");
    check(coherent_angle, std::numbers::pi, "coherent angle");
}

double NoiseProfile::two_qubit(Qubit a, Qubit b) const {
    Edge key(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) {
        throw std::out_of_range(fmt::format("no coupling edge {}-{}", a, b));
    }
    return two_qubit_error[static_cast<size_t>(it - edges.begin())];
}

NoiseProfile sample_noise_profile(const CouplingGraph &graph, const NoiseRanges &ranges,
                                  NoiseModel model, uint64_t seed) {
    ranges.validate();
    NoiseProfile p;
    p.model = model;
    const size_t n = graph.num_qubits();
    p.single_qubit_error.resize(n);
    p.measurement_error.resize(n);
    p.coherent_angle.resize(n);
    p.edges = graph.edges();
    p.two_qubit_error.resize(p.edges.size());

    Rng rng(seed);
    auto draw = [&rng](const RateRange &r) { return r.min + (r.max - r.min) * rng.uniform(); };
    for (size_t q = 0; q < n; ++q) {
        p.single_qubit_error[q] = draw(ranges.single_qubit);
        p.measurement_error[q] = draw(ranges.measurement);
        p.coherent_angle[q] = draw(ranges.coherent_angle);
    }
    for (double &e : p.two_qubit_error) {
        e = draw(ranges.two_qubit);
    }
    if (model == NoiseModel::Noiseless) {
        std::fill(p.single_qubit_error.begin(), p.single_qubit_error.end(), 0.0);
        std::fill(p.measurement_error.begin(), p.measurement_error.end(), 0.0);
        std::fill(p.coherent_angle.begin(), p.coherent_angle.end(), 0.0);
        std::fill(p.two_qubit_error.begin(), p.two_qubit_error.end(), 0.0);
    }
    return p;
}

NoiseProfile effective_noise(const NoiseProfile &profile, double utilization) {
    if (!(utilization >= 0.0 && utilization <= 1.0)) {
        throw std::invalid_argument(fmt::format("utilization {} outside [0, 1]", utilization));
    }
    NoiseProfile out = profile;
    auto scale = [utilization](std::vector<double> &rates, double factor) {
        for (double &r : rates) {
            r = std::min(1.0, r * (1.0 + utilization * factor));
        }
    };
    scale(out.single_qubit_error, profile.factors.single_qubit);
    scale(out.two_qubit_error, profile.factors.two_qubit);
    scale(out.measurement_error, profile.factors.measurement);
    return out;
}

void write_profile_dump(std::ostream &out, const NoiseProfile &profile) {
    for (size_t q = 0; q < profile.num_qubits(); ++q) {
        out << fmt::format("q {} {} {} {}\n", q, profile.single_qubit_error[q], profile.measurement_error[q],
                           profile.coherent_angle[q]);
    }
    for (size_t i = 0; i < profile.edges.size(); ++i) {
        out << fmt::format("e {} {} {}\n", profile.edges[i].u, profile.edges[i].v, profile.two_qubit_error[i]);
    }
}

NoiseProfile read_profile_dump(std::istream &in, NoiseModel model) {
    NoiseProfile p;
    p.model = model;
    std::vector<std::pair<Edge, double>> edges;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag)) {
            continue;
        }
        if (tag == "q") {
            size_t q;
            double e1, em, th;
            if (!(fields >> q >> e1 >> em >> th) || q != p.single_qubit_error.size()) {
                throw InputError(fmt::format("profile dump line {}: bad qubit record", lineno));
            }
            p.single_qubit_error.push_back(e1);
            p.measurement_error.push_back(em);
            p.coherent_angle.push_back(th);
        } else if (tag == "e") {
            Qubit u, v;
            double e2;
            if (!(fields >> u >> v >> e2)) {
                throw InputError(fmt::format("profile dump line {}: bad edge record", lineno));
            }
            edges.emplace_back(Edge(u, v), e2);
        } else {
            throw InputError(fmt::format("profile dump line {}: unknown record '{}'", lineno, tag));
        }
    }
    std::sort(edges.begin(), edges.end());
    for (auto &[e, r] : edges) {
        p.edges.push_back(e);
        p.two_qubit_error.push_back(r);
    }
    return p;
}

}  // namespace cqcs
