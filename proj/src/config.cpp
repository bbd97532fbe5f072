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

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>

#include <fmt/format.h>

#include "cqcs/error.hpp"
#include "cqcs/harness.hpp"

namespace cqcs {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> items;
    size_t pos = 0;
    while (true) {
        const size_t comma = value.find(',', pos);
        items.push_back(trim(value.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return items;
}

template <class T>
T parse_number(std::string_view text) {
    T value{};
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw InputError(fmt::format("'{}' is not a valid number", text));
    }
    return value;
}

size_t parse_count(std::string_view text) {
    if (!text.empty() && text.front() == '-') {
        throw InputError(fmt::format("'{}' must be non-negative", text));
    }
    return parse_number<size_t>(text);
}

RateRange parse_range(std::string_view value) {
    const auto items = split_list(value);
    if (items.size() != 2) {
        throw InputError(fmt::format("expected 'min, max', got '{}'", value));
    }
    return {parse_number<double>(items[0]), parse_number<double>(items[1])};
}

template <class T, class F>
std::vector<T> parse_list(std::string_view value, F parse_item) {
    std::vector<T> out;
    for (std::string_view item : split_list(value)) {
        out.push_back(parse_item(item));
    }
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    ranges.validate();
    spsa.validate();
    latency.validate();
    if (noise_models.empty() || policies.empty() || instances.empty() || layers.empty() || samples.empty()) {
        throw InputError("sweep lists must not be empty");
    }
    for (size_t m : instances) {
        if (m == 0) {
            throw InputError("M must be at least 1");
        }
    }
    for (size_t p : layers) {
        if (p == 0) {
            throw InputError("p must be at least 1");
        }
    }
    for (size_t n : samples) {
        if (n == 0) {
            throw InputError("N must be at least 1");
        }
    }
    if (graph.empty() && (width < 2 || width > kMaxSimulatedWidth)) {
        throw InputError(fmt::format("width must lie in [2, {}]", kMaxSimulatedWidth));
    }
    if (repetitions == 0) {
        throw InputError("repetitions must be at least 1");
    }
    for (double f : {crosstalk.single_qubit, crosstalk.two_qubit, crosstalk.measurement}) {
        if (!(f >= 0.0)) {
            throw InputError("crosstalk factors must be non-negative");
        }
    }
    if (!(router.lookahead_weight >= 0.0)) {
        throw InputError("lookahead weight must be non-negative");
    }
    if (!graph.empty() && !std::filesystem::exists(graph)) {
        throw InputError(fmt::format("problem graph '{}' does not exist", graph.string()));
    }
    if (arch.kind == ArchitectureSpec::Kind::File && !std::filesystem::exists(arch.path)) {
        throw InputError(fmt::format("topology file '{}' does not exist", arch.path.string()));
    }
}

ExperimentConfig parse_config(std::istream &in, const std::filesystem::path &base_dir) {
    ExperimentConfig cfg;
    std::optional<int> melbourne_qubits;
    auto resolve = [&](std::string_view v) {
        std::filesystem::path p{std::string(v)};
        return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    };
    using Setter = std::function<void(std::string_view)>;
    const std::map<std::string, Setter, std::less<>> setters = {
        {"arch",
         [&](auto v) {
             cfg.arch = ArchitectureSpec::parse(v);
             if (cfg.arch.kind == ArchitectureSpec::Kind::File) {
                 cfg.arch.path = resolve(cfg.arch.path.string());
             }
         }},
        {"data_dir", [&](auto v) { cfg.data_dir = resolve(v); }},
        {"melbourne_qubits", [&](auto v) { melbourne_qubits = parse_number<int>(v); }},
        {"noise", [&](auto v) { cfg.noise_models = parse_list<NoiseModel>(v, parse_noise_model); }},
        {"rate_1q", [&](auto v) { cfg.ranges.single_qubit = parse_range(v); }},
        {"rate_2q", [&](auto v) { cfg.ranges.two_qubit = parse_range(v); }},
        {"rate_meas", [&](auto v) { cfg.ranges.measurement = parse_range(v); }},
        {"coherent_angle", [&](auto v) { cfg.ranges.coherent_angle = parse_range(v); }},
        {"crosstalk_1q", [&](auto v) { cfg.crosstalk.single_qubit = parse_number<double>(v); }},
        {"crosstalk_2q", [&](auto v) { cfg.crosstalk.two_qubit = parse_number<double>(v); }},
        {"crosstalk_meas", [&](auto v) { cfg.crosstalk.measurement = parse_number<double>(v); }},
        {"policy", [&](auto v) { cfg.policies = parse_list<AllocationPolicy>(v, parse_allocation_policy); }},
        {"M", [&](auto v) { cfg.instances = parse_list<size_t>(v, parse_count); }},
        {"width", [&](auto v) { cfg.width = parse_count(v); }},
        {"degree", [&](auto v) { cfg.degree = parse_count(v); }},
        {"graph", [&](auto v) { cfg.graph = resolve(v); }},
        {"p", [&](auto v) { cfg.layers = parse_list<size_t>(v, parse_count); }},
        {"N", [&](auto v) { cfg.samples = parse_list<size_t>(v, parse_count); }},
        {"spsa_a", [&](auto v) { cfg.spsa.a = parse_number<double>(v); }},
        {"spsa_c", [&](auto v) { cfg.spsa.c = parse_number<double>(v); }},
        {"spsa_A", [&](auto v) { cfg.spsa.stability = parse_number<double>(v); }},
        {"spsa_alpha", [&](auto v) { cfg.spsa.alpha = parse_number<double>(v); }},
        {"spsa_gamma", [&](auto v) { cfg.spsa.gamma_exp = parse_number<double>(v); }},
        {"max_iterations", [&](auto v) { cfg.spsa.max_iterations = parse_count(v); }},
        {"moving_average", [&](auto v) { cfg.spsa.moving_average = parse_count(v); }},
        {"plateau_window", [&](auto v) { cfg.spsa.plateau_window = parse_count(v); }},
        {"plateau_threshold", [&](auto v) { cfg.spsa.plateau_threshold = parse_number<double>(v); }},
        {"plateau_fraction", [&](auto v) { cfg.spsa.plateau_fraction = parse_number<double>(v); }},
        {"d1q_us", [&](auto v) { cfg.latency.single_qubit_cycle = parse_number<double>(v); }},
        {"d2q_us", [&](auto v) { cfg.latency.two_qubit_cycle = parse_number<double>(v); }},
        {"dswap_us", [&](auto v) { cfg.latency.swap_cycle = parse_number<double>(v); }},
        {"dmeas_us", [&](auto v) { cfg.latency.measurement = parse_number<double>(v); }},
        {"tproc_us", [&](auto v) { cfg.latency.processing = parse_number<double>(v); }},
        {"topt_us", [&](auto v) { cfg.latency.optimizer = parse_number<double>(v); }},
        {"lookahead_weight", [&](auto v) { cfg.router.lookahead_weight = parse_number<double>(v); }},
        {"lookahead_gates", [&](auto v) { cfg.router.lookahead_gates = parse_count(v); }},
        {"seed", [&](auto v) { cfg.seed = parse_number<uint64_t>(v); }},
        {"repetitions", [&](auto v) { cfg.repetitions = parse_count(v); }},
        {"jobs", [&](auto v) { cfg.jobs = parse_count(v); }},
        {"out", [&](auto v) { cfg.out = resolve(v); }},
    };

    std::set<std::string, std::less<>> seen;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw InputError(fmt::format("config line {}: expected 'key = value'", lineno));
        }
        const std::string_view key = trim(text.substr(0, eq));
        const std::string_view value = trim(text.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw InputError(fmt::format("config line {}: unknown key '{}'", lineno, key));
        }
        if (!seen.emplace(key).second) {
            throw InputError(fmt::format("config line {}: duplicate key '{}'", lineno, key));
        }
        if (value.empty()) {
            throw InputError(fmt::format("config line {}: empty value for '{}'", lineno, key));
        }
        try {
            it->second(value);
        } catch (const std::exception &e) {
            throw InputError(fmt::format("config line {}: {}: {}", lineno, key, e.what()));
        }
    }
    if (melbourne_qubits) {
        if (*melbourne_qubits != 14 && *melbourne_qubits != 16) {
            throw InputError("melbourne_qubits must be 14 or 16");
        }
        cfg.arch.melbourne_qubits = *melbourne_qubits;
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open config '{}'", path.string()));
    }
    return parse_config(in, path.parent_path());
}

}  // namespace cqcs
