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

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cqcs/circuit.hpp"
#include "cqcs/error.hpp"
#include "cqcs/harness.hpp"
#include "cqcs/topology.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitShortfall = 3;

int run_command(const std::string &config_path, std::optional<uint64_t> seed, const std::string &out, bool strict) {
    cqcs::ExperimentConfig cfg = cqcs::load_config(config_path);
    if (seed) {
        cfg.seed = *seed;
    }
    if (!out.empty()) {
        cfg.out = out;
    }
    const cqcs::ExperimentResult result = cqcs::run_experiment(cfg);
    cqcs::write_results(result, cfg.out);
    cqcs::write_summary_csv(std::cout, result.summary);
    if (strict && result.shortfall) {
        std::cerr << "error: allocation shortfall\n";
        return kExitShortfall;
    }
    return EXIT_SUCCESS;
}

int topo_command(const std::string &arch, const std::string &data_dir, bool dump) {
    const auto spec = cqcs::ArchitectureSpec::parse(arch);
    const auto graph = cqcs::build_topology(spec, data_dir.empty() ? cqcs::default_data_dir() : std::filesystem::path(data_dir));
    if (dump) {
        cqcs::write_edge_list(std::cout, graph);
    } else {
        std::cout << fmt::format("{}: {} qubits, {} couplings, {}\n", graph.name(), graph.num_qubits(),
                                 graph.edges().size(), graph.is_connected() ? "connected" : "disconnected");
    }
    return EXIT_SUCCESS;
}

int maxcut_command(const std::string &path) {
    const auto problem = cqcs::read_problem_graph(path);
    if (problem.num_vars > cqcs::kMaxBruteForceVars) {
        throw cqcs::InputError(fmt::format("brute force supports at most {} vertices", cqcs::kMaxBruteForceVars));
    }
    std::cout << cqcs::max_cut_brute_force(problem) << '\n';
    return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Concurrent QAOA sampling experiments"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run an experiment sweep from a config file");
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out;
    bool strict = false;
    run->add_option("--config", config_path, "Config file")->required();
    run->add_option("--seed", seed, "Override the master seed");
    run->add_option("--out", out, "Output directory");
    run->add_flag("--strict", strict, "Exit with status 3 when an allocation falls short");

    auto *topo = app.add_subcommand("topo", "Inspect a device topology");
    std::string arch;
    std::string data_dir;
    bool dump = false;
    topo->add_option("--arch", arch, "grid:WxH, a bundled name, or file:<path>")->required();
    topo->add_option("--data-dir", data_dir, "Directory with bundled topologies");
    topo->add_flag("--dump", dump, "Print the edge list");

    auto *oracle = app.add_subcommand("oracle", "Reference solvers");
    oracle->require_subcommand(1);
    auto *maxcut = oracle->add_subcommand("maxcut", "Exact max-cut by enumeration");
    std::string graph_path;
    maxcut->add_option("--graph", graph_path, "Edge-list file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            return run_command(config_path, seed, out, strict);
        }
        if (*topo) {
            return topo_command(arch, data_dir, dump);
        }
        return maxcut_command(graph_path);
    } catch (const cqcs::InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
}
