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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cqcs/error.hpp"
#include "cqcs/harness.hpp"
#include "support/oracles.hpp"

namespace cqcs {
namespace {

namespace fs = std::filesystem;

ExperimentConfig parse(const std::string &text) {
    std::istringstream in(text);
    return parse_config(in, "/base");
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig small_config() {
    return parse(
        "arch = grid:4x3\n"
        "noise = noiseless, pauli\n"
        "M = 2\n"
        "width = 4\n"
        "N = 200\n"
        "max_iterations = 30\n"
        "seed = 3\n"
        "repetitions = 2\n");
}

TEST(Config, ParsesKeysListsAndComments) {
    const ExperimentConfig c = parse(
        "# sweep\n"
        "arch = rochester\n"
        "noise = pauli, apd   # two models\n"
        "policy = noise,depth\n"
        "M = 1, 2, 4\n"
        "p = 1,2\n"
        "N = 500\n"
        "rate_2q = 0.001, 0.01\n"
        "tproc_us = 5\n"
        "spsa_a = 0.5\n"
        "out = res\n");
    EXPECT_EQ(c.arch.kind, ArchitectureSpec::Kind::Named);
    EXPECT_EQ(c.noise_models, (std::vector<NoiseModel>{NoiseModel::Pauli, NoiseModel::Apd}));
    EXPECT_EQ(c.policies,
              (std::vector<AllocationPolicy>{AllocationPolicy::NoisePrioritized, AllocationPolicy::DepthPrioritized}));
    EXPECT_EQ(c.instances, (std::vector<size_t>{1, 2, 4}));
    EXPECT_EQ(c.layers, (std::vector<size_t>{1, 2}));
    EXPECT_EQ(c.samples, std::vector<size_t>{500});
    EXPECT_DOUBLE_EQ(c.ranges.two_qubit.max, 0.01);
    EXPECT_DOUBLE_EQ(c.latency.processing, 5.0);
    EXPECT_DOUBLE_EQ(c.spsa.a, 0.5);
    EXPECT_EQ(c.out, fs::path("/base/res"));
}

TEST(Config, PathsResolveAgainstConfigDirectory) {
    const fs::path dir = fs::temp_directory_path() / "cqcs_cfg";
    fs::create_directories(dir);
    {
        std::ofstream(dir / "g.edges") << "qubits 3\n0 1\n1 2\n";
        std::ofstream(dir / "run.cfg") << "graph = g.edges\nout = res\n";
    }
    const ExperimentConfig c = load_config(dir / "run.cfg");
    EXPECT_EQ(c.graph, dir / "g.edges");
    EXPECT_EQ(c.out, dir / "res");
    fs::remove_all(dir);
}

TEST(Config, Defaults) {
    const ExperimentConfig c = parse("");
    EXPECT_EQ(c.arch.label(), "grid30x30");
    EXPECT_EQ(c.width, 12U);
    EXPECT_EQ(c.samples, std::vector<size_t>{1000});
    EXPECT_EQ(c.seed, 1U);
}

TEST(Config, ErrorsNameTheLine) {
    const auto message = [](const std::string &text) -> std::string {
        try {
            parse(text);
        } catch (const InputError &e) {
            return e.what();
        }
        return "no error";
    };
    EXPECT_NE(message("seed = 1\nbogus = 2\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("seed = 1\nseed = 2\n").find("duplicate"), std::string::npos);
    EXPECT_NE(message("noise = loud\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("M = two\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("just words\n").find("key = value"), std::string::npos);
    EXPECT_THROW(parse("M = 0\n").validate(), InputError);
    EXPECT_THROW(parse("width = 40\n").validate(), InputError);
    EXPECT_THROW(parse("arch = nowhere\n"), InputError);
    EXPECT_THROW(load_config("/nonexistent/cfg"), InputError);
}

TEST(Experiment, SweepShapeAndSummary) {
    const ExperimentResult r = run_experiment(small_config());
    // 2 models x {1, 2} x 2 repetitions
    ASSERT_EQ(r.runs.size(), 8U);
    ASSERT_EQ(r.summary.size(), 4U);
    EXPECT_FALSE(r.shortfall);
    EXPECT_EQ(r.optimum, testing::gray_code_max_cut(r.problem));
    for (const RunRecord &run : r.runs) {
        EXPECT_EQ(run.achieved, run.requested);
        EXPECT_FALSE(run.trace.records.empty());
        EXPECT_GT(run.time_to_plateau_us, 0.0);
        EXPECT_GE(run.plateau_ratio, 0.0);
        EXPECT_LE(run.plateau_ratio, 1.0);
        if (run.requested == 1) {
            EXPECT_DOUBLE_EQ(run.speedup, 1.0);
        }
    }
    for (const SummaryRow &row : r.summary) {
        if (row.requested == 1) {
            EXPECT_DOUBLE_EQ(row.speedup, 1.0);
        }
        EXPECT_GE(row.slowdown, 1.0 - 1e-12);
    }
    std::ostringstream s;
    write_summary_csv(s, r.summary);
    EXPECT_EQ(s.str().substr(0, s.str().find('\n')),
              "arch,noise_model,policy,M,achieved_M,Ts_us,Ts_prime_us,slowdown,plateau_ratio,time_to_plateau_us,"
              "speedup");
}

TEST(Experiment, OutputsAreByteIdentical) {
    const fs::path a = fs::temp_directory_path() / "cqcs_det_a";
    const fs::path b = fs::temp_directory_path() / "cqcs_det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    ExperimentConfig cfg = small_config();
    write_results(run_experiment(cfg), a);
    cfg.jobs = 3;
    write_results(run_experiment(cfg), b);
    size_t files = 0;
    for (const auto &entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        ++files;
        const fs::path rel = fs::relative(entry.path(), a);
        ASSERT_TRUE(fs::exists(b / rel)) << rel;
        EXPECT_EQ(slurp(entry.path()), slurp(b / rel)) << rel;
    }
    EXPECT_GE(files, 4U + 8 + 8);
    EXPECT_TRUE(fs::exists(a / "summary.csv"));
    EXPECT_TRUE(fs::exists(a / "timing.jsonl"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Experiment, ShortfallIsReportedNotThrown) {
    ExperimentConfig cfg = parse(
        "arch = rochester\n"
        "noise = pauli\n"
        "M = 5\n"
        "N = 50\n"
        "max_iterations = 3\n");
    testing::CapturedWarnings warnings;
    const ExperimentResult r = run_experiment(cfg);
    EXPECT_TRUE(r.shortfall);
    bool found = false;
    for (const RunRecord &run : r.runs) {
        if (run.requested == 5) {
            found = true;
            EXPECT_LT(run.achieved, 5U);
            EXPECT_GE(run.achieved, 3U);
        }
    }
    EXPECT_TRUE(found);
    EXPECT_FALSE(warnings.messages().empty());
}

TEST(Sensitivity, RejectsNonGridAndLowUtilization) {
    ExperimentConfig cfg;
    cfg.arch = ArchitectureSpec::parse("sycamore");
    EXPECT_THROW(sensitivity_run(cfg, 4, 0.0), InputError);
    cfg.arch = ArchitectureSpec::parse("grid:10x10");
    EXPECT_THROW(sensitivity_run(cfg, 2, 0.5), InputError);
    EXPECT_THROW(sensitivity_run(cfg, 1, 0.0), InputError);
}

}  // namespace
}  // namespace cqcs
