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

#include "cqcs/harness.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "cqcs/error.hpp"
#include "cqcs/parallel.hpp"
#include "cqcs/reliability.hpp"
#include "cqcs/rng.hpp"

namespace cqcs {

namespace {

struct DeviceState {
    NoiseProfile profile;
    PathMatrices matrices;
};

struct Job {
    NoiseModel noise;
    AllocationPolicy policy;
    size_t layers;
    size_t samples;
    size_t instances;
    size_t repetition;
};

using PointKey = std::tuple<NoiseModel, AllocationPolicy, size_t, size_t>;

PointKey point_of(const RunRecord &r) { return {r.noise, r.policy, r.layers, r.samples}; }

std::string run_stem(const RunRecord &r) {
    return fmt::format("{}_{}_p{}_N{}_M{}_r{}", to_string(r.noise), to_string(r.policy), r.layers, r.samples,
                       r.requested, r.repetition);
}

void write_atomic(const std::filesystem::path &path, const std::string &contents) {
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
        }
        out << contents;
        out.flush();
        if (!out) {
            throw std::runtime_error(fmt::format("write to '{}' failed", tmp.string()));
        }
    }
    std::filesystem::rename(tmp, path);
}

template <class F>
std::string render(F &&write) {
    std::ostringstream os;
    write(os);
    return std::move(os).str();
}

double mean(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig &config) {
    config.validate();
    const CouplingGraph graph = build_topology(config.arch, config.data_dir);
    const std::string arch_label = config.arch.label();

    ExperimentResult result;
    if (!config.graph.empty()) {
        result.problem = read_problem_graph(config.graph);
    } else {
        result.problem =
            random_regular_problem(config.width, config.degree, derive_seed(config.seed, {label_hash("problem")}));
    }
    if (result.problem.num_vars > kMaxBruteForceVars) {
        throw InputError(fmt::format("problem has {} variables; at most {} are supported", result.problem.num_vars,
                                     kMaxBruteForceVars));
    }
    result.optimum = max_cut_brute_force(result.problem);
    if (result.optimum <= 0) {
        throw InputError("problem graph has no edges to cut");
    }

    std::set<size_t> m_values(config.instances.begin(), config.instances.end());
    m_values.insert(1);

    // One device per (repetition, noise model); the same seed for every model
    // so they describe the same hardware.
    std::map<std::pair<size_t, NoiseModel>, DeviceState> devices;
    for (size_t rep = 0; rep < config.repetitions; ++rep) {
        const uint64_t rep_seed = derive_seed(config.seed, {rep});
        for (NoiseModel model : config.noise_models) {
            if (devices.contains({rep, model})) {
                continue;
            }
            NoiseProfile profile =
                sample_noise_profile(graph, config.ranges, model, derive_seed(rep_seed, {label_hash("profile")}));
            profile.factors = config.crosstalk;
            PathMatrices matrices = floyd_warshall(graph, profile);
            devices.emplace(std::pair{rep, model}, DeviceState{std::move(profile), std::move(matrices)});
        }
    }

    std::vector<Job> jobs;
    std::set<PointKey> seen_points;
    for (NoiseModel model : config.noise_models) {
        for (AllocationPolicy policy : config.policies) {
            for (size_t p : config.layers) {
                for (size_t n : config.samples) {
                    if (!seen_points.insert({model, policy, p, n}).second) {
                        continue;
                    }
                    for (size_t m : m_values) {
                        for (size_t rep = 0; rep < config.repetitions; ++rep) {
                            jobs.push_back({model, policy, p, n, m, rep});
                        }
                    }
                }
            }
        }
    }

    result.runs.resize(jobs.size());
    parallel_for(jobs.size(), config.jobs, [&](size_t j) {
        const Job &job = jobs[j];
        const DeviceState &device = devices.at({job.repetition, job.noise});
        const uint64_t rep_seed = derive_seed(config.seed, {job.repetition});
        const ContextOptions options{.layers = job.layers,
                                     .instances = job.instances,
                                     .policy = job.policy,
                                     .router = config.router,
                                     .latency = config.latency,
                                     .workers = 1};
        const TrainingContext ctx =
            prepare_context(graph, device.profile, device.matrices, result.problem, result.optimum, options);
        SpsaConfig spsa = config.spsa;
        spsa.samples = job.samples;
        const std::vector<double> init =
            initial_parameters(job.layers, derive_seed(rep_seed, {label_hash("init"), job.layers}));

        RunRecord &r = result.runs[j];
        r.arch = arch_label;
        r.noise = job.noise;
        r.policy = job.policy;
        r.layers = job.layers;
        r.samples = job.samples;
        r.requested = job.instances;
        r.repetition = job.repetition;
        r.achieved = ctx.instances();
        r.timing = ctx.timing;
        r.utilization = ctx.utilization;
        r.allocations = ctx.allocation.allocations;
        r.trace = train(ctx, spsa, config.latency, init, derive_seed(rep_seed, {label_hash("spsa")}));
        r.iterations = r.trace.records.size();
        r.reason = r.trace.reason;
        r.plateau_ratio = r.trace.plateau_ratio;
        r.time_to_plateau_us = r.trace.time_to_plateau_us;
    });

    // Speedups against the M = 1 run of the same point and repetition.
    std::map<std::pair<PointKey, size_t>, double> baseline;
    for (const RunRecord &r : result.runs) {
        if (r.requested == 1) {
            baseline[{point_of(r), r.repetition}] = r.time_to_plateau_us;
        }
    }
    for (RunRecord &r : result.runs) {
        r.speedup = baseline.at({point_of(r), r.repetition}) / r.time_to_plateau_us;
        if (r.achieved < r.requested) {
            result.shortfall = true;
        }
    }

    // Summary rows in job order, one per (point, M).
    std::map<std::pair<PointKey, size_t>, std::vector<const RunRecord *>> groups;
    std::vector<std::pair<PointKey, size_t>> order;
    for (const RunRecord &r : result.runs) {
        auto key = std::pair{point_of(r), r.requested};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) {
            order.push_back(key);
        }
        it->second.push_back(&r);
    }
    std::map<PointKey, double> baseline_ttp;
    for (const auto &key : order) {
        if (key.second == 1) {
            std::vector<double> t;
            for (const RunRecord *r : groups.at(key)) {
                t.push_back(r->time_to_plateau_us);
            }
            baseline_ttp[key.first] = mean(t);
        }
    }
    for (const auto &key : order) {
        const auto &runs = groups.at(key);
        std::vector<double> ts, tsp, slow, ratio, ttp;
        SummaryRow row;
        row.arch = arch_label;
        std::tie(row.noise, row.policy, row.layers, row.samples) = key.first;
        row.requested = key.second;
        row.achieved = runs.front()->achieved;
        for (const RunRecord *r : runs) {
            row.achieved = std::min(row.achieved, r->achieved);
            ts.push_back(r->timing.baseline_latency);
            tsp.push_back(r->timing.slowest_latency);
            slow.push_back(r->timing.slowdown);
            ratio.push_back(r->plateau_ratio);
            ttp.push_back(r->time_to_plateau_us);
        }
        row.ts_us = mean(ts);
        row.ts_prime_us = mean(tsp);
        row.slowdown = mean(slow);
        row.plateau_ratio = mean(ratio);
        row.time_to_plateau_us = mean(ttp);
        row.speedup = baseline_ttp.at(key.first) / row.time_to_plateau_us;
        result.summary.push_back(row);
    }
    return result;
}

void write_summary_csv(std::ostream &out, const std::vector<SummaryRow> &rows) {
    out << "arch,noise_model,policy,M,achieved_M,Ts_us,Ts_prime_us,slowdown,plateau_ratio,time_to_plateau_us,"
           "speedup\n";
    for (const SummaryRow &r : rows) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.arch, to_string(r.noise), to_string(r.policy),
                           r.requested, r.achieved, r.ts_us, r.ts_prime_us, r.slowdown, r.plateau_ratio,
                           r.time_to_plateau_us, r.speedup);
    }
}

void write_runs_csv(std::ostream &out, const std::vector<RunRecord> &runs) {
    out << "arch,noise_model,policy,p,N,M,repetition,achieved_M,utilization,Ts_us,Ts_prime_us,slowdown,"
           "relative_iter_latency,iterations,stop_reason,plateau_ratio,time_to_plateau_us,speedup\n";
    for (const RunRecord &r : runs) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.arch, to_string(r.noise),
                           to_string(r.policy), r.layers, r.samples, r.requested, r.repetition, r.achieved,
                           r.utilization, r.timing.baseline_latency, r.timing.slowest_latency, r.timing.slowdown,
                           r.timing.relative_latency, r.iterations, to_string(r.reason), r.plateau_ratio,
                           r.time_to_plateau_us, r.speedup);
    }
}

void write_timing_jsonl(std::ostream &out, const std::vector<RunRecord> &runs) {
    for (const RunRecord &r : runs) {
        out << timing_record(r.timing, r.speedup) << '\n';
    }
}

void write_results(const ExperimentResult &result, const std::filesystem::path &dir) {
    std::set<std::pair<size_t, size_t>> groups;
    for (const SummaryRow &row : result.summary) {
        groups.insert({row.layers, row.samples});
    }
    for (const auto &[p, n] : groups) {
        std::vector<SummaryRow> rows;
        for (const SummaryRow &row : result.summary) {
            if (row.layers == p && row.samples == n) {
                rows.push_back(row);
            }
        }
        const auto sub = groups.size() == 1 ? dir : dir / fmt::format("p{}_N{}", p, n);
        write_atomic(sub / "summary.csv", render([&](std::ostream &os) { write_summary_csv(os, rows); }));
    }
    write_atomic(dir / "runs.csv", render([&](std::ostream &os) { write_runs_csv(os, result.runs); }));
    write_atomic(dir / "timing.jsonl", render([&](std::ostream &os) { write_timing_jsonl(os, result.runs); }));
    write_atomic(dir / "problem.edges", render([&](std::ostream &os) {
                     os << "qubits " << result.problem.num_vars << '\n';
                     for (const Edge &e : result.problem.edges) {
                         os << e.u << ' ' << e.v << '\n';
                     }
                 }));
    for (const RunRecord &r : result.runs) {
        const std::string stem = run_stem(r);
        write_atomic(dir / "traces" / (stem + ".csv"),
                     render([&](std::ostream &os) { write_trace_csv(os, r.trace); }));
        write_atomic(dir / "allocations" / (stem + ".txt"), render([&](std::ostream &os) {
                         os << fmt::format("# requested {} achieved {}\n", r.requested, r.achieved);
                         for (const Allocation &a : r.allocations) {
                             os << format_allocation(a) << '\n';
                         }
                     }));
    }
}

SensitivityResult sensitivity_run(ExperimentConfig config, size_t instances, double min_utilization) {
    if (config.arch.kind != ArchitectureSpec::Kind::Grid) {
        throw InputError("the sensitivity study runs on a grid architecture");
    }
    if (instances < 2) {
        throw InputError("the sensitivity study needs M >= 2");
    }
    const size_t qubits = config.arch.width * config.arch.height;
    const double utilization = static_cast<double>(instances * config.width) / static_cast<double>(qubits);
    if (utilization < min_utilization) {
        throw InputError(fmt::format("M = {} of width {} uses {:.3f} of the device, below the {:.3f} target",
                                     instances, config.width, utilization, min_utilization));
    }
    config.noise_models = {NoiseModel::Pauli};
    config.ranges.two_qubit = kSensitivityTwoQubitRange;
    config.policies.resize(1);
    config.layers.resize(1);
    config.samples.resize(1);
    config.instances = {instances};

    SensitivityResult out;
    out.instances = instances;
    out.utilization = utilization;
    out.experiment = run_experiment(config);
    std::map<size_t, const RunRecord *> single, multi;
    for (const RunRecord &r : out.experiment.runs) {
        (r.requested == 1 ? single : multi)[r.repetition] = &r;
    }
    for (const auto &[rep, r] : multi) {
        out.speedup.push_back(r->speedup);
        out.ratio_gap.push_back(single.at(rep)->plateau_ratio - r->plateau_ratio);
        out.slowdown.push_back(r->timing.slowdown);
    }
    return out;
}

}  // namespace cqcs
