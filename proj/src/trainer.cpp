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

#include "cqcs/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "cqcs/error.hpp"
#include "cqcs/reliability.hpp"

namespace cqcs {

double SpsaConfig::stability_constant() const {
    return stability < 0.0 ? 0.1 * static_cast<double>(max_iterations) : stability;
}

void SpsaConfig::validate() const {
    if (!(a > 0.0) || !(c > 0.0)) {
        throw std::invalid_argument("SPSA gains a and c must be positive");
    }
    if (!(alpha > 0.0 && alpha < 1.0) || !(gamma_exp > 0.0 && gamma_exp < 1.0)) {
        throw std::invalid_argument("SPSA decay exponents must lie in (0, 1)");
    }
    if (max_iterations == 0 || samples == 0 || moving_average == 0 || plateau_window == 0) {
        throw std::invalid_argument("SPSA iteration, sample and window counts must be positive");
    }
    if (!(plateau_threshold >= 0.0) || !(plateau_fraction > 0.0 && plateau_fraction <= 1.0)) {
        throw std::invalid_argument("invalid plateau threshold or fraction");
    }
}

SpsaStep spsa_step(std::span<const double> params, size_t k, const SpsaConfig &config, const Objective &f, Rng &rng) {
    const double kk = static_cast<double>(k);
    const double ck = config.c / std::pow(kk + 1.0, config.gamma_exp);
    const double ak = config.a / std::pow(kk + 1.0 + config.stability_constant(), config.alpha);

    std::vector<double> delta(params.size());
    for (double &d : delta) {
        d = rng.bernoulli(0.5) ? 1.0 : -1.0;
    }
    std::vector<double> plus(params.begin(), params.end());
    std::vector<double> minus(params.begin(), params.end());
    for (size_t i = 0; i < params.size(); ++i) {
        plus[i] += ck * delta[i];
        minus[i] -= ck * delta[i];
    }
    SpsaStep step;
    step.f_plus = f(plus);
    step.f_minus = f(minus);
    step.params.assign(params.begin(), params.end());
    const double diff = step.f_plus - step.f_minus;
    for (size_t i = 0; i < params.size(); ++i) {
        step.params[i] += ak * diff / (2.0 * ck * delta[i]);
    }
    return step;
}

namespace {

std::vector<RoutedCircuit> route_all(const Circuit &logical, const AllocationResult &allocation,
                                     const RouterOptions &options) {
    std::vector<RoutedCircuit> routed;
    routed.reserve(allocation.achieved());
    for (const Allocation &a : allocation.allocations) {
        routed.push_back(route(logical, a, options));
    }
    return routed;
}

}  // namespace

TrainingContext prepare_context(const CouplingGraph &graph, const NoiseProfile &base_profile,
                                const ProblemGraph &problem, int optimum, const ContextOptions &options) {
    return prepare_context(graph, base_profile, floyd_warshall(graph, base_profile), problem, optimum, options);
}

TrainingContext prepare_context(const CouplingGraph &graph, const NoiseProfile &base_profile,
                                const PathMatrices &matrices, const ProblemGraph &problem, int optimum,
                                const ContextOptions &options) {
    problem.validate();
    if (options.instances == 0) {
        throw InputError("instance count must be at least 1");
    }
    if (optimum <= 0) {
        throw std::invalid_argument("max-cut optimum must be positive");
    }
    const size_t width = problem.num_vars;
    const Circuit logical = build_qaoa_template(problem, options.layers);

    if (width > graph.num_qubits()) {
        throw InputError(fmt::format("{}-qubit problem does not fit on {} ({} qubits)", width, graph.name(),
                                     graph.num_qubits()));
    }
    TrainingContext ctx;
    ctx.problem = problem;
    ctx.optimum = optimum;
    ctx.layers = options.layers;
    ctx.allocation = allocate_instances(graph, matrices, base_profile, width, options.instances, options.policy,
                                        options.workers);
    if (ctx.allocation.achieved() == 0) {
        throw InputError(fmt::format("no {}-qubit instance fits on {}", width, graph.name()));
    }
    ctx.routed = route_all(logical, ctx.allocation, options.router);

    std::vector<double> latency;
    for (const RoutedCircuit &r : ctx.routed) {
        latency.push_back(sample_latency(r, options.latency));
    }
    double baseline = latency.front();
    if (options.instances > 1) {
        const AllocationResult single =
            allocate_instances(graph, matrices, base_profile, width, 1, options.policy, options.workers);
        baseline = sample_latency(route(logical, single.allocations.front(), options.router), options.latency);
    }
    ctx.timing = iteration_timing(latency, baseline);
    ctx.utilization = static_cast<double>(width * ctx.instances()) / static_cast<double>(graph.num_qubits());
    ctx.profile = effective_noise(base_profile, ctx.utilization);
    return ctx;
}

Evaluation evaluate(const TrainingContext &context, std::span<const double> params, size_t samples, uint64_t seed,
                    size_t workers) {
    if (context.routed.empty()) {
        throw std::invalid_argument("evaluation needs at least one instance");
    }
    const size_t per = shots_per_instance(samples, context.instances());
    Evaluation ev;
    ev.shots.width = context.problem.num_vars;
    ev.shots.outcomes.reserve(per * context.instances());
    for (size_t i = 0; i < context.instances(); ++i) {
        RoutedCircuit bound = context.routed[i];
        bound.circuit = bind_parameters(bound.circuit, params);
        const ShotBatch batch =
            run_shots(bound, context.profile, per, {.seed = seed, .first_shot_index = i * per, .workers = workers});
        ev.shots.outcomes.insert(ev.shots.outcomes.end(), batch.outcomes.begin(), batch.outcomes.end());
    }
    ev.ratio = approximation_ratio(ev.shots.outcomes, context.problem, context.optimum);
    return ev;
}

std::string_view to_string(StopReason reason) {
    return reason == StopReason::Plateau ? "plateau" : "iteration_cap";
}

std::vector<double> moving_average(const TrainingTrace &trace, size_t width) {
    if (width == 0) {
        throw std::invalid_argument("moving-average width must be positive");
    }
    std::vector<double> out(trace.records.size());
    double sum = 0.0;
    for (size_t i = 0; i < trace.records.size(); ++i) {
        sum += trace.records[i].ratio;
        if (i >= width) {
            sum -= trace.records[i - width].ratio;
        }
        out[i] = sum / static_cast<double>(std::min(i + 1, width));
    }
    return out;
}

void summarize_trace(TrainingTrace &trace, const SpsaConfig &config) {
    if (trace.records.empty()) {
        trace.plateau_ratio = 0.0;
        trace.time_to_plateau_us = 0.0;
        return;
    }
    const std::vector<double> ma = moving_average(trace, config.moving_average);
    trace.plateau_ratio = ma.back();
    const double target = config.plateau_fraction * trace.plateau_ratio;
    trace.time_to_plateau_us = trace.records.back().elapsed_us;
    for (size_t i = 0; i < ma.size(); ++i) {
        if (ma[i] >= target) {
            trace.time_to_plateau_us = trace.records[i].elapsed_us;
            break;
        }
    }
}

std::vector<double> initial_parameters(size_t layers, uint64_t seed) {
    Rng rng(seed);
    std::vector<double> flat(2 * layers);
    for (size_t k = 0; k < layers; ++k) {
        flat[k] = rng.uniform(0.0, std::numbers::pi / 4);
    }
    for (size_t k = 0; k < layers; ++k) {
        flat[layers + k] = rng.uniform(0.0, std::numbers::pi / 2);
    }
    return flat;
}

TrainingTrace train(const TrainingContext &context, const SpsaConfig &config, const LatencyModel &latency,
                    std::span<const double> initial, uint64_t seed, size_t workers) {
    config.validate();
    if (initial.size() != 2 * context.layers) {
        throw std::invalid_argument(
            fmt::format("expected {} parameters, got {}", 2 * context.layers, initial.size()));
    }
    const double per_iteration =
        iteration_elapsed(context.timing.slowest_latency, config.samples, context.instances(), latency);

    TrainingTrace trace;
    trace.layers = context.layers;
    Rng perturbation(derive_seed(seed, {0}));
    std::vector<double> params(initial.begin(), initial.end());
    double ma_sum = 0.0;
    std::vector<double> ma;
    for (size_t k = 0; k < config.max_iterations; ++k) {
        size_t side = 0;
        const Objective f = [&](std::span<const double> theta) {
            return evaluate(context, theta, config.samples, derive_seed(seed, {1, k, side++}), workers).ratio;
        };
        SpsaStep step = spsa_step(params, k, config, f, perturbation);
        params = std::move(step.params);

        TraceRecord rec;
        rec.iteration = k + 1;
        rec.elapsed_us = per_iteration * static_cast<double>(k + 1);
        rec.ratio = 0.5 * (step.f_plus + step.f_minus);
        rec.params = params;
        trace.records.push_back(std::move(rec));

        ma_sum += trace.records.back().ratio;
        if (trace.records.size() > config.moving_average) {
            ma_sum -= trace.records[trace.records.size() - 1 - config.moving_average].ratio;
        }
        ma.push_back(ma_sum / static_cast<double>(std::min(trace.records.size(), config.moving_average)));
        const size_t n = ma.size();
        if (n >= config.moving_average + config.plateau_window &&
            ma[n - 1] - ma[n - 1 - config.plateau_window] < config.plateau_threshold) {
            trace.reason = StopReason::Plateau;
            break;
        }
    }
    summarize_trace(trace, config);
    return trace;
}

void write_trace_csv(std::ostream &out, const TrainingTrace &trace) {
    out << "iter,elapsed_us,approx_ratio";
    for (size_t k = 0; k < trace.layers; ++k) {
        out << ",beta_" << k;
    }
    for (size_t k = 0; k < trace.layers; ++k) {
        out << ",gamma_" << k;
    }
    out << '\n';
    for (const TraceRecord &r : trace.records) {
        out << fmt::format("{},{},{}", r.iteration, r.elapsed_us, r.ratio);
        for (double v : r.params) {
            out << ',' << fmt::format("{}", v);
        }
        out << '\n';
    }
}

}  // namespace cqcs
