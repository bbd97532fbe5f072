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

#include "cqcs/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "cqcs/parallel.hpp"

namespace cqcs {

namespace {

using namespace std::complex_literals;

constexpr Amplitude kI{0.0, 1.0};

struct Matrix2 {
    Amplitude m[4];
};

Matrix2 hadamard() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {{s, s, s, -s}};
}

Matrix2 rx(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {{c, -kI * s, -kI * s, c}};
}

std::pair<Amplitude, Amplitude> rz(double theta) {
    return {std::polar(1.0, -theta / 2), std::polar(1.0, theta / 2)};
}

Matrix2 multiply_diag_left(std::pair<Amplitude, Amplitude> d, const Matrix2 &a) {
    return {{d.first * a.m[0], d.first * a.m[1], d.second * a.m[2], d.second * a.m[3]}};
}

void check_rate(double r, const char *what) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw std::invalid_argument(fmt::format("{} {} outside [0, 1)", what, r));
    }
}

void apply_pauli(StateVector &state, unsigned q, uint64_t which) {
    static const Amplitude x[4] = {0.0, 1.0, 1.0, 0.0};
    static const Amplitude y[4] = {0.0, -kI, kI, 0.0};
    switch (which) {
        case 0: state.apply_matrix(q, x); break;
        case 1: state.apply_matrix(q, y); break;
        default: state.apply_diagonal(q, 1.0, -1.0); break;
    }
}

void apply_damping(StateVector &state, unsigned q, double gamma, double lambda, Rng &rng) {
    const double p1 = state.excited_probability(q);
    const double p_decay = gamma * p1;
    const double p_dephase = (1.0 - gamma) * lambda * p1;
    const double u = rng.uniform();
    if (u < p_decay) {
        const double s = std::sqrt(gamma / p_decay);
        const Amplitude k1[4] = {0.0, s, 0.0, 0.0};
        state.apply_matrix(q, k1);
    } else if (u < p_decay + p_dephase) {
        state.apply_diagonal(q, 0.0, std::sqrt((1.0 - gamma) * lambda / p_dephase));
    } else {
        const double p_none = std::max(0.0, 1.0 - p_decay - p_dephase);
        const double inv = 1.0 / std::sqrt(p_none);
        state.apply_diagonal(q, inv, std::sqrt((1.0 - gamma) * (1.0 - lambda)) * inv);
    }
}

// ---------------------------------------------------------------------------
// Execution plan: the routed circuit lowered to kernel calls plus the noise
// sites of each cycle.

struct Op {
    enum class Kind : uint8_t { Matrix, Diagonal, Cnot, Swap };
    Kind kind = Kind::Matrix;
    unsigned a = 0;
    unsigned b = 0;
    Amplitude m[4] = {};
};

struct Site {
    unsigned pos = 0;
    double rate = 0.0;
};

// prod over set bits q of factor[q], as two half-index lookup tables.
class BitProductTable {
  public:
    BitProductTable() = default;
    BitProductTable(size_t width, std::span<const double> factor) : low_bits_(static_cast<unsigned>(width / 2)) {
        auto fill = [&](std::vector<double> &table, unsigned first, unsigned count) {
            table.assign(size_t{1} << count, 1.0);
            for (size_t k = 1; k < table.size(); ++k) {
                const unsigned b = static_cast<unsigned>(std::countr_zero(k));
                table[k] = table[k & (k - 1)] * factor[first + b];
            }
        };
        fill(low_, 0, low_bits_);
        fill(high_, low_bits_, static_cast<unsigned>(width) - low_bits_);
    }

    double operator()(size_t k) const { return low_[k & ((size_t{1} << low_bits_) - 1)] * high_[k >> low_bits_]; }

  private:
    unsigned low_bits_ = 0;
    std::vector<double> low_;
    std::vector<double> high_;
};

// No-jump amplitude factors of a run of damping sites with gamma = lambda = r:
// |1> picks up (1 - r) per site.
BitProductTable no_jump_table(size_t width, std::span<const Site> sites) {
    std::vector<double> factor(width, 1.0);
    for (const Site &site : sites) {
        factor[site.pos] *= 1.0 - site.rate;
    }
    return BitProductTable(width, factor);
}

struct Cycle {
    std::vector<Op> ops;
    std::vector<Site> sites;
    BitProductTable no_jump;  // damping model only
};

struct Plan {
    size_t width = 0;
    size_t outcome_width = 0;
    NoiseModel model = NoiseModel::Noiseless;
    std::vector<Cycle> cycles;
    std::vector<int> cbit;            // per position, -1 if unmeasured
    std::vector<double> flip_rate;    // per position
    bool has_sites = false;
};

void apply_op(StateVector &s, const Op &op) {
    switch (op.kind) {
        case Op::Kind::Matrix: s.apply_matrix(op.a, op.m); break;
        case Op::Kind::Diagonal: s.apply_diagonal(op.a, op.m[0], op.m[1]); break;
        case Op::Kind::Cnot: s.apply_cnot(op.a, op.b); break;
        case Op::Kind::Swap: s.apply_swap(op.a, op.b); break;
    }
}

Op matrix_op(unsigned q, const Matrix2 &m) {
    Op op{.kind = Op::Kind::Matrix, .a = q};
    std::copy(std::begin(m.m), std::end(m.m), op.m);
    return op;
}

Op diagonal_op(unsigned q, std::pair<Amplitude, Amplitude> d) {
    Op op{.kind = Op::Kind::Diagonal, .a = q};
    op.m[0] = d.first;
    op.m[1] = d.second;
    return op;
}

Plan build_plan(const RoutedCircuit &routed, const NoiseProfile &profile) {
    const Circuit &circuit = routed.circuit;
    Plan plan;
    plan.width = circuit.width();
    plan.model = profile.model;
    plan.cbit.assign(plan.width, -1);
    plan.flip_rate.assign(plan.width, 0.0);
    if (plan.width > kMaxSimulatedWidth) {
        throw std::invalid_argument(fmt::format("cannot simulate {} qubits (limit {})", plan.width, kMaxSimulatedWidth));
    }
    if (routed.physical.size() != plan.width) {
        throw std::invalid_argument("routed circuit has no physical qubit for every position");
    }
    for (Qubit p : routed.physical) {
        if (p >= profile.num_qubits()) {
            throw std::invalid_argument(fmt::format("noise profile does not cover physical qubit {}", p));
        }
    }

    const NoiseModel model = profile.model;
    const bool coherent = model == NoiseModel::Coherent;
    const bool stochastic = model == NoiseModel::Pauli || model == NoiseModel::Apd;
    auto phys = [&](unsigned pos) { return routed.physical[pos]; };
    auto eps = [&](unsigned pos) { return coherent ? profile.coherent_angle[phys(pos)] : 0.0; };
    auto two_qubit_rate = [&](unsigned a, unsigned b) {
        try {
            return profile.two_qubit(phys(a), phys(b));
        } catch (const std::out_of_range &) {
            throw std::invalid_argument(
                fmt::format("two-qubit gate on uncoupled physical qubits {}-{}", phys(a), phys(b)));
        }
    };

    const auto &gates = circuit.gates();
    for (const auto &layer : layer_circuit(circuit)) {
        if (gates[layer.front()].kind == GateKind::MEASURE) {
            for (size_t gi : layer) {
                const Gate &g = gates[gi];
                plan.cbit[g.q0] = static_cast<int>(g.cbit);
                plan.outcome_width = std::max<size_t>(plan.outcome_width, g.cbit + 1);
                if (model != NoiseModel::Noiseless) {
                    plan.flip_rate[g.q0] = profile.measurement_error[phys(g.q0)];
                }
            }
            continue;
        }
        Cycle cycle;
        auto add_site = [&](unsigned pos, double rate) {
            if (stochastic && rate > 0.0) {
                cycle.sites.push_back({pos, rate});
            }
        };
        for (size_t gi : layer) {
            const Gate &g = gates[gi];
            switch (g.kind) {
                case GateKind::H:
                    cycle.ops.push_back(
                        matrix_op(g.q0, coherent ? multiply_diag_left(rz(eps(g.q0)), hadamard()) : hadamard()));
                    add_site(g.q0, profile.single_qubit_error[phys(g.q0)]);
                    break;
                case GateKind::RX:
                    cycle.ops.push_back(matrix_op(g.q0, rx(g.angle + eps(g.q0))));
                    add_site(g.q0, profile.single_qubit_error[phys(g.q0)]);
                    break;
                case GateKind::RZ:
                    cycle.ops.push_back(diagonal_op(g.q0, rz(g.angle + eps(g.q0))));
                    add_site(g.q0, profile.single_qubit_error[phys(g.q0)]);
                    break;
                case GateKind::CNOT:
                case GateKind::SWAP: {
                    const bool is_swap = g.kind == GateKind::SWAP;
                    cycle.ops.push_back({.kind = is_swap ? Op::Kind::Swap : Op::Kind::Cnot, .a = g.q0, .b = g.q1});
                    if (coherent) {
                        cycle.ops.push_back(diagonal_op(g.q0, rz(eps(g.q0))));
                        cycle.ops.push_back(diagonal_op(g.q1, rz(eps(g.q1))));
                    }
                    const double r = two_qubit_rate(g.q0, g.q1);
                    for (int rep = 0; rep < (is_swap ? 3 : 1); ++rep) {
                        add_site(g.q0, r);
                        add_site(g.q1, r);
                    }
                    break;
                }
                case GateKind::MEASURE:
                    throw std::invalid_argument("measurement before the final cycle");
            }
        }
        for (unsigned pos = 0; pos < plan.width; ++pos) {
            add_site(pos, profile.single_qubit_error[phys(pos)]);
        }
        if (model == NoiseModel::Apd) {
            cycle.no_jump = no_jump_table(plan.width, cycle.sites);
        }
        plan.has_sites = plan.has_sites || !cycle.sites.empty();
        plan.cycles.push_back(std::move(cycle));
    }
    if (plan.outcome_width == 0) {
        // Unmeasured circuit: report every position under its own index.
        for (unsigned pos = 0; pos < plan.width; ++pos) {
            plan.cbit[pos] = static_cast<int>(pos);
        }
        plan.outcome_width = plan.width;
    }
    for (double r : plan.flip_rate) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw std::invalid_argument(fmt::format("measurement error {} outside [0, 1]", r));
        }
    }
    return plan;
}

// Trajectory draw for the damping sites of one cycle. Every no-jump operator
// is diagonal, so the chance that no site jumps is one weighted norm; the
// sites are only walked one by one, to place the first jump, when a jump
// occurs. The jump type ratio gamma : (1 - gamma) lambda does not depend on
// the state.
void damping_cycle(StateVector &state, const Cycle &cycle, Rng &rng) {
    std::span<Amplitude> amps = state.amplitudes();
    std::span<const Site> sites = cycle.sites;
    bool first = true;
    while (!sites.empty()) {
        const BitProductTable table = first ? BitProductTable{} : no_jump_table(state.num_qubits(), sites);
        const BitProductTable &t = first ? cycle.no_jump : table;
        first = false;
        double survive = 0.0;
        for (size_t k = 0; k < amps.size(); ++k) {
            const double f = t(k);
            survive += std::norm(amps[k]) * f * f;
        }
        const double u = rng.uniform();
        if (u < survive) {
            const double inv = 1.0 / std::sqrt(survive);
            for (size_t k = 0; k < amps.size(); ++k) {
                amps[k] *= t(k) * inv;
            }
            return;
        }
        double norm = 1.0;
        for (size_t j = 0;; ++j) {
            const Site &site = sites[j];
            const double keep = 1.0 - site.rate;
            const double p1 = state.excited_probability(site.pos);
            const double after = norm - p1 * (1.0 - keep * keep);
            if (after > u) {
                state.apply_diagonal(site.pos, 1.0, keep);
                norm = after;
                if (j + 1 == sites.size()) {
                    // Rounding pushed u past the batched survival mass.
                    const double inv = 1.0 / std::sqrt(norm);
                    for (Amplitude &a : amps) {
                        a *= inv;
                    }
                    return;
                }
                continue;
            }
            const double gamma = site.rate;
            const double scale = 1.0 / std::sqrt(p1);
            if (rng.uniform() * (gamma + (1.0 - gamma) * gamma) < gamma) {
                const Amplitude lower[4] = {0.0, scale, 0.0, 0.0};
                state.apply_matrix(site.pos, lower);
            } else {
                state.apply_diagonal(site.pos, 0.0, scale);
            }
            sites = sites.subspan(j + 1);
            break;
        }
    }
}

uint64_t readout(const Plan &plan, uint64_t index, Rng &rng) {
    uint64_t outcome = 0;
    for (unsigned pos = 0; pos < plan.width; ++pos) {
        if (plan.cbit[pos] < 0) {
            continue;
        }
        uint64_t bit = (index >> pos) & 1U;
        if (plan.flip_rate[pos] > 0.0 && rng.uniform() < plan.flip_rate[pos]) {
            bit ^= 1U;
        }
        outcome |= bit << plan.cbit[pos];
    }
    return outcome;
}

size_t sample_index(std::span<const double> probs, double u) {
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    double target = u * total;
    for (size_t i = 0; i < probs.size(); ++i) {
        target -= probs[i];
        if (target < 0.0) {
            return i;
        }
    }
    // Rounding left a sliver of mass: return the last populated outcome.
    for (size_t i = probs.size(); i-- > 0;) {
        if (probs[i] > 0.0) {
            return i;
        }
    }
    return 0;
}

size_t sample_cdf(std::span<const double> cdf, double u) {
    const double target = u * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    size_t i = static_cast<size_t>(it - cdf.begin());
    if (i == cdf.size()) {
        i = cdf.size() - 1;
    }
    // Skip zero-probability entries left by a tie at the boundary.
    while (i > 0 && cdf[i] == cdf[i - 1]) {
        --i;
    }
    return i;
}

struct Event {
    size_t cycle;
    unsigned pos;
    uint64_t pauli;
};

constexpr size_t kCheckpointBudgetBytes = size_t{128} << 20;
constexpr size_t kShotBlock = 128;

}  // namespace

// ---------------------------------------------------------------------------

StateVector::StateVector(size_t num_qubits, const KernelTable &kernels)
    : num_qubits_(num_qubits), kernels_(&kernels) {
    if (num_qubits > kMaxSimulatedWidth) {
        throw std::invalid_argument(fmt::format("cannot simulate {} qubits (limit {})", num_qubits, kMaxSimulatedWidth));
    }
    amps_.assign(size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::reset() {
    std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::assign(std::span<const Amplitude> amps) {
    if (amps.size() != amps_.size()) {
        throw std::invalid_argument("state size mismatch");
    }
    std::copy(amps.begin(), amps.end(), amps_.begin());
}

void StateVector::apply_gate(const Gate &gate) {
    switch (gate.kind) {
        case GateKind::H: apply_matrix(gate.q0, hadamard().m); break;
        case GateKind::RX: apply_matrix(gate.q0, rx(gate.angle).m); break;
        case GateKind::RZ: {
            auto [d0, d1] = rz(gate.angle);
            apply_diagonal(gate.q0, d0, d1);
            break;
        }
        case GateKind::CNOT: apply_cnot(gate.q0, gate.q1); break;
        case GateKind::SWAP: apply_swap(gate.q0, gate.q1); break;
        case GateKind::MEASURE: throw std::invalid_argument("measurement is not a unitary gate");
    }
}

double StateVector::norm_squared() const {
    std::vector<double> scratch(dim());
    return kernels_->probabilities(amps_.data(), dim(), scratch.data());
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> out(dim());
    kernels_->probabilities(amps_.data(), dim(), out.data());
    return out;
}

void apply_channel(StateVector &state, std::span<const unsigned> qubits, const Channel &channel, Rng &rng) {
    for (unsigned q : qubits) {
        if (q >= state.num_qubits()) {
            throw std::invalid_argument(fmt::format("channel on qubit {} outside the state", q));
        }
    }
    if (const auto *pauli = std::get_if<PauliChannel>(&channel)) {
        check_rate(pauli->rate, "Pauli rate");
        for (unsigned q : qubits) {
            if (rng.uniform() < pauli->rate) {
                apply_pauli(state, q, rng.index(3));
            }
        }
        return;
    }
    const auto &damping = std::get<DampingChannel>(channel);
    if (!(damping.gamma >= 0.0 && damping.gamma <= 1.0) || !(damping.lambda >= 0.0 && damping.lambda <= 1.0)) {
        throw std::invalid_argument("damping parameters outside [0, 1]");
    }
    for (unsigned q : qubits) {
        apply_damping(state, q, damping.gamma, damping.lambda, rng);
    }
}

std::string format_bitstring(uint64_t outcome, size_t width) {
    std::string s(width, '0');
    for (size_t q = 0; q < width; ++q) {
        if ((outcome >> q) & 1U) {
            s[q] = '1';
        }
    }
    return s;
}

void write_shot_dump(std::ostream &out, const ShotBatch &batch) {
    for (uint64_t o : batch.outcomes) {
        out << format_bitstring(o, batch.width) << '\n';
    }
}

ShotBatch run_shots(const RoutedCircuit &routed, const NoiseProfile &profile, size_t shots,
                    const ShotOptions &options) {
    if (shots == 0) {
        throw std::invalid_argument("at least one shot is required");
    }
    const Plan plan = build_plan(routed, profile);
    const size_t dim = size_t{1} << plan.width;
    const bool damping = plan.model == NoiseModel::Apd && plan.has_sites;
    const bool pauli = plan.model == NoiseModel::Pauli && plan.has_sites;

    // Noise-free evolution, with checkpoints for replaying Pauli trajectories
    // from their first error.
    const size_t num_cycles = plan.cycles.size();
    size_t stride = 1;
    if (pauli) {
        const size_t bytes = (num_cycles + 1) * dim * sizeof(Amplitude);
        stride = std::max<size_t>(1, (bytes + kCheckpointBudgetBytes - 1) / kCheckpointBudgetBytes);
    }
    std::vector<std::vector<Amplitude>> checkpoints;  // checkpoints[k] = state before cycle k * stride
    std::vector<double> ideal_probs;
    if (!damping) {
        StateVector s(plan.width);
        for (size_t c = 0; c < num_cycles; ++c) {
            if (pauli && c % stride == 0) {
                checkpoints.emplace_back(s.amplitudes().begin(), s.amplitudes().end());
            }
            for (const Op &op : plan.cycles[c].ops) {
                apply_op(s, op);
            }
        }
        ideal_probs = s.probabilities();
    }
    std::vector<double> ideal_cdf(ideal_probs.size());
    std::partial_sum(ideal_probs.begin(), ideal_probs.end(), ideal_cdf.begin());

    ShotBatch batch;
    batch.width = plan.outcome_width;
    batch.outcomes.resize(shots);
    const size_t blocks = (shots + kShotBlock - 1) / kShotBlock;

    parallel_for(blocks, options.workers, [&](size_t block) {
        std::optional<StateVector> state;
        std::vector<double> probs;
        std::vector<Event> events;
        const size_t end = std::min(shots, (block + 1) * kShotBlock);
        for (size_t i = block * kShotBlock; i < end; ++i) {
            Rng rng(derive_seed(options.seed, {options.first_shot_index + i}));
            if (!state) {
                state.emplace(plan.width);
                probs.resize(dim);
            }
            std::span<const double> dist;
            if (damping) {
                state->reset();
                for (const Cycle &cycle : plan.cycles) {
                    for (const Op &op : cycle.ops) {
                        apply_op(*state, op);
                    }
                    damping_cycle(*state, cycle, rng);
                }
                state->kernels().probabilities(state->amplitudes().data(), dim, probs.data());
                dist = probs;
            } else if (pauli) {
                events.clear();
                for (size_t c = 0; c < num_cycles; ++c) {
                    for (const Site &site : plan.cycles[c].sites) {
                        if (rng.uniform() < site.rate) {
                            events.push_back({c, site.pos, rng.index(3)});
                        }
                    }
                }
                if (!events.empty()) {
                    const size_t start = events.front().cycle / stride;
                    state->assign(checkpoints[start]);
                    auto next = events.begin();
                    for (size_t c = start * stride; c < num_cycles; ++c) {
                        for (const Op &op : plan.cycles[c].ops) {
                            apply_op(*state, op);
                        }
                        for (; next != events.end() && next->cycle == c; ++next) {
                            apply_pauli(*state, next->pos, next->pauli);
                        }
                    }
                    state->kernels().probabilities(state->amplitudes().data(), dim, probs.data());
                    dist = probs;
                }
            }
            const size_t index = dist.empty() ? sample_cdf(ideal_cdf, rng.uniform()) : sample_index(dist, rng.uniform());
            batch.outcomes[i] = readout(plan, index, rng);
        }
    });
    return batch;
}

std::vector<double> exact_distribution(const Circuit &circuit) {
    if (circuit.width() > kMaxExactWidth) {
        throw std::invalid_argument(
            fmt::format("exact distribution limited to {} qubits, got {}", kMaxExactWidth, circuit.width()));
    }
    StateVector s(circuit.width());
    for (const Gate &g : circuit.gates()) {
        if (g.kind != GateKind::MEASURE) {
            s.apply_gate(g);
        }
    }
    return s.probabilities();
}

}  // namespace cqcs
