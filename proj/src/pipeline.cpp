// Copyright 2026 The rqaoa-wireless Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "rqw/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "rqw/errors.hpp"

namespace rqw {

const char* to_string(CoreSolver solver) {
    switch (solver) {
        case CoreSolver::rqaoa: return "rqaoa";
        case CoreSolver::qaoa_sample_best: return "qaoa_sample_best";
        case CoreSolver::exact: return "exact";
        case CoreSolver::greedy: return "greedy";
    }
    return "unknown";
}

CoreSolver core_solver_from_string(const std::string& name) {
    for (auto s : {CoreSolver::rqaoa, CoreSolver::qaoa_sample_best, CoreSolver::exact, CoreSolver::greedy}) {
        if (name == to_string(s)) return s;
    }
    throw ConfigError("unknown core solver '" + name + "'");
}

void PipelineConfig::validate() const {
    if (core_size < 1) throw ConfigError("core size must be at least one");
    if (sample_shots < 1) throw ConfigError("sample_shots must be at least one");
    rqaoa.validate();
    presolve.validate();
}

std::vector<Index> select_core(const ChannelAssignmentInstance& inst, std::size_t core_size) {
    if (core_size > inst.num_users()) throw ConfigError("core size exceeds the user count");
    auto order = greedy_order(inst, UserOrder::weighted_degree);
    order.resize(core_size);
    return order;
}

RestrictedInstance restrict_instance(const ChannelAssignmentInstance& inst, const std::vector<Index>& users) {
    std::map<Index, Index> local;
    for (Index a = 0; a < users.size(); ++a) {
        if (users[a] >= inst.num_users()) throw InvalidIndexError("user " + std::to_string(users[a]) + " out of range");
        if (!local.emplace(users[a], a).second) throw ConfigError("duplicate user in subset");
    }
    RestrictedInstance out{ChannelAssignmentInstance(users.size(), inst.num_channels()), users};
    for (Index a = 0; a < users.size(); ++a) {
        for (const auto& [v, w] : inst.adjacency(users[a])) {
            const auto it = local.find(v);
            if (it == local.end() || it->second <= a) continue;
            if (inst.per_channel()) {
                for (Index c = 0; c < inst.num_channels(); ++c) out.instance.set_channel_weight(a, it->second, c, w[c]);
            } else {
                out.instance.set_weight(a, it->second, w[0]);
            }
        }
    }
    if (inst.capacities()) out.instance.set_capacities(*inst.capacities());
    out.instance.seed = inst.seed;
    out.instance.metadata = inst.metadata;
    return out;
}

std::vector<ConstraintBlock> blocks_after(const std::vector<ConstraintBlock>& blocks, const EliminationRecord& record) {
    std::map<Index, const EliminationEntry*> by_var;
    for (const auto& e : record.entries()) by_var[e.eliminated()] = &e;
    std::vector<ConstraintBlock> out;
    for (const auto& block : blocks) {
        ConstraintBlock next;
        long target = static_cast<long>(block.target);
        bool keep = true;
        for (Index v : block.vars) {
            const auto it = by_var.find(v);
            if (it == by_var.end()) {
                next.vars.push_back(v);
            } else if (const auto* fix = std::get_if<Fix>(&it->second->relation)) {
                target -= bit_of_spin(fix->sign);
            } else {
                keep = false;
            }
        }
        if (!keep || next.vars.empty() || target < 0 || target > static_cast<long>(next.vars.size())) continue;
        next.target = static_cast<std::size_t>(target);
        out.push_back(std::move(next));
    }
    return out;
}

double delta_norm(double objective, double reference) {
    const double diff = std::abs(objective - reference);
    return reference > 0.0 ? diff / reference : diff;
}

double scaled_ratio(double energy, double best, double worst) {
    if (worst == best) return 1.0;
    return (worst - energy) / (worst - best);
}

void attach_reference_metrics(RunMetrics& metrics, const ChannelAssignmentInstance& inst,
                              const GreedyConfig& greedy, bool want_scaled_ratio) {
    metrics.reference = objective_value(greedy_assign(inst, greedy), inst);
    metrics.delta_norm = delta_norm(metrics.objective, metrics.reference);
    metrics.delta_is_absolute = !(metrics.reference > 0.0);
    if (want_scaled_ratio && metrics.feasible && inst.num_users() * inst.num_channels() <= kScaledRatioMaxBits &&
        assignment_space_size(inst) <= kBruteForceLimit) {
        const auto bf = brute_force(inst);
        metrics.scaled_ratio = scaled_ratio(metrics.objective, bf.objective, bf.worst);
    }
}

Summary summarize(const std::vector<double>& values) {
    Summary s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

double feasibility_rate(const std::vector<bool>& feasible) {
    if (feasible.empty()) return 0.0;
    const auto n = std::count(feasible.begin(), feasible.end(), true);
    return static_cast<double>(n) / static_cast<double>(feasible.size());
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Blocks a QAOA circuit can carry directly: at least two members and a
/// target strictly between 0 and the block size.
std::vector<ConstraintBlock> circuit_blocks(const std::vector<ConstraintBlock>& blocks) {
    std::vector<ConstraintBlock> out;
    for (const auto& b : blocks) {
        if (b.vars.size() >= 2 && b.target > 0 && b.target < b.vars.size()) out.push_back(b);
    }
    return out;
}

bool needs_blocks(const OptimizerConfig& qaoa) { return is_xy(qaoa.mixer) || qaoa.init != InitState::plus; }

SpinAssignment sample_best(const IsingInstance& ising, OptimizerConfig qc, std::size_t shots) {
    if (ising.empty()) return {};
    const QubitLayout layout = QubitLayout::of(ising);
    if (layout.size() > kMaxQubits) throw TooLargeError("core needs more qubits than the simulator allows");
    const QaoaCircuit circuit(ising, layout, qc);
    const auto opt = optimize(circuit, qc);
    const StateVector psi = circuit.prepare(opt.params);
    std::mt19937_64 rng(qc.seed);
    auto draws = sample(psi, shots, rng);
    std::sort(draws.begin(), draws.end());
    std::uint64_t best = draws.front();
    for (auto b : draws) {
        if (circuit.cost()[b] < circuit.cost()[best]) best = b;
    }
    SpinAssignment out;
    for (std::size_t q = 0; q < layout.size(); ++q) out[layout.var(q)] = ((best >> q) & 1U) ? -1 : +1;
    return out;
}

}  // namespace

PipelineResult run_pipeline(const ChannelAssignmentInstance& inst, const PipelineConfig& config) {
    config.validate();
    const auto t_start = Clock::now();
    const std::size_t U = inst.num_users();
    const std::size_t C = inst.num_channels();

    PipelineResult result{AssignmentMatrix(U, C), {}, {}, {}, std::nullopt};
    result.core_users = select_core(inst, std::min(config.core_size, U));
    const RestrictedInstance sub = restrict_instance(inst, result.core_users);
    auto& m = result.metrics;

    AssignmentMatrix core_x(sub.users.size(), C);
    if (config.solver == CoreSolver::greedy) {
        const auto t_core = Clock::now();
        core_x = greedy_assign(sub.instance, config.greedy);
        m.t_core_ms = ms_since(t_core);
    } else {
        const auto t_presolve = Clock::now();
        const PenaltyConfig penalty = config.penalty.value_or(auto_penalty(sub.instance));
        const QuboModel model = build_qubo(sub.instance, penalty);
        const IsingInstance ising = qubo_to_ising(model.qubo);

        PartialConstraints local;
        for (const auto& [u, c] : config.constraints.forbidden) {
            const auto it = std::find(sub.users.begin(), sub.users.end(), u);
            if (it != sub.users.end()) local.forbidden.emplace_back(static_cast<Index>(it - sub.users.begin()), c);
        }
        std::vector<Fix> wireless;
        if (config.presolve.enable_wireless_prune) {
            wireless = fixes_for_bits(wireless_prune(sub.instance, local), model.layout);
        }
        const PresolveResult pre = presolve_pipeline(ising, config.presolve, wireless);
        result.presolve = pre.summary;
        m.t_presolve_ms = ms_since(t_presolve);

        const auto t_core = Clock::now();
        OptimizerConfig qc = config.rqaoa.qaoa;
        qc.seed = config.seed;
        qc.blocks.clear();
        const auto blocks = blocks_after(one_hot_blocks(model.layout), pre.record);

        SpinAssignment core_spins;
        switch (config.solver) {
            case CoreSolver::rqaoa: {
                RqaoaConfig rq = config.rqaoa;
                if (needs_blocks(qc)) qc.blocks = blocks;
                rq.qaoa = qc;
                if (pre.ising.size() > std::max(rq.n_cutoff, kMaxQubits)) {
                    throw TooLargeError("core needs more qubits than the simulator allows");
                }
                auto run = run_rqaoa(pre.ising, rq);
                core_spins = std::move(run.assignment);
                result.trace = std::move(run.trace);
                m.n_qubits_core = pre.ising.size() > rq.n_cutoff ? pre.ising.size() : 0;
                break;
            }
            case CoreSolver::qaoa_sample_best:
                if (needs_blocks(qc)) qc.blocks = circuit_blocks(blocks);
                core_spins = sample_best(pre.ising, qc, config.sample_shots);
                m.n_qubits_core = pre.ising.size();
                break;
            case CoreSolver::exact:
                core_spins = exact_core_solve(pre.ising, kMaxQubits);
                break;
            case CoreSolver::greedy:
                break;
        }
        const SpinAssignment spins = back_substitute(pre.record, core_spins);
        core_x = decode(bits_from_spins(spins, model.layout), model.layout);
        if (!check_feasibility(core_x, sub.instance).feasible()) {
            core_x = repair(core_x, sub.instance);
            m.repaired = true;
        }
        m.t_core_ms = ms_since(t_core);
    }

    const auto t_extend = Clock::now();
    AssignmentMatrix partial(U, C);
    for (Index a = 0; a < sub.users.size(); ++a) {
        for (Index c = 0; c < C; ++c) {
            if (core_x(a, c)) partial.set(sub.users[a], c, true);
        }
    }
    result.assignment = greedy_extend(inst, partial, config.greedy);
    m.t_extend_ms = ms_since(t_extend);
    m.t_total_ms = ms_since(t_start);

    m.feasible = check_feasibility(result.assignment, inst).feasible();
    if (!m.feasible) throw InfeasibleError("pipeline produced an infeasible assignment");
    m.objective = objective_value(result.assignment, inst);
    attach_reference_metrics(m, inst, config.greedy, config.scaled_ratio);
    return result;
}

}  // namespace rqw
