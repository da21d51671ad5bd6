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

#include "rqw/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rqw/errors.hpp"

namespace rqw {

const char* to_string(UserOrder order) { return order == UserOrder::index ? "index" : "weighted_degree"; }

UserOrder user_order_from_string(const std::string& name) {
    if (name == "weighted_degree") return UserOrder::weighted_degree;
    if (name == "index") return UserOrder::index;
    throw ConfigError("unknown user order '" + name + "'");
}

const char* to_string(ChannelTieBreak tie_break) {
    return tie_break == ChannelTieBreak::lowest_index ? "lowest_index" : "least_load";
}

ChannelTieBreak channel_tie_break_from_string(const std::string& name) {
    if (name == "least_load") return ChannelTieBreak::least_load;
    if (name == "lowest_index") return ChannelTieBreak::lowest_index;
    throw ConfigError("unknown channel tie-break '" + name + "'");
}

std::vector<Index> greedy_order(const ChannelAssignmentInstance& inst, UserOrder order) {
    std::vector<Index> users(inst.num_users());
    for (Index u = 0; u < users.size(); ++u) users[u] = u;
    if (order == UserOrder::weighted_degree) {
        std::vector<double> degree(users.size());
        for (Index u = 0; u < users.size(); ++u) degree[u] = inst.weighted_degree(u);
        std::stable_sort(users.begin(), users.end(), [&](Index a, Index b) { return degree[a] > degree[b]; });
    }
    return users;
}

namespace {

void place_remaining(const ChannelAssignmentInstance& inst, std::vector<Index>& channels,
                     std::vector<std::size_t>& load, const GreedyConfig& config) {
    const std::size_t C = inst.num_channels();
    for (Index u : greedy_order(inst, config.order)) {
        if (channels[u] != kUnassigned) continue;
        Index best = kUnassigned;
        double best_cost = 0.0;
        for (Index c = 0; c < C; ++c) {
            if (load[c] >= inst.capacity(c)) continue;
            const double cost = incremental_interference(inst, channels, u, c);
            bool better = best == kUnassigned || cost < best_cost;
            if (!better && cost == best_cost && config.tie_break == ChannelTieBreak::least_load) {
                better = load[c] < load[best];
            }
            if (better) {
                best = c;
                best_cost = cost;
            }
        }
        if (best == kUnassigned) throw InfeasibleError("no feasible channel for user " + std::to_string(u));
        channels[u] = best;
        ++load[best];
    }
}

}  // namespace

AssignmentMatrix greedy_assign(const ChannelAssignmentInstance& inst, const GreedyConfig& config) {
    return greedy_extend(inst, AssignmentMatrix(inst.num_users(), inst.num_channels()), config);
}

AssignmentMatrix greedy_extend(const ChannelAssignmentInstance& inst, const AssignmentMatrix& partial,
                               const GreedyConfig& config) {
    const std::size_t U = inst.num_users();
    const std::size_t C = inst.num_channels();
    if (partial.num_users() != U || partial.num_channels() != C) {
        throw ConfigError("partial assignment does not match the instance shape");
    }
    std::vector<Index> channels(U, kUnassigned);
    std::vector<std::size_t> load(C, 0);
    for (Index u = 0; u < U; ++u) {
        const std::size_t n = partial.row_sum(u);
        if (n > 1) throw InfeasibleError("partial assignment gives user " + std::to_string(u) + " several channels");
        if (n == 0) continue;
        for (Index c = 0; c < C; ++c) {
            if (partial(u, c)) channels[u] = c;
        }
        ++load[channels[u]];
    }
    for (Index c = 0; c < C; ++c) {
        if (load[c] > inst.capacity(c)) {
            throw InfeasibleError("partial assignment overloads channel " + std::to_string(c));
        }
    }
    place_remaining(inst, channels, load, config);
    return AssignmentMatrix::from_channels(C, channels);
}

double assignment_space_size(const ChannelAssignmentInstance& inst) {
    return std::pow(static_cast<double>(inst.num_channels()), static_cast<double>(inst.num_users()));
}

BruteForceResult brute_force(const ChannelAssignmentInstance& inst) {
    const std::size_t U = inst.num_users();
    const std::size_t C = inst.num_channels();
    if (assignment_space_size(inst) > kBruteForceLimit) {
        throw TooLargeError("exhaustive search over " + std::to_string(C) + "^" + std::to_string(U) +
                            " assignments exceeds the limit");
    }
    const auto edges = inst.edges();
    std::vector<Index> channels(U, 0);
    std::vector<Index> best_channels;
    BruteForceResult out{AssignmentMatrix(U, C)};
    std::vector<std::size_t> load(C, 0);
    while (true) {
        std::fill(load.begin(), load.end(), 0);
        bool feasible = true;
        for (Index u = 0; u < U; ++u) {
            if (++load[channels[u]] > inst.capacity(channels[u])) feasible = false;
        }
        if (feasible) {
            double value = 0.0;
            for (const auto& e : edges) {
                const Index c = channels[e.u];
                if (c == channels[e.v]) value += inst.per_channel() ? e.weights[c] : e.weights[0];
            }
            if (out.feasible_count == 0 || value < out.objective) {
                out.objective = value;
                best_channels = channels;
            }
            if (out.feasible_count == 0 || value > out.worst) out.worst = value;
            ++out.feasible_count;
        }
        // Odometer with user 0 most significant, so vectors run in lexicographic order.
        bool done = true;
        for (std::size_t k = U; k-- > 0;) {
            if (++channels[k] < C) {
                done = false;
                break;
            }
            channels[k] = 0;
        }
        if (done) break;
    }
    if (out.feasible_count == 0) throw InfeasibleError("no capacity-feasible assignment exists");
    out.best = AssignmentMatrix::from_channels(C, best_channels);
    return out;
}

void AnnealConfig::validate() const {
    if (t_initial && !(*t_initial > 0.0)) throw ConfigError("initial temperature must be positive");
    if (!(t_final_ratio > 0.0 && t_final_ratio <= 1.0)) throw ConfigError("t_final_ratio must lie in (0, 1]");
}

AnnealResult simulated_annealing(const IsingInstance& ising, const AnnealConfig& config) {
    config.validate();
    const std::vector<Index> vars(ising.active().begin(), ising.active().end());
    const std::size_t n = vars.size();
    auto local = [&](Index v) {
        return static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
    };
    std::vector<double> h(n, 0.0);
    std::vector<std::vector<std::pair<std::size_t, double>>> nbr(n);
    for (const auto& [i, value] : ising.fields()) h[local(i)] = value;
    for (const auto& [key, value] : ising.couplings()) {
        const std::size_t a = local(key.first);
        const std::size_t b = local(key.second);
        nbr[a].emplace_back(b, value);
        nbr[b].emplace_back(a, value);
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<int> z(n);
    for (auto& s : z) s = unit(rng) < 0.5 ? -1 : +1;

    AnnealResult out;
    auto snapshot = [&] {
        for (std::size_t k = 0; k < n; ++k) out.spins[vars[k]] = z[k];
    };
    snapshot();
    double e = ising.energy(out.spins);
    out.energy = e;

    const double t0 = config.t_initial.value_or(ising.max_abs_coefficient());
    const std::size_t sweeps = config.sweeps ? config.sweeps : 100 * n;
    if (n == 0 || t0 <= 0.0 || sweeps == 0) return out;

    const double cool = sweeps > 1 ? std::pow(config.t_final_ratio, 1.0 / static_cast<double>(sweeps - 1)) : 1.0;
    double t = t0;
    for (std::size_t s = 0; s < sweeps; ++s, t *= cool) {
        for (std::size_t k = 0; k < n; ++k) {
            double field = h[k];
            for (const auto& [m, value] : nbr[k]) field += value * z[m];
            const double delta = -2.0 * z[k] * field;
            if (delta <= 0.0 || unit(rng) < std::exp(-delta / t)) {
                z[k] = -z[k];
                e += delta;
                if (e < out.energy - 1e-12) {
                    out.energy = e;
                    snapshot();
                }
            }
        }
    }
    out.energy = ising.energy(out.spins);
    return out;
}

QuboAnnealResult simulated_annealing(const QuboInstance& qubo, const AnnealConfig& config) {
    const auto result = simulated_annealing(qubo_to_ising(qubo), config);
    QuboAnnealResult out;
    out.bits.assign(qubo.num_vars, 0);
    for (const auto& [i, s] : result.spins) out.bits[i] = bit_of_spin(s);
    out.energy = qubo.energy(out.bits);
    return out;
}

AssignmentMatrix anneal_assign(const ChannelAssignmentInstance& inst, const PenaltyConfig& penalty,
                               const AnnealConfig& config) {
    const QuboModel model = build_qubo(inst, penalty);
    const auto result = simulated_annealing(model.qubo, config);
    return repair(decode(result.bits, model.layout), inst);
}

}  // namespace rqw
