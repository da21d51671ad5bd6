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

#include "rqw/presolve.hpp"

#include <cmath>
#include <string>

#include "rqw/baselines.hpp"
#include "rqw/errors.hpp"

namespace rqw {

void PresolveConfig::validate() const {
    if (!freeze) return;
    if (!(freeze->threshold > 0.0 && freeze->threshold <= 1.0)) {
        throw ConfigError("freeze threshold must lie in (0, 1]");
    }
    if (freeze->runs < 1) throw ConfigError("freeze needs at least one annealing run");
}

namespace {

void apply_fix(Reduction& r, Index k, Spin sign, Origin origin) {
    r.ising.fix(k, sign);
    r.record.push_back({Fix{k, sign}, origin});
}

/// sum_j |J_ij| for every active spin.
std::map<Index, double> coupling_mass(const IsingInstance& ising) {
    std::map<Index, double> mass;
    for (Index i : ising.active()) mass[i] = 0.0;
    for (const auto& [key, j] : ising.couplings()) {
        mass[key.first] += std::abs(j);
        mass[key.second] += std::abs(j);
    }
    return mass;
}

}  // namespace

Reduction reduce_isolated(const IsingInstance& ising) {
    Reduction r{ising, {}};
    const auto mass = coupling_mass(ising);
    // Fixing an isolated spin touches no other spin, so one pass is a fixpoint.
    for (const auto& [i, m] : mass) {
        if (m == 0.0) apply_fix(r, i, spin_sign(-ising.field(i)), Origin::isolated);
    }
    return r;
}

Reduction reduce_persistency(const IsingInstance& ising) {
    Reduction r{ising, {}};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [i, m] : coupling_mass(r.ising)) {
            const double h = r.ising.field(i);
            if (h != 0.0 && std::abs(h) >= m) {
                apply_fix(r, i, spin_sign(-h), Origin::persistency);
                changed = true;
                break;
            }
        }
    }
    return r;
}

std::vector<FixedBit> wireless_prune(const ChannelAssignmentInstance& inst, const PartialConstraints& constraints) {
    const std::size_t U = inst.num_users();
    const std::size_t C = inst.num_channels();
    std::vector<std::vector<bool>> allowed(U, std::vector<bool>(C, true));
    for (const auto& [u, c] : constraints.forbidden) {
        if (u >= U || c >= C) {
            throw InvalidIndexError("forbidden pair (" + std::to_string(u) + "," + std::to_string(c) +
                                    ") is out of range");
        }
        allowed[u][c] = false;
    }
    auto options = [&](Index u) {
        std::size_t n = 0;
        for (Index c = 0; c < C; ++c) n += allowed[u][c] ? 1 : 0;
        return n;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::size_t> forced_load(C, 0);
        for (Index u = 0; u < U; ++u) {
            const std::size_t n = options(u);
            if (n == 0) throw InfeasibleError("user " + std::to_string(u) + " has no admissible channel");
            if (n == 1) {
                for (Index c = 0; c < C; ++c) forced_load[c] += allowed[u][c] ? 1 : 0;
            }
        }
        for (Index c = 0; c < C; ++c) {
            if (forced_load[c] > inst.capacity(c)) {
                throw InfeasibleError("channel " + std::to_string(c) + " is forced beyond its capacity");
            }
            if (forced_load[c] < inst.capacity(c)) continue;
            // Saturated: nobody else may use c.
            for (Index u = 0; u < U; ++u) {
                if (allowed[u][c] && options(u) > 1) {
                    allowed[u][c] = false;
                    changed = true;
                }
            }
        }
    }

    std::vector<FixedBit> out;
    for (Index u = 0; u < U; ++u) {
        const bool single = options(u) == 1;
        for (Index c = 0; c < C; ++c) {
            if (!allowed[u][c]) {
                out.push_back({u, c, 0});
            } else if (single) {
                out.push_back({u, c, 1});
            }
        }
    }
    return out;
}

std::vector<Fix> fixes_for_bits(const std::vector<FixedBit>& bits, const VariableLayout& layout) {
    std::vector<Fix> out;
    for (const auto& b : bits) {
        if (b.user >= layout.num_users() || b.channel >= layout.num_channels()) {
            throw InvalidIndexError("fixed bit outside the variable layout");
        }
        out.push_back({layout.assignment_index(b.user, b.channel), spin_of_bit(b.value)});
    }
    return out;
}

FreezeResult heuristic_freeze(const IsingInstance& ising, const FreezeConfig& config) {
    PresolveConfig check;
    check.freeze = config;
    check.validate();

    std::map<Index, int> sums;
    for (const auto& [i, h] : ising.fields()) sums[i] = 0;
    for (const auto& [key, j] : ising.couplings()) {
        sums[key.first] = 0;
        sums[key.second] = 0;
    }
    for (std::size_t k = 0; k < config.runs; ++k) {
        AnnealConfig anneal;
        anneal.sweeps = config.sweeps;
        anneal.seed = config.seed + k;
        const auto result = simulated_annealing(ising, anneal);
        for (auto& [i, s] : sums) s += result.spins.at(i);
    }

    FreezeResult out{{ising, {}}, {}};
    for (const auto& [i, s] : sums) {
        const double m = static_cast<double>(s) / static_cast<double>(config.runs);
        out.magnetizations[i] = m;
        if (std::abs(m) >= config.threshold) apply_fix(out.reduction, i, spin_sign(m), Origin::freeze);
    }
    return out;
}

PresolveResult presolve_pipeline(const IsingInstance& ising, const PresolveConfig& config,
                                 const std::vector<Fix>& wireless_fixes) {
    config.validate();
    PresolveResult out{ising, {}, {}, {}};
    auto take = [&](Reduction r, std::size_t& counter) {
        counter += r.record.size();
        out.record.append(r.record);
        out.ising = std::move(r.ising);
        return !r.record.empty();
    };

    if (config.enable_wireless_prune) {
        for (const auto& f : wireless_fixes) {
            if (!out.ising.is_active(f.index)) continue;
            out.ising.fix(f.index, f.sign);
            out.record.push_back({f, Origin::wireless});
            ++out.summary.wireless;
        }
    }

    bool changed = true;
    while (changed) {
        changed = false;
        if (config.enable_isolated) changed |= take(reduce_isolated(out.ising), out.summary.isolated);
        if (config.enable_persistency) changed |= take(reduce_persistency(out.ising), out.summary.persistency);
    }

    if (config.freeze) {
        auto frozen = heuristic_freeze(out.ising, *config.freeze);
        out.magnetizations = std::move(frozen.magnetizations);
        take(std::move(frozen.reduction), out.summary.frozen);
    }
    out.summary.residual = out.ising.size();
    return out;
}

}  // namespace rqw
