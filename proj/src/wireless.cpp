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

#include "rqw/wireless.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "rqw/errors.hpp"

namespace rqw {

ChannelAssignmentInstance::ChannelAssignmentInstance(std::size_t num_users, std::size_t num_channels)
    : num_users_(num_users), num_channels_(num_channels), adjacency_(num_users) {
    if (num_users == 0 || num_channels == 0) throw ParameterError("need at least one user and one channel");
}

void ChannelAssignmentInstance::check_pair(Index u, Index v) const {
    if (u >= num_users_ || v >= num_users_) {
        throw InvalidIndexError("user pair (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw ParameterError("self-interference on user " + std::to_string(u));
}

void ChannelAssignmentInstance::set_weight(Index u, Index v, double w) {
    check_pair(u, v);
    if (per_channel_) throw ConfigError("instance uses per-channel weights");
    if (!(w >= 0.0)) throw ParameterError("interference weights must be non-negative");
    if (w == 0.0) {
        adjacency_[u].erase(v);
        adjacency_[v].erase(u);
        return;
    }
    adjacency_[u][v] = {w};
    adjacency_[v][u] = {w};
}

void ChannelAssignmentInstance::set_channel_weight(Index u, Index v, Index c, double w) {
    check_pair(u, v);
    if (c >= num_channels_) throw InvalidIndexError("channel " + std::to_string(c) + " out of range");
    if (!(w >= 0.0)) throw ParameterError("interference weights must be non-negative");
    if (!per_channel_) {
        if (num_edges() != 0) throw ConfigError("instance already uses channel-independent weights");
        per_channel_ = true;
    }
    auto& row = adjacency_[u][v];
    if (row.empty()) row.assign(num_channels_, 0.0);
    row[c] = w;
    if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; })) {
        adjacency_[u].erase(v);
        adjacency_[v].erase(u);
        return;
    }
    adjacency_[v][u] = row;
}

double ChannelAssignmentInstance::weight(Index u, Index v, Index c) const {
    const auto& row = adjacency_.at(u);
    auto it = row.find(v);
    if (it == row.end()) return 0.0;
    return per_channel_ ? it->second[c] : it->second[0];
}

double ChannelAssignmentInstance::weight(Index u, Index v) const {
    const auto& row = adjacency_.at(u);
    auto it = row.find(v);
    if (it == row.end()) return 0.0;
    return *std::max_element(it->second.begin(), it->second.end());
}

std::vector<InterferenceEdge> ChannelAssignmentInstance::edges() const {
    std::vector<InterferenceEdge> out;
    for (Index u = 0; u < num_users_; ++u) {
        for (const auto& [v, w] : adjacency_[u]) {
            if (v > u) out.push_back({u, v, w});
        }
    }
    return out;
}

std::size_t ChannelAssignmentInstance::num_edges() const {
    std::size_t twice = 0;
    for (const auto& row : adjacency_) twice += row.size();
    return twice / 2;
}

void ChannelAssignmentInstance::set_capacities(std::vector<std::size_t> capacities) {
    if (capacities.size() != num_channels_) throw ParameterError("need one capacity per channel");
    const std::size_t total = std::accumulate(capacities.begin(), capacities.end(), std::size_t{0});
    if (total < num_users_) {
        throw InfeasibleError("total capacity " + std::to_string(total) + " is below the user count " +
                              std::to_string(num_users_));
    }
    capacities_ = std::move(capacities);
}

std::size_t ChannelAssignmentInstance::capacity(Index c) const {
    return capacities_ ? (*capacities_)[c] : num_users_;
}

double ChannelAssignmentInstance::weighted_degree(Index u) const {
    const std::size_t lanes = per_channel_ ? num_channels_ : 1;
    std::vector<double> sums(lanes, 0.0);
    for (const auto& [v, w] : adjacency_.at(u)) {
        for (std::size_t c = 0; c < lanes; ++c) sums[c] += w[c];
    }
    return *std::max_element(sums.begin(), sums.end());
}

void PenaltyConfig::validate(const ChannelAssignmentInstance& inst) const {
    if (!(one_hot > 0.0)) throw ConfigError("one-hot penalty A must be positive");
    if (!(capacity >= 0.0)) throw ConfigError("capacity penalty B must be non-negative");
    if (capacity > 0.0 && !inst.has_capacities()) throw ConfigError("capacity penalty B > 0 needs capacities");
}

std::size_t slack_width_for(std::size_t capacity) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < capacity + 1) ++bits;
    return bits;
}

VariableLayout::VariableLayout(std::size_t num_users, std::size_t num_channels, std::vector<std::size_t> slack_widths)
    : num_users_(num_users), num_channels_(num_channels), slack_widths_(std::move(slack_widths)) {
    if (!slack_widths_.empty() && slack_widths_.size() != num_channels_) {
        throw ParameterError("need one slack width per channel");
    }
    size_ = num_users_ * num_channels_;
    for (std::size_t w : slack_widths_) {
        slack_offsets_.push_back(size_);
        size_ += w;
    }
}

Index VariableLayout::slack_index(Index c, std::size_t bit) const {
    if (c >= slack_offsets_.size() || bit >= slack_widths_[c]) throw InvalidIndexError("no such slack bit");
    return slack_offsets_[c] + bit;
}

AssignmentMatrix AssignmentMatrix::from_channels(std::size_t num_channels, const std::vector<Index>& channels) {
    AssignmentMatrix x(channels.size(), num_channels);
    for (Index u = 0; u < channels.size(); ++u) {
        if (channels[u] != kUnassigned) x.set(u, channels[u], true);
    }
    return x;
}

void AssignmentMatrix::clear_row(Index u) {
    std::fill_n(bits_.begin() + static_cast<std::ptrdiff_t>(u * num_channels_), num_channels_, 0);
}

std::size_t AssignmentMatrix::row_sum(Index u) const {
    std::size_t s = 0;
    for (Index c = 0; c < num_channels_; ++c) s += (*this)(u, c);
    return s;
}

std::size_t AssignmentMatrix::channel_load(Index c) const {
    std::size_t s = 0;
    for (Index u = 0; u < num_users_; ++u) s += (*this)(u, c);
    return s;
}

std::vector<Index> AssignmentMatrix::channels() const {
    std::vector<Index> out(num_users_, kUnassigned);
    for (Index u = 0; u < num_users_; ++u) {
        if (row_sum(u) != 1) continue;
        for (Index c = 0; c < num_channels_; ++c) {
            if ((*this)(u, c)) out[u] = c;
        }
    }
    return out;
}

QuboModel build_qubo(const ChannelAssignmentInstance& inst, const PenaltyConfig& penalty) {
    penalty.validate(inst);
    const std::size_t U = inst.num_users();
    const std::size_t C = inst.num_channels();
    std::vector<std::size_t> widths;
    if (penalty.capacity > 0.0) {
        for (Index c = 0; c < C; ++c) widths.push_back(slack_width_for(inst.capacity(c)));
    }
    VariableLayout layout(U, C, widths);
    QuboInstance q(layout.size());

    // A (sum_c x_uc - 1)^2 = A (1 - sum_c x_uc + 2 sum_{c<d} x_uc x_ud)
    const double A = penalty.one_hot;
    for (Index u = 0; u < U; ++u) {
        q.offset += A;
        for (Index c = 0; c < C; ++c) {
            q.add_linear(layout.assignment_index(u, c), -A);
            for (Index d = c + 1; d < C; ++d) {
                q.add_quadratic(layout.assignment_index(u, c), layout.assignment_index(u, d), 2.0 * A);
            }
        }
    }

    for (const auto& e : inst.edges()) {
        for (Index c = 0; c < C; ++c) {
            const double w = inst.per_channel() ? e.weights[c] : e.weights[0];
            if (w != 0.0) q.add_quadratic(layout.assignment_index(e.u, c), layout.assignment_index(e.v, c), w);
        }
    }

    // B (sum_k a_k t_k - K)^2 with a_k = 1 for x_uc and 2^l for slack bit l.
    const double B = penalty.capacity;
    if (B > 0.0) {
        for (Index c = 0; c < C; ++c) {
            const double K = static_cast<double>(inst.capacity(c));
            std::vector<std::pair<Index, double>> terms;
            for (Index u = 0; u < U; ++u) terms.emplace_back(layout.assignment_index(u, c), 1.0);
            for (std::size_t l = 0; l < layout.slack_width(c); ++l) {
                terms.emplace_back(layout.slack_index(c, l), std::ldexp(1.0, static_cast<int>(l)));
            }
            q.offset += B * K * K;
            for (std::size_t a = 0; a < terms.size(); ++a) {
                const auto [ia, wa] = terms[a];
                q.add_linear(ia, B * (wa * wa - 2.0 * K * wa));
                for (std::size_t b = a + 1; b < terms.size(); ++b) {
                    q.add_quadratic(ia, terms[b].first, 2.0 * B * wa * terms[b].second);
                }
            }
        }
    }
    return {std::move(q), std::move(layout)};
}

AssignmentMatrix decode(std::span<const std::uint8_t> bits, const VariableLayout& layout) {
    if (bits.size() != layout.size()) {
        throw DecodeError("bitstring has " + std::to_string(bits.size()) + " bits, layout needs " +
                          std::to_string(layout.size()));
    }
    AssignmentMatrix x(layout.num_users(), layout.num_channels());
    for (Index u = 0; u < layout.num_users(); ++u) {
        for (Index c = 0; c < layout.num_channels(); ++c) x.set(u, c, bits[layout.assignment_index(u, c)] != 0);
    }
    return x;
}

std::vector<std::uint8_t> encode(const AssignmentMatrix& x, const VariableLayout& layout) {
    std::vector<std::uint8_t> bits(layout.size(), 0);
    for (Index u = 0; u < layout.num_users(); ++u) {
        for (Index c = 0; c < layout.num_channels(); ++c) bits[layout.assignment_index(u, c)] = x(u, c);
    }
    return bits;
}

std::vector<std::uint8_t> bits_from_spins(const SpinAssignment& z, const VariableLayout& layout) {
    std::vector<std::uint8_t> bits(layout.size(), 0);
    for (Index i = 0; i < layout.size(); ++i) {
        auto it = z.find(i);
        if (it == z.end()) throw AssignmentIncompleteError("no spin for variable " + std::to_string(i));
        bits[i] = bit_of_spin(it->second);
    }
    return bits;
}

FeasibilityReport check_feasibility(const AssignmentMatrix& x, const ChannelAssignmentInstance& inst) {
    if (x.num_users() != inst.num_users() || x.num_channels() != inst.num_channels()) {
        throw ParameterError("assignment shape does not match the instance");
    }
    FeasibilityReport report;
    for (Index u = 0; u < x.num_users(); ++u) {
        const std::size_t s = x.row_sum(u);
        if (s != 1) report.users.push_back({u, s});
    }
    if (inst.has_capacities()) {
        for (Index c = 0; c < x.num_channels(); ++c) {
            const std::size_t load = x.channel_load(c);
            if (load > inst.capacity(c)) report.channels.push_back({c, load, inst.capacity(c)});
        }
    }
    return report;
}

double incremental_interference(const ChannelAssignmentInstance& inst, const std::vector<Index>& channels, Index u,
                                Index c) {
    double cost = 0.0;
    for (const auto& [v, w] : inst.adjacency(u)) {
        if (channels[v] == c) cost += inst.per_channel() ? w[c] : w[0];
    }
    return cost;
}

AssignmentMatrix repair(const AssignmentMatrix& x, const ChannelAssignmentInstance& inst) {
    const std::size_t U = inst.num_users();
    const std::size_t C = inst.num_channels();
    if (check_feasibility(x, inst).feasible()) return x;

    std::size_t total = 0;
    for (Index c = 0; c < C; ++c) total += inst.capacity(c);
    if (total < U) throw InfeasibleError("total capacity is below the user count");

    std::vector<Index> channels = x.channels();
    std::vector<std::size_t> load(C, 0);
    for (Index u = 0; u < U; ++u) {
        if (channels[u] != kUnassigned) ++load[channels[u]];
    }

    // Evict from overloaded channels, heaviest co-channel contributor first.
    for (Index c = 0; c < C; ++c) {
        while (load[c] > inst.capacity(c)) {
            Index worst = kUnassigned;
            double worst_cost = -1.0;
            for (Index u = 0; u < U; ++u) {
                if (channels[u] != c) continue;
                const double cost = incremental_interference(inst, channels, u, c);
                if (cost >= worst_cost) {
                    worst_cost = cost;
                    worst = u;
                }
            }
            channels[worst] = kUnassigned;
            --load[c];
        }
    }

    for (Index u = 0; u < U; ++u) {
        if (channels[u] != kUnassigned) continue;
        Index best = kUnassigned;
        double best_cost = 0.0;
        for (Index c = 0; c < C; ++c) {
            if (load[c] >= inst.capacity(c)) continue;
            const double cost = incremental_interference(inst, channels, u, c);
            if (best == kUnassigned || cost < best_cost || (cost == best_cost && load[c] < load[best])) {
                best = c;
                best_cost = cost;
            }
        }
        if (best == kUnassigned) throw InfeasibleError("no channel left for user " + std::to_string(u));
        channels[u] = best;
        ++load[best];
    }
    return AssignmentMatrix::from_channels(C, channels);
}

double objective_value(const AssignmentMatrix& x, const ChannelAssignmentInstance& inst) {
    double total = 0.0;
    for (const auto& e : inst.edges()) {
        for (Index c = 0; c < inst.num_channels(); ++c) {
            if (x(e.u, c) && x(e.v, c)) total += inst.per_channel() ? e.weights[c] : e.weights[0];
        }
    }
    return total;
}

std::vector<ConstraintBlock> one_hot_blocks(const VariableLayout& layout) {
    std::vector<ConstraintBlock> blocks;
    for (Index u = 0; u < layout.num_users(); ++u) {
        ConstraintBlock b;
        for (Index c = 0; c < layout.num_channels(); ++c) b.vars.push_back(layout.assignment_index(u, c));
        blocks.push_back(std::move(b));
    }
    return blocks;
}

PenaltyConfig auto_penalty(const ChannelAssignmentInstance& inst) {
    double max_degree = 0.0;
    for (Index u = 0; u < inst.num_users(); ++u) max_degree = std::max(max_degree, inst.weighted_degree(u));
    return {1.0 + max_degree, 0.0};
}

ChannelAssignmentInstance generate_uniform(std::size_t num_users, std::size_t num_channels, int max_weight,
                                           std::uint64_t seed) {
    if (max_weight < 0) throw ParameterError("max_weight must be non-negative");
    ChannelAssignmentInstance inst(num_users, num_channels);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, max_weight);
    for (Index u = 0; u < num_users; ++u) {
        for (Index v = u + 1; v < num_users; ++v) inst.set_weight(u, v, dist(rng));
    }
    inst.seed = seed;
    inst.metadata = "uniform integer weights 0.." + std::to_string(max_weight);
    return inst;
}

ChannelAssignmentInstance generate_demo(std::uint64_t seed) {
    auto inst = generate_uniform(4, 4, 5, seed);
    inst.metadata = "demo";
    return inst;
}

void HotspotParams::validate() const {
    if (!(pathloss_exponent > 0.0)) throw ParameterError("pathloss exponent must be positive");
    if (!(area_side > 0.0)) throw ParameterError("area side must be positive");
    if (!(reference_distance > 0.0)) throw ParameterError("reference distance must be positive");
    if (!(min_distance > 0.0)) throw ParameterError("minimum distance must be positive");
    if (!(position_spread >= 0.0)) throw ParameterError("position spread must be non-negative");
    if (!(shadowing_db >= 0.0)) throw ParameterError("shadowing deviation must be non-negative");
    if (!(weight_floor >= 0.0)) throw ParameterError("weight floor must be non-negative");
}

double pathloss_weight(double distance, double shadowing_db_sample, const HotspotParams& params) {
    const double d = std::max(distance, params.min_distance);
    return std::pow(d / params.reference_distance, -params.pathloss_exponent) *
           std::pow(10.0, shadowing_db_sample / 10.0);
}

namespace {

ChannelAssignmentInstance weights_from_positions(const std::vector<Position>& positions, std::size_t num_channels,
                                                 const HotspotParams& params, std::mt19937_64& rng) {
    ChannelAssignmentInstance inst(positions.size(), num_channels);
    std::normal_distribution<double> shadow(0.0, 1.0);
    for (Index u = 0; u < positions.size(); ++u) {
        for (Index v = u + 1; v < positions.size(); ++v) {
            const double chi = params.shadowing_db * shadow(rng);
            const double d = std::hypot(positions[u].x - positions[v].x, positions[u].y - positions[v].y);
            const double w = pathloss_weight(d, chi, params);
            if (w >= params.weight_floor && w > 0.0) inst.set_weight(u, v, w);
        }
    }
    return inst;
}

}  // namespace

ChannelAssignmentInstance hotspot_from_positions(const std::vector<Position>& positions, std::size_t num_channels,
                                                 const HotspotParams& params, std::uint64_t seed) {
    params.validate();
    std::mt19937_64 rng(seed);
    auto inst = weights_from_positions(positions, num_channels, params, rng);
    inst.seed = seed;
    return inst;
}

ChannelAssignmentInstance generate_hotspot(std::size_t num_users, std::size_t num_channels,
                                           const HotspotParams& params, std::uint64_t seed) {
    params.validate();
    if (num_users == 0 || num_channels == 0) throw ParameterError("need at least one user and one channel");
    const std::size_t hotspots = params.num_hotspots ? params.num_hotspots : (num_users + 7) / 8;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> area(0.0, params.area_side);
    std::uniform_int_distribution<std::size_t> pick(0, hotspots - 1);
    std::normal_distribution<double> spread(0.0, 1.0);

    std::vector<Position> centers(hotspots);
    for (auto& c : centers) {
        c.x = area(rng);
        c.y = area(rng);
    }
    std::vector<Position> users(num_users);
    for (auto& p : users) {
        const auto& c = centers[pick(rng)];
        p.x = c.x + params.position_spread * spread(rng);
        p.y = c.y + params.position_spread * spread(rng);
    }
    auto inst = weights_from_positions(users, num_channels, params, rng);
    inst.seed = seed;
    inst.metadata = "hotspot K_hot=" + std::to_string(hotspots);
    return inst;
}

}  // namespace rqw
