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

#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rqw/constraints.hpp"
#include "rqw/ising.hpp"

namespace rqw {

inline constexpr Index kUnassigned = std::numeric_limits<Index>::max();

/// One undirected interference edge; `weights` has one entry for a
/// channel-independent instance and C entries otherwise.
struct InterferenceEdge {
    Index u;
    Index v;
    std::vector<double> weights;
};

/// U users, C orthogonal channels, non-negative co-channel interference
/// weights and optional per-channel capacities.
class ChannelAssignmentInstance {
 public:
    ChannelAssignmentInstance(std::size_t num_users, std::size_t num_channels);

    std::size_t num_users() const { return num_users_; }
    std::size_t num_channels() const { return num_channels_; }
    bool per_channel() const { return per_channel_; }

    /// Channel-independent weight; zero removes the edge.
    void set_weight(Index u, Index v, double w);
    /// Weight for one channel; switches an edge-free instance to per-channel mode.
    void set_channel_weight(Index u, Index v, Index c, double w);

    double weight(Index u, Index v, Index c) const;
    /// Channel-independent weight, or the maximum over channels.
    double weight(Index u, Index v) const;

    /// Neighbor -> weight vector, ascending by neighbor.
    const std::map<Index, std::vector<double>>& adjacency(Index u) const { return adjacency_.at(u); }
    std::vector<InterferenceEdge> edges() const;
    std::size_t num_edges() const;

    /// Per-channel capacities K_c; throws InfeasibleError when sum K_c < U.
    void set_capacities(std::vector<std::size_t> capacities);
    const std::optional<std::vector<std::size_t>>& capacities() const { return capacities_; }
    bool has_capacities() const { return capacities_.has_value(); }
    std::size_t capacity(Index c) const;

    /// max_c sum_v w^(c)_uv.
    double weighted_degree(Index u) const;

    std::uint64_t seed = 0;
    std::string metadata;

 private:
    void check_pair(Index u, Index v) const;

    std::size_t num_users_;
    std::size_t num_channels_;
    bool per_channel_ = false;
    std::vector<std::map<Index, std::vector<double>>> adjacency_;
    std::optional<std::vector<std::size_t>> capacities_;
};

/// A = one-hot penalty, B = capacity penalty.
struct PenaltyConfig {
    double one_hot = 1.0;
    double capacity = 0.0;

    void validate(const ChannelAssignmentInstance& inst) const;
};

/// Maps (user, channel) and (channel, slack bit) to QUBO variable indices.
///
/// Assignment bits come first, row-major: index(u, c) = u * C + c. Slack bits
/// for channel c follow in channel order, bit l carrying weight 2^l.
class VariableLayout {
 public:
    VariableLayout(std::size_t num_users, std::size_t num_channels, std::vector<std::size_t> slack_widths = {});

    std::size_t num_users() const { return num_users_; }
    std::size_t num_channels() const { return num_channels_; }
    std::size_t num_assignment_vars() const { return num_users_ * num_channels_; }
    std::size_t size() const { return size_; }

    Index assignment_index(Index u, Index c) const { return u * num_channels_ + c; }
    Index slack_index(Index c, std::size_t bit) const;
    std::size_t slack_width(Index c) const { return slack_widths_.empty() ? 0 : slack_widths_[c]; }
    const std::vector<std::size_t>& slack_widths() const { return slack_widths_; }

 private:
    std::size_t num_users_;
    std::size_t num_channels_;
    std::vector<std::size_t> slack_widths_;
    std::vector<Index> slack_offsets_;
    std::size_t size_;
};

/// Number of binary slack bits that represent 0..K: ceil(log2(K + 1)).
std::size_t slack_width_for(std::size_t capacity);

/// U x C binary matrix X.
class AssignmentMatrix {
 public:
    AssignmentMatrix(std::size_t num_users, std::size_t num_channels)
        : num_users_(num_users), num_channels_(num_channels), bits_(num_users * num_channels, 0) {}

    /// One row per user; kUnassigned leaves the row empty.
    static AssignmentMatrix from_channels(std::size_t num_channels, const std::vector<Index>& channels);

    std::size_t num_users() const { return num_users_; }
    std::size_t num_channels() const { return num_channels_; }

    std::uint8_t operator()(Index u, Index c) const { return bits_[u * num_channels_ + c]; }
    void set(Index u, Index c, bool on) { bits_[u * num_channels_ + c] = on ? 1 : 0; }
    void clear_row(Index u);

    std::size_t row_sum(Index u) const;
    std::size_t channel_load(Index c) const;

    /// The channel of each user with exactly one, kUnassigned otherwise.
    std::vector<Index> channels() const;

    friend bool operator==(const AssignmentMatrix&, const AssignmentMatrix&) = default;

 private:
    std::size_t num_users_;
    std::size_t num_channels_;
    std::vector<std::uint8_t> bits_;
};

struct FeasibilityReport {
    struct UserViolation {
        Index user;
        std::size_t assigned;
    };
    struct CapacityViolation {
        Index channel;
        std::size_t load;
        std::size_t capacity;
    };

    std::vector<UserViolation> users;
    std::vector<CapacityViolation> channels;

    bool feasible() const { return users.empty() && channels.empty(); }
};

struct QuboModel {
    QuboInstance qubo;
    VariableLayout layout;
};

QuboModel build_qubo(const ChannelAssignmentInstance& inst, const PenaltyConfig& penalty);

AssignmentMatrix decode(std::span<const std::uint8_t> bits, const VariableLayout& layout);
/// Assignment bits from X, slack bits zero.
std::vector<std::uint8_t> encode(const AssignmentMatrix& x, const VariableLayout& layout);
/// Bits x_i = (1 - z_i) / 2 over 0..layout.size()-1.
std::vector<std::uint8_t> bits_from_spins(const SpinAssignment& z, const VariableLayout& layout);

FeasibilityReport check_feasibility(const AssignmentMatrix& x, const ChannelAssignmentInstance& inst);

AssignmentMatrix repair(const AssignmentMatrix& x, const ChannelAssignmentInstance& inst);

/// sum_c sum_{u<v} w^(c)_uv X_uc X_vc.
double objective_value(const AssignmentMatrix& x, const ChannelAssignmentInstance& inst);

/// Interference user u adds on channel c against users already placed.
double incremental_interference(const ChannelAssignmentInstance& inst, const std::vector<Index>& channels, Index u,
                                Index c);

/// One-hot block per user, target 1.
std::vector<ConstraintBlock> one_hot_blocks(const VariableLayout& layout);

/// A = 1 + max weighted degree, B = 0.
PenaltyConfig auto_penalty(const ChannelAssignmentInstance& inst);

/// U = C = 4, uniform integer weights in 0..5 on all six pairs.
ChannelAssignmentInstance generate_demo(std::uint64_t seed);

/// Uniform integer weights in 0..max_weight on every pair.
ChannelAssignmentInstance generate_uniform(std::size_t num_users, std::size_t num_channels, int max_weight,
                                           std::uint64_t seed);

struct HotspotParams {
    double reference_distance = 1.0;  // d_0 [m]
    double min_distance = 1.0;        // d_min [m]
    double pathloss_exponent = 3.5;   // alpha
    double shadowing_db = 6.0;        // sigma_sh [dB]
    double area_side = 100.0;         // S [m]
    std::size_t num_hotspots = 0;     // 0 -> ceil(U / 8)
    double position_spread = 5.0;     // sigma_pos [m]
    double weight_floor = 1e-3;       // epsilon_w

    void validate() const;
};

struct Position {
    double x;
    double y;
};

/// w = (max(d, d_min) / d_0)^(-alpha) * 10^(chi / 10).
double pathloss_weight(double distance, double shadowing_db_sample, const HotspotParams& params);

/// Builds weights for fixed user positions; shadowing draws come from `seed`.
ChannelAssignmentInstance hotspot_from_positions(const std::vector<Position>& positions, std::size_t num_channels,
                                                 const HotspotParams& params, std::uint64_t seed);

ChannelAssignmentInstance generate_hotspot(std::size_t num_users, std::size_t num_channels,
                                           const HotspotParams& params, std::uint64_t seed);

}  // namespace rqw
