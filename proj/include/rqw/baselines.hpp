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
#include <optional>
#include <string>
#include <vector>

#include "rqw/ising.hpp"
#include "rqw/wireless.hpp"

namespace rqw {

enum class UserOrder { weighted_degree, index };
/// Secondary key after least incremental interference.
enum class ChannelTieBreak { least_load, lowest_index };

const char* to_string(UserOrder order);
UserOrder user_order_from_string(const std::string& name);
const char* to_string(ChannelTieBreak tie_break);
ChannelTieBreak channel_tie_break_from_string(const std::string& name);

struct GreedyConfig {
    UserOrder order = UserOrder::weighted_degree;
    ChannelTieBreak tie_break = ChannelTieBreak::least_load;
};

/// Users in greedy processing order: descending weighted degree (ties to the
/// lower index) or plain index order.
std::vector<Index> greedy_order(const ChannelAssignmentInstance& inst, UserOrder order);

/// Places users one at a time on the capacity-feasible channel that adds the
/// least interference against users placed so far. Remaining ties go to the
/// configured key, then the lowest channel index.
AssignmentMatrix greedy_assign(const ChannelAssignmentInstance& inst, const GreedyConfig& config = {});

/// Completes a partial assignment. Rows with one channel are kept verbatim;
/// empty rows are filled by the greedy rule against everything placed so far.
AssignmentMatrix greedy_extend(const ChannelAssignmentInstance& inst, const AssignmentMatrix& partial,
                               const GreedyConfig& config = {});

/// Enumeration is refused past this many channel vectors.
inline constexpr double kBruteForceLimit = 1e7;

/// C^U as a double, for size gating.
double assignment_space_size(const ChannelAssignmentInstance& inst);

struct BruteForceResult {
    AssignmentMatrix best;
    double objective = 0.0;
    /// Largest objective over capacity-feasible assignments.
    double worst = 0.0;
    std::size_t feasible_count = 0;
};

/// Exhaustive search over capacity-feasible channel vectors; ties go to the
/// lexicographically smallest vector. Throws TooLargeError past the limit and
/// InfeasibleError when nothing is feasible.
BruteForceResult brute_force(const ChannelAssignmentInstance& inst);

struct AnnealConfig {
    /// Full passes over the spins; 0 means 100 * n.
    std::size_t sweeps = 0;
    /// Starting temperature; unset means max |coefficient|.
    std::optional<double> t_initial;
    /// Final temperature as a fraction of the initial one.
    double t_final_ratio = 1e-3;
    std::uint64_t seed = 0;

    void validate() const;
};

struct AnnealResult {
    SpinAssignment spins;
    double energy = 0.0;
};

/// Single-flip Metropolis over the active spins in index order, geometric
/// cooling, random start. Returns the best configuration seen.
AnnealResult simulated_annealing(const IsingInstance& ising, const AnnealConfig& config);

struct QuboAnnealResult {
    std::vector<std::uint8_t> bits;
    double energy = 0.0;
};

QuboAnnealResult simulated_annealing(const QuboInstance& qubo, const AnnealConfig& config);

/// Channel assignment by annealing the penalty QUBO, decoded and repaired.
AssignmentMatrix anneal_assign(const ChannelAssignmentInstance& inst, const PenaltyConfig& penalty,
                               const AnnealConfig& config);

}  // namespace rqw
