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
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rqw/ising.hpp"
#include "rqw/wireless.hpp"

namespace rqw {

struct FreezeConfig {
    /// Independent annealing runs K.
    std::size_t runs = 8;
    /// Freeze spins with |m_i| >= threshold.
    double threshold = 0.9;
    /// Sweeps per run; 0 means 100 * n.
    std::size_t sweeps = 0;
    std::uint64_t seed = 0;
};

struct PresolveConfig {
    bool enable_isolated = true;
    bool enable_persistency = true;
    bool enable_wireless_prune = true;
    std::optional<FreezeConfig> freeze;

    void validate() const;
};

struct Reduction {
    IsingInstance ising;
    EliminationRecord record;
};

/// Spins without couplings take sign(-h); a spin with h = 0 takes +1.
Reduction reduce_isolated(const IsingInstance& ising);

/// Fixes z_i = sign(-h_i) while |h_i| >= sum_j |J_ij| and h_i != 0. At
/// equality the fix still keeps at least one global minimizer.
Reduction reduce_persistency(const IsingInstance& ising);

/// Externally forbidden (user, channel) pairs.
struct PartialConstraints {
    std::vector<std::pair<Index, Index>> forbidden;
};

struct FixedBit {
    Index user;
    Index channel;
    std::uint8_t value;

    friend bool operator==(const FixedBit&, const FixedBit&) = default;
};

/// Shrinks each user's channel set by forbidden pairs and saturated
/// capacities until nothing changes. Users left with one channel get that
/// bit set and the rest cleared; excluded channels of other users are
/// cleared. Throws InfeasibleError when a user runs out of channels.
std::vector<FixedBit> wireless_prune(const ChannelAssignmentInstance& inst, const PartialConstraints& constraints);

/// Spin fixes for assignment bits under a variable layout.
std::vector<Fix> fixes_for_bits(const std::vector<FixedBit>& bits, const VariableLayout& layout);

struct FreezeResult {
    Reduction reduction;
    /// m_i over the annealing runs, for spins that carry terms.
    std::map<Index, double> magnetizations;
};

/// Heuristic: fixes spins whose annealing magnetization is at least the
/// threshold in magnitude. Entries are tagged Origin::freeze (not exact).
FreezeResult heuristic_freeze(const IsingInstance& ising, const FreezeConfig& config);

struct PresolveSummary {
    std::size_t isolated = 0;
    std::size_t persistency = 0;
    std::size_t wireless = 0;
    std::size_t frozen = 0;
    std::size_t residual = 0;
};

struct PresolveResult {
    IsingInstance ising;
    EliminationRecord record;
    PresolveSummary summary;
    std::map<Index, double> magnetizations;
};

/// Applies the given wireless fixes, then isolated and persistency rules to a
/// joint fixpoint, then optional freezing.
PresolveResult presolve_pipeline(const IsingInstance& ising, const PresolveConfig& config,
                                 const std::vector<Fix>& wireless_fixes = {});

}  // namespace rqw
