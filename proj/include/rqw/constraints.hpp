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

#include <optional>
#include <vector>

#include "rqw/ising.hpp"

namespace rqw {

/// Exactly `target` of `vars` take bit value 1 (spin -1).
struct ConstraintBlock {
    std::vector<Index> vars;
    std::size_t target = 1;

    friend bool operator==(const ConstraintBlock&, const ConstraintBlock&) = default;
};

/// Follows a set of disjoint Hamming-weight blocks through eliminations.
///
/// Constraint-preserving mixers can only act on a feasible subspace that is a
/// product of per-block Hamming-weight sectors (and unconstrained qubits).
/// The tracker decides which eliminations keep that product form and rewrites
/// the blocks when one is applied:
///
///   Fix x_k = b on a block member      -> drop k, target -= b
///   Merge with a free removed spin     -> no change
///   Merge x_j = x_i, j in B, i free    -> i takes j's place in B
///   Merge x_j = 1 - x_i, i, j in B     -> drop both, target -= 1, i becomes free
///
/// Anything else couples blocks and is rejected as inadmissible.
class ConstraintTracker {
 public:
    ConstraintTracker() = default;
    explicit ConstraintTracker(std::vector<ConstraintBlock> blocks);

    bool empty() const { return blocks_.empty(); }
    const std::vector<ConstraintBlock>& blocks() const { return blocks_; }

    bool admissible(const EliminationEntry& entry) const;
    /// Throws ConfigError when the entry is not admissible.
    void apply(const EliminationEntry& entry);

    /// A fix implied by a saturated or empty block, if any.
    std::optional<Fix> forced() const;

    /// True when the assignment meets every block target.
    bool satisfied(const SpinAssignment& z) const;

    std::optional<std::size_t> block_of(Index var) const;

 private:
    void drop_empty();

    std::vector<ConstraintBlock> blocks_;
};

}  // namespace rqw
