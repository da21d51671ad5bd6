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

#include "rqw/constraints.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rqw/errors.hpp"

namespace rqw {

ConstraintTracker::ConstraintTracker(std::vector<ConstraintBlock> blocks) : blocks_(std::move(blocks)) {
    std::set<Index> seen;
    for (auto& b : blocks_) {
        std::sort(b.vars.begin(), b.vars.end());
        if (b.target > b.vars.size()) throw ConfigError("block target exceeds block size");
        for (Index v : b.vars) {
            if (!seen.insert(v).second) throw ConfigError("constraint blocks overlap at " + std::to_string(v));
        }
    }
    drop_empty();
}

std::optional<std::size_t> ConstraintTracker::block_of(Index var) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const auto& vars = blocks_[k].vars;
        if (std::binary_search(vars.begin(), vars.end(), var)) return k;
    }
    return std::nullopt;
}

bool ConstraintTracker::admissible(const EliminationEntry& entry) const {
    if (const auto* f = std::get_if<Fix>(&entry.relation)) {
        auto k = block_of(f->index);
        if (!k) return true;
        const auto& b = blocks_[*k];
        const std::size_t bit = bit_of_spin(f->sign);
        return bit <= b.target && b.target - bit <= b.vars.size() - 1;
    }
    const auto& m = std::get<Merge>(entry.relation);
    auto kr = block_of(m.removed);
    if (!kr) return true;
    auto kk = block_of(m.kept);
    if (!kk) return m.sign > 0;
    if (*kk != *kr || m.sign > 0) return false;
    const auto& b = blocks_[*kr];
    return b.target >= 1 && b.target - 1 <= b.vars.size() - 2;
}

void ConstraintTracker::apply(const EliminationEntry& entry) {
    if (!admissible(entry)) throw ConfigError("elimination breaks the block structure");
    auto erase = [](ConstraintBlock& b, Index v) { b.vars.erase(std::find(b.vars.begin(), b.vars.end(), v)); };
    if (const auto* f = std::get_if<Fix>(&entry.relation)) {
        if (auto k = block_of(f->index)) {
            auto& b = blocks_[*k];
            erase(b, f->index);
            b.target -= bit_of_spin(f->sign);
        }
    } else {
        const auto& m = std::get<Merge>(entry.relation);
        if (auto kr = block_of(m.removed)) {
            auto& b = blocks_[*kr];
            if (!block_of(m.kept)) {
                erase(b, m.removed);
                b.vars.insert(std::lower_bound(b.vars.begin(), b.vars.end(), m.kept), m.kept);
            } else {
                erase(b, m.removed);
                erase(b, m.kept);
                b.target -= 1;
            }
        }
    }
    drop_empty();
}

std::optional<Fix> ConstraintTracker::forced() const {
    for (const auto& b : blocks_) {
        if (b.target == 0) return Fix{b.vars.front(), +1};
        if (b.target == b.vars.size()) return Fix{b.vars.front(), -1};
    }
    return std::nullopt;
}

bool ConstraintTracker::satisfied(const SpinAssignment& z) const {
    for (const auto& b : blocks_) {
        std::size_t ones = 0;
        for (Index v : b.vars) {
            auto it = z.find(v);
            if (it == z.end()) return false;
            ones += bit_of_spin(it->second);
        }
        if (ones != b.target) return false;
    }
    return true;
}

void ConstraintTracker::drop_empty() {
    std::erase_if(blocks_, [](const ConstraintBlock& b) { return b.vars.empty(); });
}

}  // namespace rqw
