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

#include "rqw/ising.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rqw/errors.hpp"

namespace rqw {

namespace {

std::pair<Index, Index> ordered(Index i, Index j) { return i < j ? std::pair{i, j} : std::pair{j, i}; }

template <class Map, class Key>
void accumulate(Map& map, const Key& key, double value) {
    auto [it, inserted] = map.try_emplace(key, value);
    if (!inserted) it->second += value;
    if (std::abs(it->second) < kPruneEpsilon) map.erase(it);
}

}  // namespace

void QuboInstance::add_linear(Index i, double value) {
    if (i >= num_vars) throw InvalidIndexError("qubo variable " + std::to_string(i) + " out of range");
    linear[i] += value;
}

void QuboInstance::add_quadratic(Index i, Index j, double value) {
    if (i >= num_vars || j >= num_vars) {
        throw InvalidIndexError("qubo pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    if (i == j) {
        linear[i] += value;
        return;
    }
    accumulate(quadratic, ordered(i, j), value);
}

double QuboInstance::quadratic_at(Index i, Index j) const {
    auto it = quadratic.find(ordered(i, j));
    return it == quadratic.end() ? 0.0 : it->second;
}

double QuboInstance::energy(std::span<const std::uint8_t> bits) const {
    if (bits.size() != num_vars) throw DecodeError("bit vector length does not match qubo size");
    double e = offset;
    for (Index i = 0; i < num_vars; ++i) {
        if (bits[i]) e += linear[i];
    }
    for (const auto& [key, q] : quadratic) {
        if (bits[key.first] && bits[key.second]) e += q;
    }
    return e;
}

IsingInstance IsingInstance::with_range(std::size_t n) {
    IsingInstance out;
    for (Index i = 0; i < n; ++i) out.active_.insert(out.active_.end(), i);
    return out;
}

double IsingInstance::field(Index i) const {
    auto it = fields_.find(i);
    return it == fields_.end() ? 0.0 : it->second;
}

double IsingInstance::coupling(Index i, Index j) const {
    auto it = couplings_.find(ordered(i, j));
    return it == couplings_.end() ? 0.0 : it->second;
}

std::vector<std::pair<Index, double>> IsingInstance::neighbors(Index i) const {
    std::vector<std::pair<Index, double>> out;
    for (const auto& [key, value] : couplings_) {
        if (key.first == i) {
            out.emplace_back(key.second, value);
        } else if (key.second == i) {
            out.emplace_back(key.first, value);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void IsingInstance::add_field(Index i, double value) {
    if (!is_active(i)) throw InvalidIndexError("field on inactive index " + std::to_string(i));
    accumulate(fields_, i, value);
}

void IsingInstance::add_coupling(Index i, Index j, double value) {
    if (i == j) throw InvalidIndexError("self-coupling on index " + std::to_string(i));
    if (!is_active(i) || !is_active(j)) {
        throw InvalidIndexError("coupling on inactive pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    accumulate(couplings_, ordered(i, j), value);
}

double IsingInstance::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [i, h] : fields_) m = std::max(m, std::abs(h));
    for (const auto& [key, j] : couplings_) m = std::max(m, std::abs(j));
    return m;
}

double IsingInstance::energy(const SpinAssignment& z) const {
    auto spin = [&](Index i) {
        auto it = z.find(i);
        if (it == z.end()) throw AssignmentIncompleteError("no spin for active index " + std::to_string(i));
        return static_cast<double>(it->second);
    };
    for (Index i : active_) spin(i);
    double e = offset_;
    for (const auto& [i, h] : fields_) e += h * spin(i);
    for (const auto& [key, j] : couplings_) e += j * spin(key.first) * spin(key.second);
    return e;
}

void IsingInstance::fix(Index k, Spin sign) {
    if (!is_active(k)) throw InvalidIndexError("cannot fix inactive index " + std::to_string(k));
    const double s = sign < 0 ? -1.0 : 1.0;
    offset_ += field(k) * s;
    fields_.erase(k);
    for (auto it = couplings_.begin(); it != couplings_.end();) {
        const auto [a, b] = it->first;
        if (a == k || b == k) {
            const Index other = a == k ? b : a;
            const double j = it->second;
            it = couplings_.erase(it);
            accumulate(fields_, other, j * s);
        } else {
            ++it;
        }
    }
    active_.erase(k);
}

void IsingInstance::merge(Index kept, Index removed, Spin sign) {
    if (kept == removed) throw InvalidMergeError("merge of index " + std::to_string(kept) + " with itself");
    if (!is_active(kept) || !is_active(removed)) {
        throw InvalidMergeError("merge on inactive pair (" + std::to_string(kept) + "," + std::to_string(removed) + ")");
    }
    const double s = sign < 0 ? -1.0 : 1.0;
    // z_kept^2 = 1 turns J_{kept,removed} into a constant.
    offset_ += coupling(kept, removed) * s;
    couplings_.erase(ordered(kept, removed));
    const double h_removed = field(removed);
    fields_.erase(removed);
    if (h_removed != 0.0) accumulate(fields_, kept, s * h_removed);
    std::vector<std::pair<Index, double>> moved;
    for (auto it = couplings_.begin(); it != couplings_.end();) {
        const auto [a, b] = it->first;
        if (a == removed || b == removed) {
            moved.emplace_back(a == removed ? b : a, it->second);
            it = couplings_.erase(it);
        } else {
            ++it;
        }
    }
    for (const auto& [other, j] : moved) accumulate(couplings_, ordered(kept, other), s * j);
    active_.erase(removed);
}

const char* to_string(Origin origin) {
    switch (origin) {
        case Origin::rqaoa: return "rqaoa";
        case Origin::forced: return "forced";
        case Origin::isolated: return "isolated";
        case Origin::persistency: return "persistency";
        case Origin::wireless: return "wireless";
        case Origin::freeze: return "freeze";
    }
    return "unknown";
}

Index EliminationEntry::eliminated() const {
    if (const auto* f = std::get_if<Fix>(&relation)) return f->index;
    return std::get<Merge>(relation).removed;
}

void EliminationRecord::push_back(const EliminationEntry& entry) {
    const Index i = entry.eliminated();
    if (!eliminated_.insert(i).second) {
        throw InconsistentRecordError("index " + std::to_string(i) + " eliminated twice");
    }
    entries_.push_back(entry);
}

void EliminationRecord::append(const EliminationRecord& other) {
    for (const auto& e : other.entries_) push_back(e);
}

IsingInstance qubo_to_ising(const QuboInstance& qubo) {
    IsingInstance out = IsingInstance::with_range(qubo.num_vars);
    double offset = qubo.offset;
    // q x = q/2 - (q/2) z ;  Q x_i x_j = Q/4 (1 - z_i - z_j + z_i z_j)
    std::vector<double> h(qubo.num_vars, 0.0);
    for (Index i = 0; i < qubo.num_vars; ++i) {
        offset += qubo.linear[i] / 2.0;
        h[i] -= qubo.linear[i] / 2.0;
    }
    for (const auto& [key, q] : qubo.quadratic) {
        offset += q / 4.0;
        h[key.first] -= q / 4.0;
        h[key.second] -= q / 4.0;
        out.add_coupling(key.first, key.second, q / 4.0);
    }
    for (Index i = 0; i < qubo.num_vars; ++i) out.add_field(i, h[i]);
    out.add_offset(offset);
    return out;
}

QuboInstance ising_to_qubo(const IsingInstance& ising) {
    const std::size_t n = ising.empty() ? 0 : *ising.active().rbegin() + 1;
    QuboInstance out(n);
    out.offset = ising.offset();
    // h z = h - 2h x ;  J z_i z_j = J - 2J x_i - 2J x_j + 4J x_i x_j
    for (const auto& [i, h] : ising.fields()) {
        out.offset += h;
        out.linear[i] -= 2.0 * h;
    }
    for (const auto& [key, j] : ising.couplings()) {
        out.offset += j;
        out.linear[key.first] -= 2.0 * j;
        out.linear[key.second] -= 2.0 * j;
        out.add_quadratic(key.first, key.second, 4.0 * j);
    }
    return out;
}

double energy(const IsingInstance& ising, const SpinAssignment& z) { return ising.energy(z); }

std::pair<IsingInstance, EliminationEntry> fix_spin(const IsingInstance& ising, Index k, Spin sign) {
    IsingInstance out = ising;
    out.fix(k, sign);
    return {std::move(out), EliminationEntry{Fix{k, sign < 0 ? -1 : 1}, Origin::rqaoa}};
}

std::pair<IsingInstance, EliminationEntry> merge_pair(const IsingInstance& ising, Index keep, Index remove,
                                                      Spin sign) {
    IsingInstance out = ising;
    out.merge(keep, remove, sign);
    return {std::move(out), EliminationEntry{Merge{keep, remove, sign < 0 ? -1 : 1}, Origin::rqaoa}};
}

SpinAssignment back_substitute(const EliminationRecord& record, const SpinAssignment& core) {
    SpinAssignment z = core;
    // Reverse order; a merge whose kept spin is not known yet waits for a
    // later pass, so a record listed in chain order also resolves.
    std::vector<const EliminationEntry*> pending;
    const auto& entries = record.entries();
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) pending.push_back(&*it);
    while (!pending.empty()) {
        std::vector<const EliminationEntry*> waiting;
        for (const auto* e : pending) {
            if (const auto* f = std::get_if<Fix>(&e->relation)) {
                z[f->index] = f->sign;
                continue;
            }
            const auto& m = std::get<Merge>(e->relation);
            const auto kept = z.find(m.kept);
            if (kept == z.end()) {
                waiting.push_back(e);
            } else {
                z[m.removed] = m.sign * kept->second;
            }
        }
        if (waiting.size() == pending.size()) {
            const auto& m = std::get<Merge>(waiting.front()->relation);
            throw InconsistentRecordError("merge of " + std::to_string(m.removed) + " refers to unknown spin " +
                                          std::to_string(m.kept));
        }
        pending = std::move(waiting);
    }
    return z;
}

}  // namespace rqw
