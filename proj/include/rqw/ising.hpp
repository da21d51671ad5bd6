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

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace rqw {

using Index = std::size_t;

/// A spin value, always -1 or +1.
using Spin = int;

/// Coefficients with magnitude below this are dropped from sparse maps.
inline constexpr double kPruneEpsilon = 1e-12;

/// Sign convention used throughout: sign(0) = +1.
inline Spin spin_sign(double value) { return value < 0.0 ? -1 : +1; }

/// Minimize x^T Q x + q^T x + c over x in {0,1}^n.
///
/// Q is stored upper-triangular: one coefficient per unordered pair i<j, and
/// diagonal contributions are folded into the linear vector (x_i^2 = x_i).
struct QuboInstance {
    std::size_t num_vars = 0;
    std::map<std::pair<Index, Index>, double> quadratic;
    std::vector<double> linear;
    double offset = 0.0;

    QuboInstance() = default;
    explicit QuboInstance(std::size_t n) : num_vars(n), linear(n, 0.0) {}

    void add_linear(Index i, double value);
    /// Adds to the coefficient of x_i x_j; i == j folds into the linear term.
    void add_quadratic(Index i, Index j, double value);

    double quadratic_at(Index i, Index j) const;

    /// Energy of a bit vector of length num_vars.
    double energy(std::span<const std::uint8_t> bits) const;
};

/// Spin values keyed by global variable index.
using SpinAssignment = std::map<Index, Spin>;

/// E(z) = const + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j over an active set.
///
/// Variables keep their global indices through every reduction, so a reduced
/// instance and its parent share one index space. All coefficient maps only
/// reference active indices and never hold (near-)zero values.
class IsingInstance {
 public:
    IsingInstance() = default;
    explicit IsingInstance(std::set<Index> active) : active_(std::move(active)) {}

    /// Instance over indices 0..n-1 with no terms.
    static IsingInstance with_range(std::size_t n);

    const std::set<Index>& active() const { return active_; }
    const std::map<Index, double>& fields() const { return fields_; }
    const std::map<std::pair<Index, Index>, double>& couplings() const { return couplings_; }
    double offset() const { return offset_; }

    std::size_t size() const { return active_.size(); }
    bool empty() const { return active_.empty(); }
    bool is_active(Index i) const { return active_.count(i) != 0; }

    double field(Index i) const;
    double coupling(Index i, Index j) const;

    /// All (neighbor, J) pairs touching i, in ascending neighbor order.
    std::vector<std::pair<Index, double>> neighbors(Index i) const;

    void add_active(Index i) { active_.insert(i); }
    void add_field(Index i, double value);
    void add_coupling(Index i, Index j, double value);
    void add_offset(double value) { offset_ += value; }

    /// Largest absolute h or J coefficient; 0 for a term-free instance.
    double max_abs_coefficient() const;

    double energy(const SpinAssignment& z) const;

    /// In-place substitution z_k = sign.
    void fix(Index k, Spin sign);
    /// In-place substitution z_removed = sign * z_kept.
    void merge(Index kept, Index removed, Spin sign);

    friend bool operator==(const IsingInstance&, const IsingInstance&) = default;

 private:
    std::set<Index> active_;
    std::map<Index, double> fields_;
    std::map<std::pair<Index, Index>, double> couplings_;
    double offset_ = 0.0;
};

/// Which rule produced an elimination. Only `freeze` is non-exact.
enum class Origin { rqaoa, forced, isolated, persistency, wireless, freeze };

const char* to_string(Origin origin);

/// z_index = sign.
struct Fix {
    Index index;
    Spin sign;
    friend bool operator==(const Fix&, const Fix&) = default;
};

/// z_removed = sign * z_kept.
struct Merge {
    Index kept;
    Index removed;
    Spin sign;
    friend bool operator==(const Merge&, const Merge&) = default;
};

struct EliminationEntry {
    std::variant<Fix, Merge> relation;
    Origin origin = Origin::rqaoa;

    /// The index this entry removes from the active set.
    Index eliminated() const;
    bool is_fix() const { return std::holds_alternative<Fix>(relation); }
    bool exact() const { return origin != Origin::freeze; }

    friend bool operator==(const EliminationEntry&, const EliminationEntry&) = default;
};

/// Ordered list of eliminations; each index is eliminated at most once.
class EliminationRecord {
 public:
    void push_back(const EliminationEntry& entry);
    void append(const EliminationRecord& other);

    const std::vector<EliminationEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    bool contains(Index i) const { return eliminated_.count(i) != 0; }

    friend bool operator==(const EliminationRecord& a, const EliminationRecord& b) {
        return a.entries_ == b.entries_;
    }

 private:
    std::vector<EliminationEntry> entries_;
    std::set<Index> eliminated_;
};

IsingInstance qubo_to_ising(const QuboInstance& qubo);

/// Inverse map; the QUBO spans indices 0..max(active).
QuboInstance ising_to_qubo(const IsingInstance& ising);

double energy(const IsingInstance& ising, const SpinAssignment& z);

std::pair<IsingInstance, EliminationEntry> fix_spin(const IsingInstance& ising, Index k, Spin sign);

std::pair<IsingInstance, EliminationEntry> merge_pair(const IsingInstance& ising, Index keep,
                                                      Index remove, Spin sign);

/// Applies the record in reverse to extend `core` to every recorded index.
/// Throws InconsistentRecordError when a merge refers to a spin that never
/// receives a value.
SpinAssignment back_substitute(const EliminationRecord& record, const SpinAssignment& core);

/// Spin image of a bit: x = (1 - z) / 2.
inline Spin spin_of_bit(std::uint8_t bit) { return bit ? -1 : +1; }
inline std::uint8_t bit_of_spin(Spin s) { return s < 0 ? 1 : 0; }

}  // namespace rqw
