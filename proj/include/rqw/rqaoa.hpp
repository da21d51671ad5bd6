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
#include <span>
#include <vector>

#include "rqw/constraints.hpp"
#include "rqw/ising.hpp"
#include "rqw/qaoa.hpp"
#include "rqw/statevector.hpp"

namespace rqw {

enum class CandidatePolicy { hamiltonian_terms, all_pairs };

const char* to_string(CandidatePolicy policy);
CandidatePolicy candidate_policy_from_string(const std::string& name);

struct RqaoaConfig {
    /// Recursion stops once at most this many spins remain.
    std::size_t n_cutoff = 6;
    /// Minimum score a term needs to be eliminated.
    double threshold = 0.0;
    OptimizerConfig qaoa;
    /// Estimate correlators from this many samples instead of exactly.
    std::optional<std::size_t> shots;
    CandidatePolicy policy = CandidatePolicy::hamiltonian_terms;
    /// Largest core the exhaustive solver accepts, besides n_cutoff.
    std::size_t exact_limit = 22;

    void validate() const;
};

/// A single spin (j empty) or an ordered pair i < j.
struct Term {
    Index i;
    std::optional<Index> j;

    bool is_pair() const { return j.has_value(); }
    friend bool operator==(const Term&, const Term&) = default;
};

struct ScoredTerm {
    Term term;
    /// <Z_i> or <Z_i Z_j>.
    double expectation;
    double score;
    Spin sign;
};

/// Scores candidate terms from a basis-state distribution over the layout's
/// qubits. Ranked by descending score; on exact ties pairs come before single
/// spins, then lexicographic by index.
std::vector<ScoredTerm> score_terms(std::span<const double> probabilities, const QubitLayout& layout,
                                    const IsingInstance& ising, CandidatePolicy policy);

std::vector<ScoredTerm> score_terms(const StateVector& psi, const QubitLayout& layout, const IsingInstance& ising,
                                    CandidatePolicy policy);

struct RoundTrace {
    std::size_t round = 0;
    std::size_t n_active = 0;
    Term term{0, std::nullopt};
    double score = 0.0;
    Spin sign = +1;
    /// Optimized F_p; NaN for rounds settled without QAOA.
    double fp = 0.0;
    std::size_t evaluations = 0;
    /// Probability inside the block-feasible subspace; NaN without blocks.
    double feasible_mass = 0.0;
    bool degenerate = false;
    QaoaParams params;
    EliminationEntry entry{Fix{0, +1}, Origin::rqaoa};
};

struct RqaoaTrace {
    std::vector<RoundTrace> rounds;
    std::size_t core_size = 0;
    double core_energy = 0.0;
};

struct RoundOutcome {
    IsingInstance reduced;
    EliminationEntry entry;
    RoundTrace trace;
};

/// One elimination. Returns nullopt when no admissible term reaches the
/// threshold. When blocks are configured the tracker restricts eliminations to those
/// that keep the block structure, and a saturated block is settled without
/// running QAOA.
std::optional<RoundOutcome> rqaoa_round(const IsingInstance& ising, const RqaoaConfig& config,
                                        const ConstraintTracker& tracker, std::size_t round);

/// Exhaustive minimizer. Spins that carry no term are set to +1; ties go to
/// the lowest integer encoding (bit k = x of the k-th spin in index order).
/// Throws TooLargeError when more than `limit` spins carry terms.
SpinAssignment exact_core_solve(const IsingInstance& ising, std::size_t limit = 22);

struct RqaoaResult {
    SpinAssignment assignment;
    EliminationRecord record;
    RqaoaTrace trace;
    IsingInstance core;
};

/// Recursive QAOA: eliminate until n_cutoff or a stop, solve the core
/// exactly, back-substitute. The assignment covers every active index of the
/// input.
RqaoaResult run_rqaoa(const IsingInstance& ising, const RqaoaConfig& config);

}  // namespace rqw
