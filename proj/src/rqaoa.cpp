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

#include "rqw/rqaoa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "rqw/errors.hpp"
#include "rqw/log.hpp"

namespace rqw {

const char* to_string(CandidatePolicy policy) {
    return policy == CandidatePolicy::all_pairs ? "all_pairs" : "hamiltonian_terms";
}

CandidatePolicy candidate_policy_from_string(const std::string& name) {
    if (name == "hamiltonian_terms") return CandidatePolicy::hamiltonian_terms;
    if (name == "all_pairs") return CandidatePolicy::all_pairs;
    throw ConfigError("unknown candidate policy '" + name + "'");
}

void RqaoaConfig::validate() const {
    if (n_cutoff < 1) throw ConfigError("n_cutoff must be at least one");
    if (!(threshold >= 0.0)) throw ConfigError("threshold must be non-negative");
    if (shots && *shots < 1) throw ConfigError("shots must be at least one");
    qaoa.validate();
}

std::vector<ScoredTerm> score_terms(std::span<const double> probabilities, const QubitLayout& layout,
                                    const IsingInstance& ising, CandidatePolicy policy) {
    if (probabilities.size() != (std::size_t{1} << layout.size())) {
        throw ConfigError("distribution size does not match the qubit layout");
    }
    std::vector<Term> candidates;
    if (policy == CandidatePolicy::hamiltonian_terms) {
        for (const auto& [i, h] : ising.fields()) candidates.push_back({i, std::nullopt});
        for (const auto& [key, j] : ising.couplings()) candidates.push_back({key.first, key.second});
    } else {
        const auto& active = ising.active();
        for (Index i : active) candidates.push_back({i, std::nullopt});
        for (auto a = active.begin(); a != active.end(); ++a) {
            for (auto b = std::next(a); b != active.end(); ++b) candidates.push_back({*a, *b});
        }
    }

    const auto z = expectation_z_all(probabilities, layout.size());
    std::vector<ScoredTerm> out;
    out.reserve(candidates.size());
    for (const auto& t : candidates) {
        double e = 0.0;
        if (t.is_pair()) {
            e = expectation_zz(probabilities, layout.qubit(t.i), layout.qubit(*t.j));
        } else {
            e = z[layout.qubit(t.i)];
        }
        if (std::abs(e) < kPruneEpsilon) e = 0.0;  // rounding noise must not break ties
        out.push_back({t, e, std::abs(e), spin_sign(e)});
    }
    std::stable_sort(out.begin(), out.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.term.is_pair() != b.term.is_pair()) return a.term.is_pair();
        if (a.term.i != b.term.i) return a.term.i < b.term.i;
        return a.term.j.value_or(0) < b.term.j.value_or(0);
    });
    return out;
}

std::vector<ScoredTerm> score_terms(const StateVector& psi, const QubitLayout& layout, const IsingInstance& ising,
                                    CandidatePolicy policy) {
    return score_terms(psi.probabilities(), layout, ising, policy);
}

namespace {

std::uint64_t round_seed(std::uint64_t seed, std::size_t round) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(round) + 1);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

EliminationEntry entry_for(const ScoredTerm& t) {
    if (t.term.is_pair()) return {Merge{t.term.i, *t.term.j, t.sign}, Origin::rqaoa};
    return {Fix{t.term.i, t.sign}, Origin::rqaoa};
}

}  // namespace

std::optional<RoundOutcome> rqaoa_round(const IsingInstance& ising, const RqaoaConfig& config,
                                        const ConstraintTracker& tracker, std::size_t round) {
    config.validate();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    RoundTrace trace;
    trace.round = round;
    trace.n_active = ising.size();
    trace.fp = nan;
    trace.feasible_mass = nan;

    if (auto forced = tracker.forced()) {
        RoundOutcome out{ising, {*forced, Origin::forced}, trace};
        out.reduced.fix(forced->index, forced->sign);
        out.trace.term = {forced->index, std::nullopt};
        out.trace.score = 1.0;
        out.trace.sign = forced->sign;
        out.trace.entry = out.entry;
        return out;
    }

    OptimizerConfig qc = config.qaoa;
    qc.seed = round_seed(config.qaoa.seed, round);
    qc.blocks = tracker.blocks();
    const QubitLayout layout = QubitLayout::of(ising);
    const QaoaCircuit circuit(ising, layout, qc);
    const OptimizeResult opt = optimize(circuit, qc);
    const StateVector psi = circuit.prepare(opt.params);
    trace.fp = opt.value;
    trace.evaluations = opt.evaluations;
    trace.params = opt.params;
    if (!config.qaoa.blocks.empty() || !tracker.empty()) trace.feasible_mass = feasible_mass(psi, circuit.blocks());

    std::vector<double> dist;
    if (config.shots) {
        std::mt19937_64 rng(round_seed(qc.seed, round));
        dist.assign(psi.dim(), 0.0);
        const auto draws = sample(psi, *config.shots, rng);
        for (auto b : draws) dist[b] += 1.0;
        for (auto& d : dist) d /= static_cast<double>(*config.shots);
    } else {
        dist = psi.probabilities();
    }

    for (const auto& t : score_terms(dist, layout, ising, config.policy)) {
        if (t.score < config.threshold) break;
        const auto entry = entry_for(t);
        if (!tracker.admissible(entry)) continue;
        trace.term = t.term;
        trace.score = t.score;
        trace.sign = t.sign;
        trace.entry = entry;
        if (t.score == 0.0) {
            trace.degenerate = true;
            log_warning("round " + std::to_string(round) + ": all correlators vanish, eliminating the first term");
        }
        RoundOutcome out{ising, entry, trace};
        if (t.term.is_pair()) {
            out.reduced.merge(t.term.i, *t.term.j, t.sign);
        } else {
            out.reduced.fix(t.term.i, t.sign);
        }
        return out;
    }
    return std::nullopt;
}

SpinAssignment exact_core_solve(const IsingInstance& ising, std::size_t limit) {
    std::vector<Index> relevant;
    for (const auto& [i, h] : ising.fields()) relevant.push_back(i);
    for (const auto& [key, j] : ising.couplings()) {
        relevant.push_back(key.first);
        relevant.push_back(key.second);
    }
    std::sort(relevant.begin(), relevant.end());
    relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
    const std::size_t n = relevant.size();
    if (n > limit || n > 62) {
        throw TooLargeError("exact solve of " + std::to_string(n) + " coupled spins exceeds the limit of " +
                            std::to_string(limit));
    }

    SpinAssignment out;
    for (Index i : ising.active()) out[i] = +1;
    if (n == 0) return out;

    std::vector<double> h(n, 0.0);
    std::vector<std::vector<std::pair<std::size_t, double>>> nbr(n);
    auto local = [&](Index v) {
        return static_cast<std::size_t>(std::lower_bound(relevant.begin(), relevant.end(), v) - relevant.begin());
    };
    double e = ising.offset();
    for (const auto& [i, value] : ising.fields()) {
        h[local(i)] = value;
        e += value;
    }
    for (const auto& [key, value] : ising.couplings()) {
        const std::size_t a = local(key.first);
        const std::size_t b = local(key.second);
        nbr[a].emplace_back(b, value);
        nbr[b].emplace_back(a, value);
        e += value;
    }

    // Gray-code walk starting from all spins +1 (code 0).
    std::vector<int> z(n, +1);
    std::uint64_t code = 0;
    std::uint64_t best_code = 0;
    double best = e;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t t = 1; t < total; ++t) {
        const auto k = static_cast<std::size_t>(std::countr_zero(t));
        double field = h[k];
        for (const auto& [m, value] : nbr[k]) field += value * z[m];
        e -= 2.0 * z[k] * field;
        z[k] = -z[k];
        code ^= std::uint64_t{1} << k;
        const double tol = 1e-9 * std::max(1.0, std::abs(best));
        if (e < best - tol || (std::abs(e - best) <= tol && code < best_code)) {
            best = std::min(best, e);
            best_code = code;
        }
    }
    for (std::size_t k = 0; k < n; ++k) out[relevant[k]] = ((best_code >> k) & 1U) ? -1 : +1;
    return out;
}

RqaoaResult run_rqaoa(const IsingInstance& ising, const RqaoaConfig& config) {
    config.validate();
    ConstraintTracker tracker(config.qaoa.blocks);
    RqaoaResult result;
    IsingInstance current = ising;
    std::size_t round = 0;
    while (current.size() > config.n_cutoff) {
        auto out = rqaoa_round(current, config, tracker, round);
        if (!out) break;
        result.record.push_back(out->entry);
        tracker.apply(out->entry);
        result.trace.rounds.push_back(std::move(out->trace));
        current = std::move(out->reduced);
        ++round;
    }
    const SpinAssignment core = exact_core_solve(current, std::max(config.n_cutoff, config.exact_limit));
    result.trace.core_size = current.size();
    result.trace.core_energy = current.energy(core);
    result.assignment = back_substitute(result.record, core);
    result.core = std::move(current);
    return result;
}

}  // namespace rqw
