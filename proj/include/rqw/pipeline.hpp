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

#include "rqw/baselines.hpp"
#include "rqw/presolve.hpp"
#include "rqw/rqaoa.hpp"
#include "rqw/wireless.hpp"

namespace rqw {

enum class CoreSolver { rqaoa, qaoa_sample_best, exact, greedy };

const char* to_string(CoreSolver solver);
CoreSolver core_solver_from_string(const std::string& name);

struct PipelineConfig {
    std::size_t core_size = 10;
    CoreSolver solver = CoreSolver::rqaoa;
    /// Its optimizer seed is replaced by `seed`; blocks are filled in from the
    /// core layout when the mixer or initial state needs them.
    RqaoaConfig rqaoa;
    PresolveConfig presolve;
    /// Unset means auto_penalty on the core.
    std::optional<PenaltyConfig> penalty;
    GreedyConfig greedy;
    PartialConstraints constraints;
    /// Samples drawn by qaoa_sample_best.
    std::size_t sample_shots = 1024;
    /// Enumerate best and worst feasible energies when the instance is small.
    bool scaled_ratio = true;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Top users by weighted degree, ties to the lower index, in that order.
std::vector<Index> select_core(const ChannelAssignmentInstance& inst, std::size_t core_size);

struct RestrictedInstance {
    ChannelAssignmentInstance instance;
    /// Local index -> original user.
    std::vector<Index> users;
};

/// Induced sub-instance on `users`; channels and capacities are inherited.
RestrictedInstance restrict_instance(const ChannelAssignmentInstance& inst, const std::vector<Index>& users);

struct RunMetrics {
    double objective = 0.0;
    bool feasible = false;
    bool repaired = false;
    double reference = 0.0;
    /// |C - C_ref| / C_ref, or the absolute deviation when C_ref = 0.
    double delta_norm = 0.0;
    bool delta_is_absolute = false;
    std::optional<double> scaled_ratio;
    double t_presolve_ms = 0.0;
    double t_core_ms = 0.0;
    double t_extend_ms = 0.0;
    double t_total_ms = 0.0;
    std::size_t n_qubits_core = 0;
};

struct PipelineResult {
    AssignmentMatrix assignment;
    RunMetrics metrics;
    std::vector<Index> core_users;
    PresolveSummary presolve;
    std::optional<RqaoaTrace> trace;
};

PipelineResult run_pipeline(const ChannelAssignmentInstance& inst, const PipelineConfig& config);

/// Blocks left after a record of fixes: fixed members leave the block and
/// lower its target by their bit value. Blocks that the fixes already made
/// unsatisfiable are dropped.
std::vector<ConstraintBlock> blocks_after(const std::vector<ConstraintBlock>& blocks, const EliminationRecord& record);

double delta_norm(double objective, double reference);

/// (E_worst - E) / (E_worst - E_best); 1 when the range is empty.
double scaled_ratio(double energy, double best, double worst);

/// Fills delta_norm against greedy and, when the instance is small enough,
/// the scaled ratio.
void attach_reference_metrics(RunMetrics& metrics, const ChannelAssignmentInstance& inst,
                              const GreedyConfig& greedy, bool want_scaled_ratio);

/// Scaled ratio is only computed up to this many assignment bits.
inline constexpr std::size_t kScaledRatioMaxBits = 18;

struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    /// Sample standard deviation; 0 for fewer than two values.
    double stddev = 0.0;
};

Summary summarize(const std::vector<double>& values);

/// Fraction of true entries.
double feasibility_rate(const std::vector<bool>& feasible);

}  // namespace rqw
