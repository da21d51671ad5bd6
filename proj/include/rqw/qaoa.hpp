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
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "rqw/constraints.hpp"
#include "rqw/ising.hpp"
#include "rqw/statevector.hpp"

namespace rqw {

/// Angles of a depth-p ansatz; layer l applies exp(-i gamma_l H_C) then
/// exp(-i beta_l H_M).
struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    std::size_t depth() const { return gammas.size(); }
    void validate() const;
};

enum class InitState { plus, onehot_basis, onehot_superposition };

const char* to_string(InitState init);
InitState init_state_from_string(const std::string& name);

struct OptimizerConfig {
    std::size_t depth = 1;
    MixerKind mixer = MixerKind::transverse_x;
    InitState init = InitState::plus;
    /// Hamming-weight blocks over Ising variable indices, used by XY mixers
    /// and by the one-hot initial states.
    std::vector<ConstraintBlock> blocks;
    std::size_t restarts = 3;
    std::size_t max_evaluations = 200;
    std::pair<double, double> gamma_range{0.0, std::numbers::pi};
    std::pair<double, double> beta_range{0.0, std::numbers::pi / 2.0};
    /// Measure gamma in units of 1 / max|coefficient| so the canonical angle
    /// range covers the landscape whatever the instance scale.
    bool normalize_cost = true;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One optimizer evaluation, for trace output.
struct EvaluationRecord {
    std::size_t restart;
    std::size_t index;
    QaoaParams params;
    double value;
};

using TraceSink = std::function<void(const EvaluationRecord&)>;

/// The pieces of a QAOA circuit that do not depend on the angles.
class QaoaCircuit {
 public:
    QaoaCircuit(const IsingInstance& ising, const QubitLayout& layout, const OptimizerConfig& config);

    const QubitLayout& layout() const { return layout_; }
    const DiagonalCost& cost() const { return cost_; }
    const MixerSpec& mixer() const { return mixer_; }
    const std::vector<QubitBlock>& blocks() const { return blocks_; }
    const StateVector& initial_state() const { return initial_; }
    /// Physical phase angle per unit of gamma.
    double gamma_unit() const { return gamma_unit_; }

    StateVector prepare(const QaoaParams& params) const;
    /// F_p = <psi_p| H_C |psi_p>.
    double objective(const QaoaParams& params) const;

 private:
    QubitLayout layout_;
    DiagonalCost cost_;
    MixerSpec mixer_;
    std::vector<QubitBlock> blocks_;
    StateVector initial_;
    double gamma_unit_ = 1.0;
};

StateVector prepare_state(const IsingInstance& ising, const QubitLayout& layout, const QaoaParams& params,
                          const OptimizerConfig& config);

double objective(const IsingInstance& ising, const QubitLayout& layout, const QaoaParams& params,
                 const OptimizerConfig& config);

struct OptimizeResult {
    QaoaParams params;
    double value = 0.0;
    std::size_t evaluations = 0;
    /// Restart that produced the winner.
    std::size_t restart = 0;
};

/// Seeded multi-start Nelder-Mead over (gamma, beta); best value wins, ties
/// go to the lowest restart index.
OptimizeResult optimize(const QaoaCircuit& circuit, const OptimizerConfig& config, const TraceSink& sink = {});

OptimizeResult optimize(const IsingInstance& ising, const QubitLayout& layout, const OptimizerConfig& config,
                        const TraceSink& sink = {});

}  // namespace rqw
