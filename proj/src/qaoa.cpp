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

#include "rqw/qaoa.hpp"

#include <random>
#include <string>

#include "rqw/errors.hpp"
#include "rqw/simplex.hpp"

namespace rqw {

void QaoaParams::validate() const {
    if (gammas.empty()) throw ConfigError("QAOA depth must be at least one");
    if (gammas.size() != betas.size()) throw ConfigError("gamma and beta counts differ");
}

const char* to_string(InitState init) {
    switch (init) {
        case InitState::plus: return "plus";
        case InitState::onehot_basis: return "basis";
        case InitState::onehot_superposition: return "superposition";
    }
    return "unknown";
}

InitState init_state_from_string(const std::string& name) {
    for (auto s : {InitState::plus, InitState::onehot_basis, InitState::onehot_superposition}) {
        if (name == to_string(s)) return s;
    }
    throw ConfigError("unknown initial state '" + name + "'");
}

void OptimizerConfig::validate() const {
    if (depth < 1) throw ConfigError("QAOA depth must be at least one");
    if (restarts < 1) throw ConfigError("restarts must be at least one");
    if (max_evaluations < 1) throw ConfigError("max_evaluations must be at least one");
    if (!(gamma_range.first <= gamma_range.second) || !(beta_range.first <= beta_range.second)) {
        throw ConfigError("angle ranges must be ordered intervals");
    }
}

QaoaCircuit::QaoaCircuit(const IsingInstance& ising, const QubitLayout& layout, const OptimizerConfig& config)
    : layout_(layout), cost_(DiagonalCost::from_ising(ising, layout)), initial_(0) {
    config.validate();
    const std::size_t n = layout.size();
    if (n == 0) throw ConfigError("QAOA needs at least one qubit");

    for (const auto& block : config.blocks) {
        QubitBlock qb;
        for (Index v : block.vars) qb.qubits.push_back(layout.qubit(v));
        qb.weight = block.target;
        blocks_.push_back(std::move(qb));
    }

    mixer_.kind = config.mixer;
    if (is_xy(config.mixer)) {
        for (const auto& qb : blocks_) {
            if (qb.qubits.size() < 2) throw ConfigError("XY mixer block with fewer than two qubits");
            mixer_.blocks.push_back(qb.qubits);
        }
    }
    mixer_.validate(n);

    if (config.init == InitState::plus) {
        initial_ = init_plus(n);
    } else {
        const auto mode =
            config.init == InitState::onehot_basis ? FeasibleInit::basis : FeasibleInit::uniform_superposition;
        initial_ = init_feasible(n, blocks_, mode);
    }
    if (config.normalize_cost && cost_.scale() > 0.0) gamma_unit_ = 1.0 / cost_.scale();
}

StateVector QaoaCircuit::prepare(const QaoaParams& params) const {
    params.validate();
    StateVector psi = initial_;
    for (std::size_t l = 0; l < params.depth(); ++l) {
        apply_cost_phase(psi, cost_, params.gammas[l] * gamma_unit_);
        apply_mixer(psi, mixer_, params.betas[l]);
    }
    return psi;
}

double QaoaCircuit::objective(const QaoaParams& params) const { return expectation_energy(prepare(params), cost_); }

StateVector prepare_state(const IsingInstance& ising, const QubitLayout& layout, const QaoaParams& params,
                          const OptimizerConfig& config) {
    return QaoaCircuit(ising, layout, config).prepare(params);
}

double objective(const IsingInstance& ising, const QubitLayout& layout, const QaoaParams& params,
                 const OptimizerConfig& config) {
    return QaoaCircuit(ising, layout, config).objective(params);
}

OptimizeResult optimize(const QaoaCircuit& circuit, const OptimizerConfig& config, const TraceSink& sink) {
    config.validate();
    const std::size_t p = config.depth;
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> gamma_dist(config.gamma_range.first, config.gamma_range.second);
    std::uniform_real_distribution<double> beta_dist(config.beta_range.first, config.beta_range.second);

    auto unpack = [p](const std::vector<double>& x) {
        QaoaParams params;
        params.gammas.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p));
        params.betas.assign(x.begin() + static_cast<std::ptrdiff_t>(p), x.end());
        return params;
    };

    std::vector<double> steps;
    for (std::size_t k = 0; k < p; ++k) steps.push_back(0.1 * (config.gamma_range.second - config.gamma_range.first));
    for (std::size_t k = 0; k < p; ++k) steps.push_back(0.1 * (config.beta_range.second - config.beta_range.first));
    for (auto& s : steps) {
        if (s == 0.0) s = 0.05;
    }

    OptimizeResult best;
    bool have = false;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        std::vector<double> x0;
        for (std::size_t k = 0; k < p; ++k) x0.push_back(gamma_dist(rng));
        for (std::size_t k = 0; k < p; ++k) x0.push_back(beta_dist(rng));
        std::size_t index = 0;
        auto f = [&](const std::vector<double>& x) {
            auto params = unpack(x);
            const double v = circuit.objective(params);
            if (sink) sink({r, index, params, v});
            ++index;
            return v;
        };
        SimplexOptions options;
        options.max_evaluations = config.max_evaluations;
        auto result = nelder_mead(f, x0, steps, options);
        best.evaluations += result.evaluations;
        if (!have || result.value < best.value) {
            have = true;
            best.value = result.value;
            best.params = unpack(result.point);
            best.restart = r;
        }
    }
    return best;
}

OptimizeResult optimize(const IsingInstance& ising, const QubitLayout& layout, const OptimizerConfig& config,
                        const TraceSink& sink) {
    return optimize(QaoaCircuit(ising, layout, config), config, sink);
}

}  // namespace rqw
