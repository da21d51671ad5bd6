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

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "rqw/errors.hpp"

using namespace rqw;
using oracle::Complex;
using oracle::Matrix;

namespace {

OptimizerConfig raw_config() {
    OptimizerConfig cfg;
    cfg.normalize_cost = false;
    return cfg;
}

/// Dense p-layer evolution from |+>^n with the transverse-field mixer.
std::vector<Complex> dense_qaoa(const IsingInstance& ising, const QaoaParams& params) {
    const std::size_t n = ising.size();
    const std::size_t d = std::size_t{1} << n;
    std::vector<Complex> psi(d, 1.0 / std::sqrt(double(d)));
    Matrix hx(d);
    for (std::size_t q = 0; q < n; ++q) hx = hx + oracle::on_qubits(n, {{q, 'X'}});
    const Matrix hc = oracle::cost_matrix(ising);
    for (std::size_t l = 0; l < params.depth(); ++l) {
        psi = oracle::apply(oracle::expm_i(hc, params.gammas[l]), psi);
        psi = oracle::apply(oracle::expm_i(hx, params.betas[l]), psi);
    }
    return psi;
}

double dense_energy(const IsingInstance& ising, const std::vector<Complex>& psi) {
    const Matrix hc = oracle::cost_matrix(ising);
    double e = 0.0;
    for (std::size_t b = 0; b < psi.size(); ++b) e += std::norm(psi[b]) * hc(b, b).real();
    return e;
}

}  // namespace

TEST(Prepare, ZeroAnglesReturnInitialState) {
    std::mt19937_64 rng(1);
    const auto ising = oracle::random_ising(3, rng);
    const auto psi = prepare_state(ising, QubitLayout::of(ising), {{0.0}, {0.0}}, raw_config());
    const auto plus = init_plus(3);
    for (std::uint64_t b = 0; b < 8; ++b) EXPECT_NEAR(std::abs(psi[b] - plus[b]), 0.0, 1e-15);
}

TEST(Prepare, TwoLayersCompose) {
    std::mt19937_64 rng(2);
    const auto ising = oracle::random_ising(4, rng);
    const auto layout = QubitLayout::of(ising);
    const QaoaCircuit circuit(ising, layout, raw_config());
    const auto two = circuit.prepare({{0.4, 1.1}, {0.3, 0.9}});
    auto manual = init_plus(4);
    for (auto [g, b] : {std::pair{0.4, 0.3}, std::pair{1.1, 0.9}}) {
        apply_cost_phase(manual, circuit.cost(), g);
        apply_mixer(manual, circuit.mixer(), b);
    }
    for (std::uint64_t b = 0; b < 16; ++b) EXPECT_NEAR(std::abs(two[b] - manual[b]), 0.0, 1e-13);
}

TEST(Prepare, MatchesDenseOracle) {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto ising = oracle::random_ising(n, rng);
        const QaoaParams params{{0.7, -0.4}, {0.2, 1.3}};
        auto cfg = raw_config();
        cfg.depth = 2;
        const auto psi = prepare_state(ising, QubitLayout::of(ising), params, cfg);
        EXPECT_LT(oracle::max_abs_diff(dense_qaoa(ising, params), psi.amplitudes()), 1e-9);
        EXPECT_NEAR(objective(ising, QubitLayout::of(ising), params, cfg), dense_energy(ising, dense_qaoa(ising, params)),
                    1e-9);
    }
}

TEST(Prepare, NormalizationRescalesGamma) {
    std::mt19937_64 rng(4);
    auto ising = oracle::random_ising(3, rng);
    const double scale = ising.max_abs_coefficient();
    OptimizerConfig cfg;
    const QaoaCircuit circuit(ising, QubitLayout::of(ising), cfg);
    EXPECT_NEAR(circuit.gamma_unit(), 1.0 / scale, 1e-15);
    const auto a = circuit.prepare({{0.8}, {0.5}});
    const auto b = prepare_state(ising, QubitLayout::of(ising), {{0.8 / scale}, {0.5}}, raw_config());
    for (std::uint64_t k = 0; k < 8; ++k) EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-12);
}

TEST(Prepare, TooManyQubits) {
    const auto ising = IsingInstance::with_range(kMaxQubits + 1);
    EXPECT_THROW(QaoaCircuit(ising, QubitLayout::of(ising), raw_config()), TooLargeError);
}

TEST(Objective, UniformStateGivesOffset) {
    std::mt19937_64 rng(5);
    const auto ising = oracle::random_ising(5, rng);
    EXPECT_NEAR(objective(ising, QubitLayout::of(ising), {{0.0}, {0.0}}, raw_config()), ising.offset(), 1e-12);
}

TEST(Objective, ShiftByConstant) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const auto ising = oracle::random_ising(4, rng);
        auto shifted = ising;
        shifted.add_offset(3.25);
        const QaoaParams params{{double(rng() % 100) / 30.0}, {double(rng() % 100) / 60.0}};
        for (bool norm : {false, true}) {
            auto cfg = raw_config();
            cfg.normalize_cost = norm;
            EXPECT_NEAR(objective(shifted, QubitLayout::of(shifted), params, cfg),
                        objective(ising, QubitLayout::of(ising), params, cfg) + 3.25, 1e-9);
        }
    }
}

TEST(Objective, NeverBelowGroundEnergy) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        const auto ising = oracle::random_ising(n, rng);
        const double ground = oracle::minimize(ising).energy;
        auto cfg = raw_config();
        cfg.depth = 2;
        const QaoaParams params{{angle(rng), angle(rng)}, {angle(rng), angle(rng)}};
        EXPECT_GE(objective(ising, QubitLayout::of(ising), params, cfg), ground - 1e-9);
    }
}

TEST(Objective, SingleZGridApproachesMinusOne) {
    IsingInstance ising = IsingInstance::with_range(1);
    ising.add_field(0, 1.0);
    const auto layout = QubitLayout::of(ising);
    double best = 1.0;
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const double g = std::numbers::pi * i / 100.0;
            const double b = std::numbers::pi / 2 * j / 100.0;
            best = std::min(best, objective(ising, layout, {{g}, {b}}, raw_config()));
            // Closed form of <Z> after exp(-i b X) exp(-i g Z)|+>.
            EXPECT_NEAR(objective(ising, layout, {{g}, {b}}, raw_config()), std::sin(2 * b) * std::sin(2 * g), 1e-12);
        }
    }
    EXPECT_LT(best, -1.0 + 1e-3);
}

TEST(Optimize, SingleZReachesMinusOne) {
    IsingInstance ising = IsingInstance::with_range(1);
    ising.add_field(0, 1.0);
    const auto result = optimize(ising, QubitLayout::of(ising), raw_config());
    EXPECT_NEAR(result.value, -1.0, 1e-3);
}

TEST(Optimize, BestOfEveryEvaluationAndBudget) {
    std::mt19937_64 rng(8);
    const auto ising = oracle::random_ising(5, rng);
    auto cfg = raw_config();
    cfg.restarts = 3;
    cfg.max_evaluations = 40;
    cfg.seed = 17;
    double lowest = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    std::vector<double> first_of_restart(cfg.restarts, std::numeric_limits<double>::quiet_NaN());
    const auto result = optimize(ising, QubitLayout::of(ising), cfg, [&](const EvaluationRecord& r) {
        lowest = std::min(lowest, r.value);
        if (r.index == 0) first_of_restart[r.restart] = r.value;
        ++count;
    });
    EXPECT_EQ(result.evaluations, count);
    EXPECT_LE(count, cfg.max_evaluations * cfg.restarts);
    EXPECT_DOUBLE_EQ(result.value, lowest);
    for (double v : first_of_restart) EXPECT_LE(result.value, v);
    EXPECT_NEAR(objective(ising, QubitLayout::of(ising), result.params, cfg), result.value, 1e-12);
}

TEST(Optimize, Deterministic) {
    std::mt19937_64 rng(9);
    const auto ising = oracle::random_ising(6, rng);
    OptimizerConfig cfg;
    cfg.depth = 2;
    cfg.seed = 5;
    const auto a = optimize(ising, QubitLayout::of(ising), cfg);
    const auto b = optimize(ising, QubitLayout::of(ising), cfg);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.params.gammas, b.params.gammas);
    EXPECT_EQ(a.params.betas, b.params.betas);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Optimize, RingXYKeepsFeasibleMassAtEveryPoint) {
    std::mt19937_64 rng(10);
    auto ising = oracle::random_ising(6, rng);
    OptimizerConfig cfg;
    cfg.mixer = MixerKind::ring_xy;
    cfg.init = InitState::onehot_basis;
    cfg.blocks = {{{0, 1, 2}, 1}, {{3, 4, 5}, 1}};
    cfg.max_evaluations = 30;
    cfg.restarts = 2;
    const QaoaCircuit circuit(ising, QubitLayout::of(ising), cfg);
    optimize(circuit, cfg, [&](const EvaluationRecord& r) {
        EXPECT_NEAR(feasible_mass(circuit.prepare(r.params), circuit.blocks()), 1.0, 1e-9);
    });
}

TEST(Config, Validation) {
    OptimizerConfig cfg;
    cfg.restarts = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.max_evaluations = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.depth = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    EXPECT_THROW((QaoaParams{{0.1}, {}}).validate(), ConfigError);
    cfg = {};
    cfg.mixer = MixerKind::ring_xy;
    const auto ising = IsingInstance::with_range(3);
    EXPECT_NO_THROW(QaoaCircuit(ising, QubitLayout::of(ising), cfg));
    cfg.blocks = {{{0}, 1}};
    EXPECT_THROW(QaoaCircuit(ising, QubitLayout::of(ising), cfg), ConfigError);
}
