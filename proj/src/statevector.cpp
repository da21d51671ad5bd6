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

#include "rqw/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include "rqw/errors.hpp"

namespace rqw {

namespace {

void check_qubit_count(std::size_t n) {
    if (n > kMaxQubits) {
        throw TooLargeError(std::to_string(n) + " qubits exceeds the simulator cap of " + std::to_string(kMaxQubits));
    }
}

void check_qubit(const StateVector& psi, std::size_t q) {
    if (q >= psi.num_qubits()) throw InvalidIndexError("qubit " + std::to_string(q) + " out of range");
}

/// Spreads k over all bits except `pos` (inserting a zero there).
inline std::uint64_t insert_zero(std::uint64_t k, std::size_t pos) {
    const std::uint64_t low = k & ((std::uint64_t{1} << pos) - 1);
    return ((k >> pos) << (pos + 1)) | low;
}

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amplitudes_.size());
    for (std::size_t b = 0; b < p.size(); ++b) p[b] = std::norm(amplitudes_[b]);
    return p;
}

std::string bitstring(std::uint64_t b, std::size_t num_qubits) {
    std::string s(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if ((b >> q) & 1U) s[q] = '1';
    }
    return s;
}

QubitLayout::QubitLayout(std::vector<Index> vars) : vars_(std::move(vars)) {
    for (std::size_t q = 0; q < vars_.size(); ++q) {
        if (!qubits_.emplace(vars_[q], q).second) throw ConfigError("duplicate variable in qubit layout");
    }
}

QubitLayout QubitLayout::of(const IsingInstance& ising) {
    return QubitLayout(std::vector<Index>(ising.active().begin(), ising.active().end()));
}

std::size_t QubitLayout::qubit(Index var) const {
    auto it = qubits_.find(var);
    if (it == qubits_.end()) throw InvalidIndexError("variable " + std::to_string(var) + " has no qubit");
    return it->second;
}

DiagonalCost DiagonalCost::from_ising(const IsingInstance& ising, const QubitLayout& layout) {
    const std::size_t n = layout.size();
    check_qubit_count(n);
    for (Index v : ising.active()) {
        if (!layout.contains(v)) throw InvalidIndexError("active variable " + std::to_string(v) + " has no qubit");
    }
    DiagonalCost cost;
    cost.num_qubits_ = n;
    cost.scale_ = ising.max_abs_coefficient();

    std::vector<double> h(n, 0.0);
    std::vector<std::vector<std::pair<std::size_t, double>>> lower(n);
    for (const auto& [i, value] : ising.fields()) h[layout.qubit(i)] = value;
    for (const auto& [key, value] : ising.couplings()) {
        const std::size_t a = layout.qubit(key.first);
        const std::size_t b = layout.qubit(key.second);
        lower[std::max(a, b)].emplace_back(std::min(a, b), value);
    }

    // Grow the table one qubit at a time: qubit k sees h_k plus couplings to lower qubits.
    auto& e = cost.energies_;
    e.assign(std::size_t{1} << n, 0.0);
    e[0] = ising.offset();
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t half = std::uint64_t{1} << k;
        for (std::uint64_t b = 0; b < half; ++b) {
            double local = h[k];
            for (const auto& [j, value] : lower[k]) local += ((b >> j) & 1U) ? -value : value;
            e[b | half] = e[b] - local;
            e[b] += local;
        }
    }
    return cost;
}

const char* to_string(MixerKind kind) {
    switch (kind) {
        case MixerKind::transverse_x: return "x";
        case MixerKind::transverse_y: return "y";
        case MixerKind::ring_xy: return "ring_xy";
        case MixerKind::clique_xy: return "clique_xy";
        case MixerKind::matching_xy: return "matching_xy";
        case MixerKind::star_xy: return "star_xy";
    }
    return "unknown";
}

MixerKind mixer_kind_from_string(const std::string& name) {
    for (auto k : {MixerKind::transverse_x, MixerKind::transverse_y, MixerKind::ring_xy, MixerKind::clique_xy,
                   MixerKind::matching_xy, MixerKind::star_xy}) {
        if (name == to_string(k)) return k;
    }
    if (name == "rx") return MixerKind::transverse_x;
    if (name == "ry") return MixerKind::transverse_y;
    throw ConfigError("unknown mixer '" + name + "'");
}

void MixerSpec::validate(std::size_t num_qubits) const {
    std::set<std::size_t> seen;
    for (const auto& block : blocks) {
        if (is_xy(kind) && block.size() < 2) throw ConfigError("XY mixer blocks need at least two qubits");
        for (std::size_t q : block) {
            if (q >= num_qubits) throw ConfigError("mixer block references qubit " + std::to_string(q));
            if (!seen.insert(q).second) throw ConfigError("mixer blocks overlap at qubit " + std::to_string(q));
        }
    }
}

std::vector<std::pair<std::size_t, std::size_t>> MixerSpec::xy_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto block : blocks) {
        std::sort(block.begin(), block.end());
        const std::size_t m = block.size();
        switch (kind) {
            case MixerKind::ring_xy:
                for (std::size_t k = 0; k + 1 < m; ++k) edges.emplace_back(block[k], block[k + 1]);
                if (m > 2) edges.emplace_back(block[0], block[m - 1]);
                break;
            case MixerKind::clique_xy:
                for (std::size_t a = 0; a < m; ++a) {
                    for (std::size_t b = a + 1; b < m; ++b) edges.emplace_back(block[a], block[b]);
                }
                break;
            case MixerKind::matching_xy:
                for (std::size_t k = 0; k + 1 < m; k += 2) edges.emplace_back(block[k], block[k + 1]);
                for (std::size_t k = 1; k + 1 < m; k += 2) edges.emplace_back(block[k], block[k + 1]);
                if (m > 2 && m % 2 == 0) edges.emplace_back(block[0], block[m - 1]);
                break;
            case MixerKind::star_xy:
                for (std::size_t k = 1; k < m; ++k) edges.emplace_back(block[0], block[k]);
                break;
            default:
                break;
        }
    }
    return edges;
}

std::vector<std::size_t> MixerSpec::free_qubits(std::size_t num_qubits) const {
    std::vector<bool> covered(num_qubits, false);
    for (const auto& block : blocks) {
        for (std::size_t q : block) covered[q] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (!covered[q]) out.push_back(q);
    }
    return out;
}

StateVector init_plus(std::size_t num_qubits) {
    if (num_qubits < 1) throw ParameterError("need at least one qubit");
    StateVector psi(num_qubits);
    const double a = std::pow(2.0, -0.5 * static_cast<double>(num_qubits));
    for (auto& amp : psi.amplitudes()) amp = a;
    return psi;
}

StateVector init_feasible(std::size_t num_qubits, std::span<const QubitBlock> blocks, FeasibleInit mode) {
    StateVector psi(num_qubits);
    std::uint64_t covered = 0;
    std::vector<std::uint64_t> masks;
    std::vector<std::uint64_t> patterns;
    double amplitude = 1.0;
    for (const auto& block : blocks) {
        if (block.weight > block.qubits.size()) throw ConfigError("block weight exceeds block size");
        std::uint64_t mask = 0;
        std::uint64_t pattern = 0;
        auto sorted = block.qubits;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            const std::size_t q = sorted[k];
            if (q >= num_qubits) throw ConfigError("block references qubit " + std::to_string(q));
            const std::uint64_t bit = std::uint64_t{1} << q;
            if (covered & bit) throw ConfigError("blocks overlap at qubit " + std::to_string(q));
            covered |= bit;
            mask |= bit;
            if (k < block.weight) pattern |= bit;
        }
        masks.push_back(mask);
        patterns.push_back(pattern);
        if (mode == FeasibleInit::uniform_superposition) {
            amplitude /= std::sqrt(binomial(sorted.size(), block.weight));
        }
    }
    const std::size_t free = num_qubits - static_cast<std::size_t>(std::popcount(covered));
    amplitude *= std::pow(2.0, -0.5 * static_cast<double>(free));

    auto amps = psi.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        bool ok = true;
        for (std::size_t k = 0; k < masks.size() && ok; ++k) {
            if (mode == FeasibleInit::basis) {
                ok = (b & masks[k]) == patterns[k];
            } else {
                ok = static_cast<std::size_t>(std::popcount(b & masks[k])) == blocks[k].weight;
            }
        }
        amps[b] = ok ? Amplitude{amplitude, 0.0} : Amplitude{0.0, 0.0};
    }
    return psi;
}

StateVector init_onehot_feasible(std::size_t num_qubits, const std::vector<std::vector<std::size_t>>& blocks,
                                 FeasibleInit mode) {
    std::vector<QubitBlock> qb;
    for (const auto& b : blocks) qb.push_back({b, 1});
    return init_feasible(num_qubits, qb, mode);
}

double feasible_mass(const StateVector& psi, std::span<const QubitBlock> blocks) {
    std::vector<std::uint64_t> masks;
    for (const auto& block : blocks) {
        std::uint64_t mask = 0;
        for (std::size_t q : block.qubits) mask |= std::uint64_t{1} << q;
        masks.push_back(mask);
    }
    auto amps = psi.amplitudes();
    double mass = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        bool ok = true;
        for (std::size_t k = 0; k < masks.size() && ok; ++k) {
            ok = static_cast<std::size_t>(std::popcount(b & masks[k])) == blocks[k].weight;
        }
        if (ok) mass += std::norm(amps[b]);
    }
    return mass;
}

void apply_cost_phase(StateVector& psi, const DiagonalCost& cost, double gamma) {
    if (cost.num_qubits() != psi.num_qubits()) throw ConfigError("cost and state sizes differ");
    if (gamma == 0.0) return;
    auto amps = psi.amplitudes();
    const auto e = cost.energies();
    for (std::size_t b = 0; b < amps.size(); ++b) {
        const double phase = -gamma * e[b];
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        const double re = amps[b].real();
        const double im = amps[b].imag();
        amps[b] = {re * c - im * s, re * s + im * c};
    }
}

void apply_rx(StateVector& psi, std::size_t q, double beta) {
    check_qubit(psi, q);
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    auto amps = psi.amplitudes();
    const std::uint64_t stride = std::uint64_t{1} << q;
    const std::uint64_t half = amps.size() / 2;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero(k, q);
        const std::uint64_t i1 = i0 | stride;
        const Amplitude a0 = amps[i0];
        const Amplitude a1 = amps[i1];
        // [[c, -is], [-is, c]]
        amps[i0] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
        amps[i1] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
    }
}

void apply_ry(StateVector& psi, std::size_t q, double beta) {
    check_qubit(psi, q);
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    auto amps = psi.amplitudes();
    const std::uint64_t stride = std::uint64_t{1} << q;
    const std::uint64_t half = amps.size() / 2;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero(k, q);
        const std::uint64_t i1 = i0 | stride;
        const Amplitude a0 = amps[i0];
        const Amplitude a1 = amps[i1];
        // [[c, -s], [s, c]]
        amps[i0] = c * a0 - s * a1;
        amps[i1] = s * a0 + c * a1;
    }
}

void apply_xy(StateVector& psi, std::size_t a, std::size_t b, double beta) {
    check_qubit(psi, a);
    check_qubit(psi, b);
    if (a == b) throw ConfigError("XY gate needs two distinct qubits");
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    const std::uint64_t ma = std::uint64_t{1} << a;
    const std::uint64_t mb = std::uint64_t{1} << b;
    auto amps = psi.amplitudes();
    const std::uint64_t quarter = amps.size() / 4;
    for (std::uint64_t k = 0; k < quarter; ++k) {
        const std::uint64_t base = insert_zero(insert_zero(k, lo), hi);
        const std::uint64_t p = base | mb;  // qubit a = 0, qubit b = 1
        const std::uint64_t r = base | ma;  // qubit a = 1, qubit b = 0
        const Amplitude ap = amps[p];
        const Amplitude ar = amps[r];
        amps[p] = {c * ap.real() + s * ar.imag(), c * ap.imag() - s * ar.real()};
        amps[r] = {c * ar.real() + s * ap.imag(), c * ar.imag() - s * ap.real()};
    }
}

void apply_mixer(StateVector& psi, const MixerSpec& spec, double beta) {
    spec.validate(psi.num_qubits());
    if (beta == 0.0) return;
    switch (spec.kind) {
        case MixerKind::transverse_x:
            for (std::size_t q = 0; q < psi.num_qubits(); ++q) apply_rx(psi, q, beta);
            return;
        case MixerKind::transverse_y:
            for (std::size_t q = 0; q < psi.num_qubits(); ++q) apply_ry(psi, q, beta);
            return;
        default:
            break;
    }
    for (const auto& [a, b] : spec.xy_edges()) apply_xy(psi, a, b, beta);
    for (std::size_t q : spec.free_qubits(psi.num_qubits())) apply_rx(psi, q, beta);
}

double expectation_z(const StateVector& psi, std::size_t q) {
    check_qubit(psi, q);
    auto amps = psi.amplitudes();
    double s = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const double p = std::norm(amps[b]);
        s += ((b >> q) & 1U) ? -p : p;
    }
    return s;
}

double expectation_zz(const StateVector& psi, std::size_t a, std::size_t b) {
    check_qubit(psi, a);
    check_qubit(psi, b);
    return expectation_zz(psi.probabilities(), a, b);
}

double expectation_zz(std::span<const double> probabilities, std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::uint64_t k = 0; k < probabilities.size(); ++k) {
        const bool odd = (((k >> a) ^ (k >> b)) & 1U) != 0;
        s += odd ? -probabilities[k] : probabilities[k];
    }
    return s;
}

std::vector<double> expectation_z_all(std::span<const double> probabilities, std::size_t num_qubits) {
    std::vector<double> z(num_qubits, 0.0);
    for (std::size_t q = 0; q < num_qubits; ++q) {
        double s = 0.0;
        for (std::uint64_t k = 0; k < probabilities.size(); ++k) {
            s += ((k >> q) & 1U) ? -probabilities[k] : probabilities[k];
        }
        z[q] = s;
    }
    return z;
}

double expectation_energy(const StateVector& psi, const DiagonalCost& cost) {
    if (cost.num_qubits() != psi.num_qubits()) throw ConfigError("cost and state sizes differ");
    auto amps = psi.amplitudes();
    const auto e = cost.energies();
    double s = 0.0;
    for (std::size_t b = 0; b < amps.size(); ++b) s += std::norm(amps[b]) * e[b];
    return s;
}

std::vector<std::uint64_t> sample(const StateVector& psi, std::size_t shots, std::mt19937_64& rng) {
    if (shots < 1) throw ParameterError("need at least one shot");
    auto amps = psi.amplitudes();
    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < amps.size(); ++b) {
        acc += std::norm(amps[b]);
        cdf[b] = acc;
    }
    std::uniform_real_distribution<double> uni(0.0, acc);
    std::vector<std::uint64_t> out;
    out.reserve(shots);
    for (std::size_t s = 0; s < shots; ++s) {
        const double r = uni(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        std::uint64_t b = static_cast<std::uint64_t>(std::distance(cdf.begin(), it));
        if (b >= cdf.size()) b = cdf.size() - 1;
        // Skip zero-probability states that share a cdf value with their successor.
        while (b > 0 && std::norm(amps[b]) == 0.0) --b;
        out.push_back(b);
    }
    return out;
}

}  // namespace rqw
