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

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rqw/ising.hpp"

namespace rqw {

/// Dense simulation is capped at 2^26 amplitudes (1 GiB of complex doubles).
inline constexpr std::size_t kMaxQubits = 26;

using Amplitude = std::complex<double>;

/// 2^n complex amplitudes. Basis index bit q holds qubit q, so qubit 0 is the
/// least significant bit; rendered bitstrings put qubit 0 leftmost.
class StateVector {
 public:
    /// |0...0>.
    explicit StateVector(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }

    std::span<Amplitude> amplitudes() { return amplitudes_; }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    Amplitude& operator[](std::uint64_t b) { return amplitudes_[b]; }
    const Amplitude& operator[](std::uint64_t b) const { return amplitudes_[b]; }

    double norm_squared() const;
    double probability(std::uint64_t b) const { return std::norm(amplitudes_[b]); }
    std::vector<double> probabilities() const;

 private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// Qubit q of basis index b, rendered with qubit 0 leftmost.
std::string bitstring(std::uint64_t b, std::size_t num_qubits);

/// Active Ising variables in ascending order, one qubit each.
class QubitLayout {
 public:
    QubitLayout() = default;
    explicit QubitLayout(std::vector<Index> vars);
    static QubitLayout of(const IsingInstance& ising);

    std::size_t size() const { return vars_.size(); }
    Index var(std::size_t qubit) const { return vars_[qubit]; }
    std::size_t qubit(Index var) const;
    bool contains(Index var) const { return qubits_.count(var) != 0; }
    const std::vector<Index>& vars() const { return vars_; }

 private:
    std::vector<Index> vars_;
    std::map<Index, std::size_t> qubits_;
};

/// Ising energies of all 2^n basis states, z_q = 1 - 2 * bit_q(b).
class DiagonalCost {
 public:
    static DiagonalCost from_ising(const IsingInstance& ising, const QubitLayout& layout);

    std::size_t num_qubits() const { return num_qubits_; }
    std::span<const double> energies() const { return energies_; }
    double operator[](std::uint64_t b) const { return energies_[b]; }
    /// Largest |h| or |J| of the source instance.
    double scale() const { return scale_; }

 private:
    std::size_t num_qubits_ = 0;
    std::vector<double> energies_;
    double scale_ = 0.0;
};

enum class MixerKind { transverse_x, transverse_y, ring_xy, clique_xy, matching_xy, star_xy };

const char* to_string(MixerKind kind);
MixerKind mixer_kind_from_string(const std::string& name);
inline bool is_xy(MixerKind kind) { return kind != MixerKind::transverse_x && kind != MixerKind::transverse_y; }

/// Mixer family plus, for XY kinds, the disjoint qubit blocks it acts on.
/// Under an XY kind, qubits outside every block get exp(-i beta X).
struct MixerSpec {
    MixerKind kind = MixerKind::transverse_x;
    std::vector<std::vector<std::size_t>> blocks;

    void validate(std::size_t num_qubits) const;

    /// Ordered XY edge list: block-major, then the kind's own order.
    /// Matching lists round one (0-1, 2-3, ...) before round two (1-2, 3-4, ...);
    /// an odd block has no closing edge in either round.
    std::vector<std::pair<std::size_t, std::size_t>> xy_edges() const;
    std::vector<std::size_t> free_qubits(std::size_t num_qubits) const;
};

/// Block of qubits holding exactly `weight` ones.
struct QubitBlock {
    std::vector<std::size_t> qubits;
    std::size_t weight = 1;
};

enum class FeasibleInit { basis, uniform_superposition };

StateVector init_plus(std::size_t num_qubits);

/// Product of per-block Hamming-weight states; qubits in no block start in |+>.
/// `basis` sets the first `weight` qubits of each block; `uniform_superposition`
/// spreads equal amplitude over every weight-`weight` pattern (a W state for
/// weight one).
StateVector init_feasible(std::size_t num_qubits, std::span<const QubitBlock> blocks, FeasibleInit mode);

/// One-hot special case of init_feasible.
StateVector init_onehot_feasible(std::size_t num_qubits, const std::vector<std::vector<std::size_t>>& blocks,
                                 FeasibleInit mode);

/// Probability of the subspace where every block has its Hamming weight.
double feasible_mass(const StateVector& psi, std::span<const QubitBlock> blocks);

void apply_cost_phase(StateVector& psi, const DiagonalCost& cost, double gamma);
void apply_mixer(StateVector& psi, const MixerSpec& spec, double beta);

/// exp(-i beta X_q)
void apply_rx(StateVector& psi, std::size_t q, double beta);
/// exp(-i beta Y_q)
void apply_ry(StateVector& psi, std::size_t q, double beta);
/// exp(-i beta (X_a X_b + Y_a Y_b) / 2): rotation inside span{|01>, |10>}.
void apply_xy(StateVector& psi, std::size_t a, std::size_t b, double beta);

double expectation_z(const StateVector& psi, std::size_t q);
double expectation_zz(const StateVector& psi, std::size_t a, std::size_t b);
double expectation_energy(const StateVector& psi, const DiagonalCost& cost);

/// <Z_q> for every qubit in one pass over the state.
std::vector<double> expectation_z_all(std::span<const double> probabilities, std::size_t num_qubits);
double expectation_zz(std::span<const double> probabilities, std::size_t a, std::size_t b);

/// M i.i.d. basis-index draws from |amplitude|^2.
std::vector<std::uint64_t> sample(const StateVector& psi, std::size_t shots, std::mt19937_64& rng);

}  // namespace rqw
