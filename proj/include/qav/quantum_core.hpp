/*
 * Copyright 2026 The qav Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Dense state-vector simulator for the few-qubit systems the veto protocol
// needs: two-qubit Bell pairs, single-qubit gates, Bell-basis analysis.
//
// Basis convention: qubit 0 is the most significant bit of the basis index.
// For a Bell pair qubit 0 is the home qubit held by the authority and qubit 1
// the travel qubit, so index = (home << 1) | travel.

#ifndef QAV_QUANTUM_CORE_HPP_
#define QAV_QUANTUM_CORE_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qav/random.hpp"

namespace qav {

using Amplitude = std::complex<double>;

// Tolerance for normalization and unitarity checks.
inline constexpr double kStateTolerance = 1e-10;

// Bell-basis outcome probabilities below this are treated as exact zeros
// when sampling, so probability-one outcomes never flip on rounding residue.
inline constexpr double kProbabilityFloor = 1e-15;

inline constexpr int kMaxQubits = 4;

class GateMatrix;

// Normalized pure state on 1..kMaxQubits qubits. Immutable once built.
class PureState {
 public:
  // Throws std::invalid_argument unless the size is a power of two between
  // 2 and 2^kMaxQubits, every amplitude is finite and the norm is 1.
  explicit PureState(std::vector<Amplitude> amplitudes);

  // Computational basis state |index>.
  static PureState Basis(int num_qubits, std::size_t index);

  // Rescales arbitrary nonzero amplitudes to unit norm. Only used after
  // measurement collapse.
  static PureState Normalized(std::vector<Amplitude> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

  double Norm() const;

  // Max componentwise distance; states are compared without removing a
  // global phase.
  double Distance(const PureState& other) const;

 private:
  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

// Square unitary of dimension 2 or 4.
class GateMatrix {
 public:
  // Row-major entries. Throws std::invalid_argument if the dimension is not
  // 2 or 4, or the matrix is not unitary within kStateTolerance.
  GateMatrix(int dim, std::vector<Amplitude> entries);

  static GateMatrix Identity(int dim);

  int dim() const { return dim_; }
  const Amplitude& at(int row, int col) const { return entries_[row * dim_ + col]; }

  GateMatrix operator*(const GateMatrix& rhs) const;
  GateMatrix Adjoint() const;

  double Distance(const GateMatrix& other) const;

  // Entrywise unitarity residual max |(G^dagger G - I)_ij|.
  static double UnitarityError(int dim, std::span<const Amplitude> entries);

 private:
  int dim_;
  std::vector<Amplitude> entries_;
};

enum class BellOutcome { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

inline constexpr std::array<BellOutcome, 4> kBellOrder = {
    BellOutcome::kPhiPlus, BellOutcome::kPhiMinus, BellOutcome::kPsiPlus,
    BellOutcome::kPsiMinus};

std::string_view ToString(BellOutcome outcome);
BellOutcome BellOutcomeFromString(std::string_view name);

// Single-qubit measurement basis.
enum class Basis { kComputational = 0, kHadamard = 1 };

// Gates.
GateMatrix PauliX();
GateMatrix PauliY();
GateMatrix PauliZ();
GateMatrix Hadamard();

// diag(1, exp(i*pi/2^(pair-1))), the veto gate for Bell pair `pair` (1-based).
// Exact for pair 1 and 2. Throws std::invalid_argument for pair < 1.
GateMatrix PhaseGate(int pair);

// diag(1, exp(i*theta)).
GateMatrix PhaseRotation(double theta);

// (|00> + |11>)/sqrt(2).
PureState BellPhiPlus();

// The Bell basis vector for `outcome` on two qubits.
PureState BellState(BellOutcome outcome);

// Applies a 2x2 gate to `target`. Throws std::out_of_range for a bad target
// and std::invalid_argument for a gate of the wrong dimension.
PureState ApplyGate(const PureState& state, const GateMatrix& gate, int target);

// Applies a full-dimension gate to the whole register.
PureState ApplyFull(const PureState& state, const GateMatrix& gate);

// Coefficients on (Phi+, Phi-, Psi+, Psi-). Two-qubit states only.
std::array<Amplitude, 4> BellDecompose(const PureState& state);

// Inverse of BellDecompose: sum_i c_i |Bell_i>.
std::vector<Amplitude> BellReconstruct(const std::array<Amplitude, 4>& coefficients);

std::array<double, 4> BellProbabilities(const PureState& state);

// Projective Bell measurement by inverse-CDF sampling over BellProbabilities
// in kBellOrder.
BellOutcome BellMeasure(const PureState& state, RandomSource& rng);

// Samples an index from a discrete distribution by inverse CDF, ignoring
// entries below kProbabilityFloor. Throws if every entry is below the floor.
std::size_t SampleIndex(std::span<const double> probabilities, RandomSource& rng);

// |<a|b>|^2. Throws std::invalid_argument on dimension mismatch.
double Fidelity(const PureState& a, const PureState& b);

struct QubitMeasurement {
  int outcome;  // 0 or 1 in the chosen basis (|+> is 0, |-> is 1).
  PureState post_state;
};

// Projective measurement of one qubit in `basis`; the post-measurement state
// is renormalized explicitly.
QubitMeasurement MeasureQubit(const PureState& state, int target, Basis basis,
                              RandomSource& rng);

}  // namespace qav

#endif  // QAV_QUANTUM_CORE_HPP_
