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

#include "qav/quantum_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qav {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Amplitude kI(0.0, 1.0);

int QubitsForDimension(std::size_t dim) {
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("state dimension must be a power of two >= 2, got " +
                                std::to_string(dim));
  }
  const int qubits = std::countr_zero(dim);
  if (qubits > kMaxQubits) {
    throw std::invalid_argument("states beyond " + std::to_string(kMaxQubits) +
                                " qubits are not supported");
  }
  return qubits;
}

double SquaredNorm(std::span<const Amplitude> amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

}  // namespace

PureState::PureState(std::vector<Amplitude> amplitudes)
    : num_qubits_(QubitsForDimension(amplitudes.size())),
      amplitudes_(std::move(amplitudes)) {
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("state amplitude is not finite");
    }
  }
  const double norm = Norm();
  if (std::abs(norm - 1.0) > kStateTolerance) {
    throw std::invalid_argument("state is not normalized (norm " + std::to_string(norm) + ")");
  }
}

PureState PureState::Basis(int num_qubits, std::size_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("num_qubits out of range");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::out_of_range("basis index out of range");
  std::vector<Amplitude> amps(dim);
  amps[index] = 1.0;
  return PureState(std::move(amps));
}

PureState PureState::Normalized(std::vector<Amplitude> amplitudes) {
  const double norm = std::sqrt(SquaredNorm(amplitudes));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  for (auto& a : amplitudes) a /= norm;
  return PureState(std::move(amplitudes));
}

double PureState::Norm() const { return std::sqrt(SquaredNorm(amplitudes_)); }

double PureState::Distance(const PureState& other) const {
  if (other.dimension() != dimension()) {
    throw std::invalid_argument("state dimension mismatch");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    d = std::max(d, std::abs(amplitudes_[i] - other.amplitudes_[i]));
  }
  return d;
}

GateMatrix::GateMatrix(int dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ != 2 && dim_ != 4) {
    throw std::invalid_argument("gate dimension must be 2 or 4");
  }
  if (entries_.size() != static_cast<std::size_t>(dim_ * dim_)) {
    throw std::invalid_argument("gate entry count does not match dimension");
  }
  for (const auto& a : entries_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("gate entry is not finite");
    }
  }
  if (UnitarityError(dim_, entries_) > kStateTolerance) {
    throw std::invalid_argument("gate is not unitary");
  }
}

GateMatrix GateMatrix::Identity(int dim) {
  std::vector<Amplitude> e(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return GateMatrix(dim, std::move(e));
}

double GateMatrix::UnitarityError(int dim, std::span<const Amplitude> entries) {
  double err = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Amplitude s = 0.0;
      for (int r = 0; r < dim; ++r) {
        s += std::conj(entries[r * dim + i]) * entries[r * dim + j];
      }
      err = std::max(err, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  return err;
}

GateMatrix GateMatrix::operator*(const GateMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::invalid_argument("gate dimension mismatch");
  std::vector<Amplitude> out(entries_.size());
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      Amplitude s = 0.0;
      for (int r = 0; r < dim_; ++r) s += at(i, r) * rhs.at(r, j);
      out[i * dim_ + j] = s;
    }
  }
  return GateMatrix(dim_, std::move(out));
}

GateMatrix GateMatrix::Adjoint() const {
  std::vector<Amplitude> out(entries_.size());
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) out[i * dim_ + j] = std::conj(at(j, i));
  }
  return GateMatrix(dim_, std::move(out));
}

double GateMatrix::Distance(const GateMatrix& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("gate dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    d = std::max(d, std::abs(entries_[i] - other.entries_[i]));
  }
  return d;
}

std::string_view ToString(BellOutcome outcome) {
  switch (outcome) {
    case BellOutcome::kPhiPlus: return "PhiPlus";
    case BellOutcome::kPhiMinus: return "PhiMinus";
    case BellOutcome::kPsiPlus: return "PsiPlus";
    case BellOutcome::kPsiMinus: return "PsiMinus";
  }
  return "?";
}

BellOutcome BellOutcomeFromString(std::string_view name) {
  for (auto o : kBellOrder) {
    if (ToString(o) == name) return o;
  }
  throw std::invalid_argument("unknown Bell outcome: " + std::string(name));
}

GateMatrix PauliX() { return GateMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
GateMatrix PauliY() { return GateMatrix(2, {0.0, -kI, kI, 0.0}); }
GateMatrix PauliZ() { return GateMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
GateMatrix Hadamard() {
  return GateMatrix(2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
}

GateMatrix PhaseRotation(double theta) {
  return GateMatrix(2, {1.0, 0.0, 0.0, std::polar(1.0, theta)});
}

GateMatrix PhaseGate(int pair) {
  if (pair < 1) throw std::invalid_argument("phase gate pair index must be >= 1");
  if (pair == 1) return PauliZ();
  if (pair == 2) return GateMatrix(2, {1.0, 0.0, 0.0, kI});
  return PhaseRotation(std::numbers::pi / std::ldexp(1.0, pair - 1));
}

PureState BellPhiPlus() { return BellState(BellOutcome::kPhiPlus); }

PureState BellState(BellOutcome outcome) {
  std::array<Amplitude, 4> c{};
  c[static_cast<int>(outcome)] = 1.0;
  return PureState(BellReconstruct(c));
}

PureState ApplyGate(const PureState& state, const GateMatrix& gate, int target) {
  if (gate.dim() != 2) throw std::invalid_argument("ApplyGate expects a 2x2 gate");
  if (target < 0 || target >= state.num_qubits()) {
    throw std::out_of_range("target qubit " + std::to_string(target) + " out of range");
  }
  const std::size_t mask = std::size_t{1} << (state.num_qubits() - 1 - target);
  std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i & mask) continue;
    const Amplitude a0 = state[i];
    const Amplitude a1 = state[i | mask];
    out[i] = gate.at(0, 0) * a0 + gate.at(0, 1) * a1;
    out[i | mask] = gate.at(1, 0) * a0 + gate.at(1, 1) * a1;
  }
  return PureState(std::move(out));
}

PureState ApplyFull(const PureState& state, const GateMatrix& gate) {
  if (static_cast<std::size_t>(gate.dim()) != state.dimension()) {
    throw std::invalid_argument("gate dimension does not match state");
  }
  std::vector<Amplitude> out(state.dimension());
  for (int i = 0; i < gate.dim(); ++i) {
    for (int j = 0; j < gate.dim(); ++j) out[i] += gate.at(i, j) * state[j];
  }
  return PureState(std::move(out));
}

std::array<Amplitude, 4> BellDecompose(const PureState& state) {
  if (state.num_qubits() != 2) {
    throw std::invalid_argument("Bell decomposition needs a two-qubit state");
  }
  const Amplitude a00 = state[0], a01 = state[1], a10 = state[2], a11 = state[3];
  return {(a00 + a11) * kInvSqrt2, (a00 - a11) * kInvSqrt2, (a01 + a10) * kInvSqrt2,
          (a01 - a10) * kInvSqrt2};
}

std::vector<Amplitude> BellReconstruct(const std::array<Amplitude, 4>& c) {
  return {(c[0] + c[1]) * kInvSqrt2, (c[2] + c[3]) * kInvSqrt2, (c[2] - c[3]) * kInvSqrt2,
          (c[0] - c[1]) * kInvSqrt2};
}

std::array<double, 4> BellProbabilities(const PureState& state) {
  const auto c = BellDecompose(state);
  return {std::norm(c[0]), std::norm(c[1]), std::norm(c[2]), std::norm(c[3])};
}

std::size_t SampleIndex(std::span<const double> probabilities, RandomSource& rng) {
  double total = 0.0;
  for (double p : probabilities) {
    if (p >= kProbabilityFloor) total += p;
  }
  if (!(total > 0.0)) throw std::invalid_argument("no outcome has positive probability");
  const double u = rng.Uniform() * total;
  double cumulative = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] < kProbabilityFloor) continue;
    cumulative += probabilities[i];
    last = i;
    if (u < cumulative) return i;
  }
  return last;
}

BellOutcome BellMeasure(const PureState& state, RandomSource& rng) {
  const auto probs = BellProbabilities(state);
  return kBellOrder[SampleIndex(probs, rng)];
}

double Fidelity(const PureState& a, const PureState& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("fidelity of states with different qubit counts");
  }
  Amplitude overlap = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::min(1.0, std::norm(overlap));
}

QubitMeasurement MeasureQubit(const PureState& state, int target, Basis basis,
                              RandomSource& rng) {
  if (target < 0 || target >= state.num_qubits()) {
    throw std::out_of_range("target qubit " + std::to_string(target) + " out of range");
  }
  // Rotate into the computational basis, project, rotate back.
  PureState rotated = basis == Basis::kHadamard ? ApplyGate(state, Hadamard(), target) : state;
  const std::size_t mask = std::size_t{1} << (state.num_qubits() - 1 - target);
  double p1 = 0.0;
  for (std::size_t i = 0; i < rotated.dimension(); ++i) {
    if (i & mask) p1 += std::norm(rotated[i]);
  }
  const std::array<double, 2> probs = {1.0 - p1, p1};
  const int outcome = static_cast<int>(SampleIndex(probs, rng));
  std::vector<Amplitude> collapsed(rotated.amplitudes().begin(), rotated.amplitudes().end());
  for (std::size_t i = 0; i < collapsed.size(); ++i) {
    if (((i & mask) != 0) != (outcome == 1)) collapsed[i] = 0.0;
  }
  PureState post = PureState::Normalized(std::move(collapsed));
  if (basis == Basis::kHadamard) post = ApplyGate(post, Hadamard(), target);
  return {outcome, std::move(post)};
}

}  // namespace qav
