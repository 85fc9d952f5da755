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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qav/quantum_core.hpp"

using namespace qav;
using std::numbers::pi;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Bell coefficients straight from the definitions of the four Bell vectors,
// independent of BellDecompose.
std::array<Amplitude, 4> BellOverlapOracle(const PureState& s) {
  const std::array<std::array<Amplitude, 4>, 4> bell = {{
      {kInvSqrt2, 0.0, 0.0, kInvSqrt2},
      {kInvSqrt2, 0.0, 0.0, -kInvSqrt2},
      {0.0, kInvSqrt2, kInvSqrt2, 0.0},
      {0.0, kInvSqrt2, -kInvSqrt2, 0.0},
  }};
  std::array<Amplitude, 4> c{};
  for (int b = 0; b < 4; ++b) {
    for (int i = 0; i < 4; ++i) c[b] += std::conj(bell[b][i]) * s[i];
  }
  return c;
}

PureState RandomState(int qubits, RandomSource& rng) {
  std::vector<Amplitude> v(std::size_t{1} << qubits);
  for (auto& x : v) x = {rng.Uniform() - 0.5, rng.Uniform() - 0.5};
  return PureState::Normalized(std::move(v));
}

PureState PhaseState(double phi) {
  return PureState({kInvSqrt2, 0.0, 0.0, std::polar(kInvSqrt2, phi)});
}

}  // namespace

TEST_CASE("Phi+ amplitudes") {
  const PureState s = BellPhiPlus();
  CHECK(s.num_qubits() == 2);
  CHECK(s[0].real() == doctest::Approx(kInvSqrt2));
  CHECK(std::abs(s[1]) == 0.0);
  CHECK(std::abs(s[2]) == 0.0);
  CHECK(s[3].real() == doctest::Approx(kInvSqrt2));
  CHECK(s.Norm() == doctest::Approx(1.0));
  const auto p = BellProbabilities(s);
  CHECK(p[0] == doctest::Approx(1.0));
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PureState({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PureState({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PureState({std::nan(""), 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PureState(std::vector<Amplitude>(32, 0.0)), std::invalid_argument);
  CHECK_NOTHROW(PureState::Basis(4, 15));
  CHECK_THROWS(PureState::Basis(2, 4));
}

TEST_CASE("gate validation") {
  CHECK_THROWS_AS(GateMatrix(2, {1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GateMatrix(3, std::vector<Amplitude>(9, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(GateMatrix(2, {1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("phase gate entries") {
  CHECK(PhaseGate(1).Distance(GateMatrix(2, {1.0, 0.0, 0.0, -1.0})) == 0.0);
  CHECK(PhaseGate(1).Distance(PauliZ()) == 0.0);
  CHECK(PhaseGate(2).Distance(GateMatrix(2, {1.0, 0.0, 0.0, Amplitude(0.0, 1.0)})) == 0.0);
  const Amplitude e3 = PhaseGate(3).at(1, 1);
  CHECK(e3.real() == doctest::Approx(kInvSqrt2));
  CHECK(e3.imag() == doctest::Approx(kInvSqrt2));
  CHECK_THROWS_AS(PhaseGate(0), std::invalid_argument);
}

TEST_CASE("phase gate to the power 2^a is the identity") {
  for (int a = 1; a <= 8; ++a) {
    GateMatrix g = GateMatrix::Identity(2);
    for (int i = 0; i < (1 << a); ++i) g = g * PhaseGate(a);
    CHECK(g.Distance(GateMatrix::Identity(2)) < 1e-12);
  }
}

TEST_CASE("veto gates on the travel qubit") {
  const PureState once = ApplyGate(BellPhiPlus(), PhaseGate(1), 1);
  CHECK(once.Distance(BellState(BellOutcome::kPhiMinus)) < 1e-15);
  const PureState twice = ApplyGate(ApplyGate(BellPhiPlus(), PhaseGate(2), 1), PhaseGate(2), 1);
  CHECK(twice.Distance(BellState(BellOutcome::kPhiMinus)) < 1e-15);
  const PureState id = ApplyGate(once, GateMatrix::Identity(2), 0);
  CHECK(id.Distance(once) == 0.0);
}

TEST_CASE("apply gate argument checks") {
  CHECK_THROWS_AS(ApplyGate(BellPhiPlus(), PauliX(), 2), std::out_of_range);
  CHECK_THROWS_AS(ApplyGate(BellPhiPlus(), PauliX(), -1), std::out_of_range);
  CHECK_THROWS_AS(ApplyGate(BellPhiPlus(), GateMatrix::Identity(4), 0), std::invalid_argument);
  CHECK_THROWS_AS(ApplyFull(BellPhiPlus(), GateMatrix::Identity(2)), std::invalid_argument);
}

TEST_CASE("qubit 0 is the most significant bit") {
  const PureState s = ApplyGate(PureState::Basis(2, 0), PauliX(), 0);
  CHECK(std::abs(s[2] - 1.0) < 1e-15);
  const PureState t = ApplyGate(PureState::Basis(2, 0), PauliX(), 1);
  CHECK(std::abs(t[1] - 1.0) < 1e-15);
}

TEST_CASE("Bell decomposition examples") {
  const auto phi = BellDecompose(BellPhiPlus());
  CHECK(std::abs(phi[0] - 1.0) < 1e-15);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(phi[i]) < 1e-15);

  // phi = 3pi/2: e^{i phi} = -i, so the Phi+/- coefficients are (1 -/+ i)/2.
  const auto c = BellDecompose(PhaseState(3 * pi / 2));
  CHECK(std::abs(c[0] - Amplitude(0.5, -0.5)) < 1e-12);
  CHECK(std::abs(c[1] - Amplitude(0.5, 0.5)) < 1e-12);
  const auto p = BellProbabilities(PhaseState(3 * pi / 2));
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));

  const auto psi = BellDecompose(PureState::Basis(2, 1));
  CHECK(std::abs(psi[0]) < 1e-15);
  CHECK(std::abs(psi[1]) < 1e-15);
  CHECK(std::abs(psi[2] - kInvSqrt2) < 1e-15);
  CHECK(std::abs(psi[3] - kInvSqrt2) < 1e-15);
}

TEST_CASE("decompose agrees with the overlap oracle and round-trips") {
  RandomSource rng(11);
  for (int t = 0; t < 200; ++t) {
    const PureState s = RandomState(2, rng);
    const auto c = BellDecompose(s);
    const auto oracle = BellOverlapOracle(s);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(c[i] - oracle[i]) < 1e-12);
    const PureState back(BellReconstruct(c));
    CHECK(back.Distance(s) < 1e-12);
  }
}

TEST_CASE("Bell measurement") {
  RandomSource rng(5);
  for (int i = 0; i < 1000; ++i) {
    CHECK(BellMeasure(BellState(BellOutcome::kPhiMinus), rng) == BellOutcome::kPhiMinus);
    CHECK(BellMeasure(BellPhiPlus(), rng) == BellOutcome::kPhiPlus);
    CHECK(BellMeasure(BellState(BellOutcome::kPsiMinus), rng) == BellOutcome::kPsiMinus);
  }
  const PureState half = PhaseState(3 * pi / 2);
  const int trials = 100000;
  int minus = 0;
  for (int i = 0; i < trials; ++i) minus += BellMeasure(half, rng) == BellOutcome::kPhiMinus;
  CHECK(std::abs(minus / double(trials) - 0.5) < 0.005);
}

TEST_CASE("sampling ignores probabilities below the floor") {
  RandomSource rng(9);
  const std::vector<double> probs = {1e-17, 1.0 - 1e-17, 0.0};
  for (int i = 0; i < 10000; ++i) CHECK(SampleIndex(probs, rng) == 1);
  const std::vector<double> none = {0.0, 1e-20};
  CHECK_THROWS(SampleIndex(none, rng));
}

TEST_CASE("fidelity") {
  RandomSource rng(3);
  const PureState s = RandomState(2, rng);
  CHECK(Fidelity(s, s) == doctest::Approx(1.0));
  CHECK(Fidelity(BellPhiPlus(), BellState(BellOutcome::kPhiMinus)) == doctest::Approx(0.0));
  CHECK(Fidelity(BellPhiPlus(), PhaseState(pi / 2)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Fidelity(BellPhiPlus(), PureState::Basis(1, 0)), std::invalid_argument);
}

TEST_CASE("unitaries preserve the norm") {
  RandomSource rng(17);
  const std::vector<GateMatrix> gates = {PauliX(), PauliY(), PauliZ(), Hadamard(), PhaseGate(3),
                                         PhaseRotation(0.37)};
  for (int q = 1; q <= kMaxQubits; ++q) {
    PureState s = RandomState(q, rng);
    for (int step = 0; step < 500; ++step) {
      s = ApplyGate(s, gates[rng.Below(gates.size())], static_cast<int>(rng.Below(q)));
    }
    CHECK(std::abs(s.Norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("gate algebra") {
  CHECK((Hadamard() * Hadamard()).Distance(GateMatrix::Identity(2)) < 1e-15);
  CHECK((PauliX() * PauliX()).Distance(GateMatrix::Identity(2)) < 1e-15);
  const GateMatrix xz = PauliX() * PauliZ();
  CHECK((xz * xz.Adjoint()).Distance(GateMatrix::Identity(2)) < 1e-15);
  // XZ = -iY.
  const GateMatrix y = PauliY();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) CHECK(std::abs(xz.at(r, c) - Amplitude(0, -1) * y.at(r, c)) < 1e-15);
  }
}

TEST_CASE("single-qubit measurement") {
  RandomSource rng(23);
  const auto zero = MeasureQubit(PureState::Basis(1, 0), 0, Basis::kComputational, rng);
  CHECK(zero.outcome == 0);
  CHECK(zero.post_state.Distance(PureState::Basis(1, 0)) < 1e-15);

  const PureState plus = ApplyGate(PureState::Basis(1, 0), Hadamard(), 0);
  for (int i = 0; i < 100; ++i) {
    CHECK(MeasureQubit(plus, 0, Basis::kHadamard, rng).outcome == 0);
  }
  int ones = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    const auto m = MeasureQubit(plus, 0, Basis::kComputational, rng);
    ones += m.outcome;
    CHECK(m.post_state.Distance(PureState::Basis(1, static_cast<std::size_t>(m.outcome))) < 1e-12);
  }
  CHECK(std::abs(ones / double(trials) - 0.5) < 0.015);

  // Measuring the travel half of Phi+ collapses the home half to match.
  for (int i = 0; i < 100; ++i) {
    const auto m = MeasureQubit(BellPhiPlus(), 1, Basis::kComputational, rng);
    const std::size_t idx = m.outcome == 0 ? 0 : 3;
    CHECK(std::abs(std::abs(m.post_state[idx]) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(MeasureQubit(BellPhiPlus(), 2, Basis::kComputational, rng), std::out_of_range);
}

TEST_CASE("outcome names round-trip") {
  for (BellOutcome o : kBellOrder) CHECK(BellOutcomeFromString(ToString(o)) == o);
  CHECK(ToString(BellOutcome::kPhiMinus) == "PhiMinus");
  CHECK_THROWS_AS(BellOutcomeFromString("Phi"), std::invalid_argument);
}
