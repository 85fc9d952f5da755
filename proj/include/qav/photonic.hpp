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

// Single-photon linear optics in Jones calculus.
//
// One photon carries two qubits: polarization (H/V) and path (0/1). Amplitude
// order is |H,0>, |H,1>, |V,0>, |V,1>, which is the logical order |00>..|11>
// with polarization as qubit 0 and path as qubit 1. The authority keeps path
// 0; path 1 is the mode that visits the voters.
//
// The second half of this header is a coined discrete-time quantum walk on a
// finite window of the line.

#ifndef QAV_PHOTONIC_HPP_
#define QAV_PHOTONIC_HPP_

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "qav/quantum_core.hpp"
#include "qav/random.hpp"

namespace qav::photonic {

enum class Path { kZero = 0, kOne = 1 };

class PhotonState {
 public:
  // Throws std::invalid_argument unless normalized within kStateTolerance.
  explicit PhotonState(const std::array<Amplitude, 4>& amplitudes);

  // |H,0>.
  static PhotonState Horizontal0();

  // Same amplitudes relabeled as a logical qubit state.
  static PhotonState FromLogical(const PureState& logical);

  const std::array<Amplitude, 4>& amplitudes() const { return amps_; }
  Amplitude h0() const { return amps_[0]; }
  Amplitude h1() const { return amps_[1]; }
  Amplitude v0() const { return amps_[2]; }
  Amplitude v1() const { return amps_[3]; }

  // Largest |amplitude| on |H,1> or |V,0>; zero for every valid protocol
  // state.
  double CrossTermSupport() const;

 private:
  std::array<Amplitude, 4> amps_;
};

PureState ToLogical(const PhotonState& photon);

struct BeamSplitter {};
struct HalfWavePlate {
  double angle = 0.0;
  std::optional<Path> path;  // empty: acts on both paths
};
struct QuarterWavePlate {
  double angle = 0.0;
  std::optional<Path> path;
};
struct PhaseShifter {
  double theta = 0.0;
  Path path = Path::kOne;
};

using OpticalElement = std::variant<BeamSplitter, HalfWavePlate, QuarterWavePlate, PhaseShifter>;

// 2x2 Jones matrices.
GateMatrix HalfWavePlateJones(double angle);
GateMatrix QuarterWavePlateJones(double angle);
GateMatrix BeamSplitterMatrix();

// 4x4 action on polarization (x) path.
GateMatrix ElementAction(const OpticalElement& element);

PhotonState Apply(const PhotonState& photon, const OpticalElement& element);

// |H,0> -> BS -> HWP(pi/4) on path 1 -> (|H,0> + |V,1>)/sqrt(2).
PhotonState PrepareBellPhotonic();

// Phase shifter pi/2^(pair-1) on path 1. Throws std::invalid_argument if the
// photon has cross-term support above kCrossTermTolerance or pair < 1.
PhotonState ApplyVetoPhotonic(const PhotonState& photon, int pair);

inline constexpr double kCrossTermTolerance = 1e-9;

// Probability of a click in path 0 after the analyzer (HWP(pi/4) on path 1
// followed by a beam splitter).
double AnalyzerPathZeroProbability(const PhotonState& photon);

// Interferometric Bell measurement restricted to {PhiPlus, PhiMinus}: path 0
// click means PhiPlus, path 1 click means PhiMinus. Same cross-term guard as
// ApplyVetoPhotonic.
BellOutcome BellMeasurePhotonic(const PhotonState& photon, RandomSource& rng);

// ---------------------------------------------------------------------------
// Discrete-time quantum walk.

struct CoinParams {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double theta = 0.0;

  // Zero phases and theta = pi/4: the Hadamard coin up to a global phase and
  // a sign convention on the second row.
  static CoinParams HadamardLike();
};

// e^{ip} [[e^{iq} cos t, e^{ir} sin t], [-e^{-ir} sin t, e^{-iq} cos t]].
GateMatrix CoinMatrix(const CoinParams& coin);

enum class Shift { kMinusOnA, kPlusOnB };

// Amplitudes over coin {a, b} (x) positions [min_position, max_position].
class WalkState {
 public:
  // Throws std::invalid_argument if the window is empty or sizes disagree,
  // or the norm is not 1.
  WalkState(int min_position, int max_position, std::vector<Amplitude> coin_a,
            std::vector<Amplitude> coin_b);

  // Walker localized at position 0 with coin state (a, b).
  static WalkState Localized(int radius, Amplitude a, Amplitude b);

  int min_position() const { return min_; }
  int max_position() const { return max_; }
  std::size_t width() const { return coin_a_.size(); }
  Amplitude a(int position) const { return coin_a_[Index(position)]; }
  Amplitude b(int position) const { return coin_b_[Index(position)]; }
  const std::vector<Amplitude>& coin_a() const { return coin_a_; }
  const std::vector<Amplitude>& coin_b() const { return coin_b_; }

  double Norm() const;
  std::vector<double> PositionDistribution() const;

 private:
  std::size_t Index(int position) const;

  int min_;
  int max_;
  std::vector<Amplitude> coin_a_;
  std::vector<Amplitude> coin_b_;
};

// Conditional shift alone. Throws std::out_of_range if a nonzero amplitude
// would leave the window.
WalkState ConditionalShift(const WalkState& walk, Shift shift);

// Coin on every position, then the selected conditional shift. Throws
// std::out_of_range if a nonzero amplitude would leave the window.
WalkState DtqwStep(const WalkState& walk, const CoinParams& coin, Shift shift);

// Coin, then S_minus on a, then S_plus on b.
WalkState DtqwFullStep(const WalkState& walk, const CoinParams& coin);

}  // namespace qav::photonic

#endif  // QAV_PHOTONIC_HPP_
