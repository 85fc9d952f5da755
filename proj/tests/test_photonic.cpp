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
#include "qav/photonic.hpp"
#include "qav/protocol.hpp"

using namespace qav;
using namespace qav::photonic;
using std::numbers::pi;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

using Dense = std::vector<std::vector<Amplitude>>;

Dense Multiply(const Dense& x, const Dense& y) {
  const std::size_t n = x.size();
  Dense out(n, std::vector<Amplitude>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

// One full walk step as a dense (2W x 2W) matrix over index coin * W + cell,
// built from the coin formula and the two shift definitions.
Dense FullStepOracle(const CoinParams& c, int radius) {
  const int w = 2 * radius + 1;
  const std::size_t dim = 2 * static_cast<std::size_t>(w);
  const Amplitude g = std::polar(1.0, c.p);
  const Amplitude coin[2][2] = {
      {g * std::polar(std::cos(c.theta), c.q), g * std::polar(std::sin(c.theta), c.r)},
      {-g * std::polar(std::sin(c.theta), -c.r), g * std::polar(std::cos(c.theta), -c.q)}};
  Dense coin_full(dim, std::vector<Amplitude>(dim));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int x = 0; x < w; ++x) coin_full[i * w + x][j * w + x] = coin[i][j];
    }
  }
  Dense minus_a(dim, std::vector<Amplitude>(dim)), plus_b(dim, std::vector<Amplitude>(dim));
  for (int x = 0; x < w; ++x) {
    if (x > 0) minus_a[x - 1][x] = 1.0;
    minus_a[w + x][w + x] = 1.0;
    plus_b[x][x] = 1.0;
    if (x + 1 < w) plus_b[w + x + 1][w + x] = 1.0;
  }
  return Multiply(plus_b, Multiply(minus_a, coin_full));
}

PhotonState WithPhase(double phi) {
  return PhotonState({kInvSqrt2, 0.0, 0.0, std::polar(kInvSqrt2, phi)});
}

}  // namespace

TEST_CASE("half-wave plate at pi/4 swaps polarization exactly") {
  const GateMatrix hwp = HalfWavePlateJones(pi / 4);
  CHECK(hwp.at(0, 0) == Amplitude(0.0));
  CHECK(hwp.at(0, 1) == Amplitude(1.0));
  CHECK(hwp.at(1, 0) == Amplitude(1.0));
  CHECK(hwp.at(1, 1) == Amplitude(0.0));
  const PhotonState h1({0.0, 1.0, 0.0, 0.0});
  const PhotonState out = Apply(h1, HalfWavePlate{pi / 4, std::nullopt});
  CHECK(out.v1() == Amplitude(1.0));
  const PhotonState h0 = Apply(PhotonState::Horizontal0(), HalfWavePlate{pi / 4, std::nullopt});
  CHECK(h0.v0() == Amplitude(1.0));
}

TEST_CASE("Jones matrices follow their formulas") {
  for (double alpha : {0.0, 0.1, 0.7, 1.3}) {
    const GateMatrix hwp = HalfWavePlateJones(alpha);
    CHECK(std::abs(hwp.at(0, 0) - std::cos(2 * alpha)) < 1e-15);
    CHECK(std::abs(hwp.at(0, 1) - std::sin(2 * alpha)) < 1e-15);
    CHECK(std::abs(hwp.at(1, 1) + std::cos(2 * alpha)) < 1e-15);
    CHECK_NOTHROW(QuarterWavePlateJones(alpha));
  }
  const GateMatrix bs = BeamSplitterMatrix();
  CHECK(std::abs(bs.at(0, 0) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(bs.at(1, 1) + kInvSqrt2) < 1e-15);
  // BS acts on the path factor: |H,0> -> (|H,0> + |H,1>)/sqrt(2).
  const PhotonState split = Apply(PhotonState::Horizontal0(), BeamSplitter{});
  CHECK(std::abs(split.h0() - kInvSqrt2) < 1e-15);
  CHECK(std::abs(split.h1() - kInvSqrt2) < 1e-15);
  CHECK(std::abs(split.v0()) == 0.0);
  // A zero phase shifter is the identity.
  const PhotonState same = Apply(split, PhaseShifter{0.0, Path::kZero});
  for (int i = 0; i < 4; ++i) CHECK(same.amplitudes()[i] == split.amplitudes()[i]);
}

TEST_CASE("every element is unitary") {
  const std::vector<OpticalElement> elements = {
      BeamSplitter{},
      HalfWavePlate{0.3, std::nullopt},
      HalfWavePlate{0.3, Path::kOne},
      QuarterWavePlate{0.2, Path::kZero},
      QuarterWavePlate{0.9, std::nullopt},
      PhaseShifter{1.1, Path::kOne}};
  for (const auto& e : elements) {
    const GateMatrix m = ElementAction(e);
    CHECK(m.dim() == 4);
    CHECK((m * m.Adjoint()).Distance(GateMatrix::Identity(4)) < 1e-12);
  }
}

TEST_CASE("photonic Bell preparation") {
  const PhotonState bell = PrepareBellPhotonic();
  CHECK(std::abs(bell.h0() - kInvSqrt2) < 1e-12);
  CHECK(std::abs(bell.v1() - kInvSqrt2) < 1e-12);
  CHECK(bell.CrossTermSupport() < 1e-15);
  CHECK(Fidelity(ToLogical(bell), BellPhiPlus()) >= 1.0 - 1e-12);
}

TEST_CASE("logical mapping") {
  const PhotonState v0({0.0, 0.0, 1.0, 0.0});
  CHECK(ToLogical(v0).Distance(PureState::Basis(2, 2)) == 0.0);
  RandomSource rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<Amplitude> v(4);
    for (auto& x : v) x = {rng.Uniform() - 0.5, rng.Uniform() - 0.5};
    const PureState s = PureState::Normalized(v);
    CHECK(ToLogical(PhotonState::FromLogical(s)).Distance(s) == 0.0);
  }
  CHECK_THROWS_AS(PhotonState({1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("photonic veto") {
  const PhotonState one = ApplyVetoPhotonic(PrepareBellPhotonic(), 1);
  CHECK(std::abs(one.h0() - kInvSqrt2) < 1e-15);
  CHECK(std::abs(one.v1() + kInvSqrt2) < 1e-15);
  const PhotonState two = ApplyVetoPhotonic(ApplyVetoPhotonic(PrepareBellPhotonic(), 2), 2);
  CHECK(ToLogical(two).Distance(ToLogical(one)) < 1e-15);
  for (int k = 0; k <= 4; ++k) {
    PhotonState p = PrepareBellPhotonic();
    PureState q = BellPhiPlus();
    for (int v = 0; v < k; ++v) {
      p = ApplyVetoPhotonic(p, 2);
      q = ApplyGate(q, PhaseGate(2), 1);
    }
    CHECK(ToLogical(p).Distance(q) < 1e-12);
    CHECK(ToLogical(p).Distance(ExpectedPairState(k, 2)) < 1e-12);
  }
  const PhotonState cross({kInvSqrt2, kInvSqrt2, 0.0, 0.0});
  CHECK_THROWS_AS(ApplyVetoPhotonic(cross, 1), std::invalid_argument);
  CHECK_THROWS_AS(ApplyVetoPhotonic(PrepareBellPhotonic(), 0), std::invalid_argument);
}

TEST_CASE("interferometric Bell measurement") {
  RandomSource rng(4);
  for (int i = 0; i < 1000; ++i) {
    CHECK(BellMeasurePhotonic(PrepareBellPhotonic(), rng) == BellOutcome::kPhiPlus);
    CHECK(BellMeasurePhotonic(ApplyVetoPhotonic(PrepareBellPhotonic(), 1), rng) ==
          BellOutcome::kPhiMinus);
  }
  for (double phi : {0.0, 0.4, pi / 2, 2.0, pi, 3 * pi / 2}) {
    CHECK(AnalyzerPathZeroProbability(WithPhase(phi)) ==
          doctest::Approx(std::norm((1.0 + std::polar(1.0, phi)) / 2.0)).epsilon(1e-12));
  }
  const int trials = 100000;
  int minus = 0;
  for (int i = 0; i < trials; ++i) {
    minus += BellMeasurePhotonic(WithPhase(3 * pi / 2), rng) == BellOutcome::kPhiMinus;
  }
  CHECK(std::abs(minus / double(trials) - 0.5) < 0.005);
  CHECK_THROWS_AS(BellMeasurePhotonic(PhotonState({0.0, 1.0, 0.0, 0.0}), rng),
                  std::invalid_argument);
}

TEST_CASE("coin matrix") {
  const GateMatrix h = CoinMatrix(CoinParams::HadamardLike());
  CHECK(std::abs(h.at(0, 0) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(h.at(0, 1) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(h.at(1, 0) + kInvSqrt2) < 1e-15);
  CHECK(std::abs(h.at(1, 1) - kInvSqrt2) < 1e-15);
  RandomSource rng(5);
  for (int t = 0; t < 100; ++t) {
    const CoinParams c{rng.Uniform() * 6, rng.Uniform() * 6, rng.Uniform() * 6,
                       rng.Uniform() * 6};
    const GateMatrix m = CoinMatrix(c);
    CHECK((m * m.Adjoint()).Distance(GateMatrix::Identity(2)) < 1e-12);
  }
}

TEST_CASE("one Hadamard step splits the walker") {
  const WalkState w = DtqwFullStep(WalkState::Localized(3, 1.0, 0.0), CoinParams::HadamardLike());
  const auto d = w.PositionDistribution();
  CHECK(d[static_cast<std::size_t>(-1 - w.min_position())] == doctest::Approx(0.5));
  CHECK(d[static_cast<std::size_t>(1 - w.min_position())] == doctest::Approx(0.5));
  CHECK(d[static_cast<std::size_t>(-w.min_position())] == doctest::Approx(0.0));
}

TEST_CASE("identity coin with the left shift") {
  const WalkState w = DtqwStep(WalkState::Localized(2, 1.0, 0.0), CoinParams{}, Shift::kMinusOnA);
  CHECK(std::abs(w.a(-1)) == doctest::Approx(1.0));
  CHECK(w.PositionDistribution()[1] == doctest::Approx(1.0));
}

TEST_CASE("three Hadamard steps against the dense oracle") {
  const int radius = 5;
  const CoinParams coin = CoinParams::HadamardLike();
  for (auto start : {std::pair<Amplitude, Amplitude>{1.0, 0.0},
                     std::pair<Amplitude, Amplitude>{kInvSqrt2, Amplitude(0.0, kInvSqrt2)}}) {
    WalkState w = WalkState::Localized(radius, start.first, start.second);
    const int width = 2 * radius + 1;
    std::vector<Amplitude> v(2 * width);
    v[radius] = start.first;
    v[width + radius] = start.second;
    const Dense u = FullStepOracle(coin, radius);
    for (int step = 0; step < 3; ++step) {
      w = DtqwFullStep(w, coin);
      std::vector<Amplitude> next(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) next[i] += u[i][j] * v[j];
      }
      v = next;
    }
    const auto dist = w.PositionDistribution();
    for (int x = 0; x < width; ++x) {
      CHECK(std::abs(dist[x] - (std::norm(v[x]) + std::norm(v[width + x]))) < 1e-12);
      CHECK(std::abs(w.a(x - radius) - v[x]) < 1e-12);
      CHECK(std::abs(w.b(x - radius) - v[width + x]) < 1e-12);
    }
  }
}

TEST_CASE("norm is preserved over many steps") {
  RandomSource rng(6);
  const CoinParams coin{0.3, 0.7, 1.9, 0.6};
  WalkState w = WalkState::Localized(120, kInvSqrt2, Amplitude(0.0, kInvSqrt2));
  for (int step = 0; step < 100; ++step) {
    w = DtqwFullStep(w, coin);
    REQUIRE(std::abs(w.Norm() - 1.0) < 1e-10);
  }
  WalkState half = WalkState::Localized(120, 1.0, 0.0);
  for (int step = 0; step < 100; ++step) {
    half = DtqwStep(half, coin, step % 2 ? Shift::kPlusOnB : Shift::kMinusOnA);
    REQUIRE(std::abs(half.Norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("window overflow is rejected") {
  WalkState w = WalkState::Localized(1, 1.0, 0.0);
  w = DtqwFullStep(w, CoinParams::HadamardLike());
  CHECK_THROWS_AS(DtqwFullStep(w, CoinParams::HadamardLike()), std::out_of_range);
  CHECK_THROWS_AS(WalkState(2, 1, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(WalkState(0, 1, {1.0, 0.0}, {0.0}), std::invalid_argument);
}
