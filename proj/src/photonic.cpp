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

#include "qav/photonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qav::photonic {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Amplitude kI(0.0, 1.0);

constexpr int Index(int pol, int path) { return pol * 2 + path; }

// Exact for the quarter-turn angles the protocol uses.
double Cos2(double angle) {
  if (angle == std::numbers::pi / 4) return 0.0;
  return std::cos(2.0 * angle);
}
double Sin2(double angle) {
  if (angle == std::numbers::pi / 4) return 1.0;
  return std::sin(2.0 * angle);
}

GateMatrix PolarizationAction(const GateMatrix& jones, std::optional<Path> only) {
  std::vector<Amplitude> m(16);
  for (int path = 0; path < 2; ++path) {
    const bool active = !only || static_cast<int>(*only) == path;
    for (int out = 0; out < 2; ++out) {
      for (int in = 0; in < 2; ++in) {
        m[Index(out, path) * 4 + Index(in, path)] =
            active ? jones.at(out, in) : Amplitude(out == in ? 1.0 : 0.0);
      }
    }
  }
  return GateMatrix(4, std::move(m));
}

void RequireProtocolSupport(const PhotonState& photon, const char* what) {
  if (photon.CrossTermSupport() > kCrossTermTolerance) {
    throw std::invalid_argument(std::string(what) +
                                ": photon has support on |H,1> or |V,0>");
  }
}

}  // namespace

PhotonState::PhotonState(const std::array<Amplitude, 4>& amplitudes) : amps_(amplitudes) {
  double norm = 0.0;
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("photon amplitude is not finite");
    }
    norm += std::norm(a);
  }
  if (std::abs(std::sqrt(norm) - 1.0) > kStateTolerance) {
    throw std::invalid_argument("photon state is not normalized");
  }
}

PhotonState PhotonState::Horizontal0() { return PhotonState({1.0, 0.0, 0.0, 0.0}); }

PhotonState PhotonState::FromLogical(const PureState& logical) {
  if (logical.num_qubits() != 2) {
    throw std::invalid_argument("photon encodes exactly two logical qubits");
  }
  return PhotonState({logical[0], logical[1], logical[2], logical[3]});
}

double PhotonState::CrossTermSupport() const {
  return std::max(std::abs(amps_[Index(0, 1)]), std::abs(amps_[Index(1, 0)]));
}

PureState ToLogical(const PhotonState& photon) {
  const auto& a = photon.amplitudes();
  return PureState({a[0], a[1], a[2], a[3]});
}

GateMatrix HalfWavePlateJones(double angle) {
  const double c = Cos2(angle), s = Sin2(angle);
  return GateMatrix(2, {c, s, s, -c});
}

GateMatrix QuarterWavePlateJones(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const Amplitude off = (1.0 - kI) * s * c;
  return GateMatrix(2, {c * c + kI * s * s, off, off, s * s + kI * c * c});
}

GateMatrix BeamSplitterMatrix() {
  return GateMatrix(2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
}

GateMatrix ElementAction(const OpticalElement& element) {
  struct Visitor {
    GateMatrix operator()(const BeamSplitter&) const {
      const GateMatrix bs = BeamSplitterMatrix();
      std::vector<Amplitude> m(16);
      for (int pol = 0; pol < 2; ++pol) {
        for (int out = 0; out < 2; ++out) {
          for (int in = 0; in < 2; ++in) {
            m[Index(pol, out) * 4 + Index(pol, in)] = bs.at(out, in);
          }
        }
      }
      return GateMatrix(4, std::move(m));
    }
    GateMatrix operator()(const HalfWavePlate& hwp) const {
      return PolarizationAction(HalfWavePlateJones(hwp.angle), hwp.path);
    }
    GateMatrix operator()(const QuarterWavePlate& qwp) const {
      return PolarizationAction(QuarterWavePlateJones(qwp.angle), qwp.path);
    }
    GateMatrix operator()(const PhaseShifter& ps) const {
      std::vector<Amplitude> m(16);
      const Amplitude phase = std::polar(1.0, ps.theta);
      for (int pol = 0; pol < 2; ++pol) {
        for (int path = 0; path < 2; ++path) {
          const int i = Index(pol, path);
          m[i * 4 + i] = path == static_cast<int>(ps.path) ? phase : Amplitude(1.0);
        }
      }
      return GateMatrix(4, std::move(m));
    }
  };
  return std::visit(Visitor{}, element);
}

PhotonState Apply(const PhotonState& photon, const OpticalElement& element) {
  const GateMatrix m = ElementAction(element);
  std::array<Amplitude, 4> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[i] += m.at(i, j) * photon.amplitudes()[j];
  }
  return PhotonState(out);
}

PhotonState PrepareBellPhotonic() {
  PhotonState photon = PhotonState::Horizontal0();
  photon = Apply(photon, BeamSplitter{});
  return Apply(photon, HalfWavePlate{std::numbers::pi / 4, Path::kOne});
}

PhotonState ApplyVetoPhotonic(const PhotonState& photon, int pair) {
  if (pair < 1) throw std::invalid_argument("pair index must be >= 1");
  RequireProtocolSupport(photon, "veto phase shifter");
  if (pair == 1) {
    // e^{i pi} exactly.
    const auto& a = photon.amplitudes();
    return PhotonState({a[0], -a[1], a[2], -a[3]});
  }
  if (pair == 2) {
    const auto& a = photon.amplitudes();
    return PhotonState({a[0], kI * a[1], a[2], kI * a[3]});
  }
  return Apply(photon, PhaseShifter{std::numbers::pi / std::ldexp(1.0, pair - 1), Path::kOne});
}

double AnalyzerPathZeroProbability(const PhotonState& photon) {
  PhotonState out = Apply(photon, HalfWavePlate{std::numbers::pi / 4, Path::kOne});
  out = Apply(out, BeamSplitter{});
  return std::norm(out.h0()) + std::norm(out.v0());
}

BellOutcome BellMeasurePhotonic(const PhotonState& photon, RandomSource& rng) {
  RequireProtocolSupport(photon, "Bell analyzer");
  const double p0 = std::clamp(AnalyzerPathZeroProbability(photon), 0.0, 1.0);
  const std::array<double, 2> probs = {p0, 1.0 - p0};
  return SampleIndex(probs, rng) == 0 ? BellOutcome::kPhiPlus : BellOutcome::kPhiMinus;
}

// ---------------------------------------------------------------------------

CoinParams CoinParams::HadamardLike() { return {0.0, 0.0, 0.0, std::numbers::pi / 4}; }

GateMatrix CoinMatrix(const CoinParams& c) {
  const Amplitude g = std::polar(1.0, c.p);
  const double ct = c.theta == std::numbers::pi / 4 ? kInvSqrt2 : std::cos(c.theta);
  const double st = c.theta == std::numbers::pi / 4 ? kInvSqrt2 : std::sin(c.theta);
  return GateMatrix(2, {g * std::polar(1.0, c.q) * ct, g * std::polar(1.0, c.r) * st,
                        -g * std::polar(1.0, -c.r) * st, g * std::polar(1.0, -c.q) * ct});
}

WalkState::WalkState(int min_position, int max_position, std::vector<Amplitude> coin_a,
                     std::vector<Amplitude> coin_b)
    : min_(min_position), max_(max_position), coin_a_(std::move(coin_a)),
      coin_b_(std::move(coin_b)) {
  if (max_ < min_) throw std::invalid_argument("walk window is empty");
  const auto width = static_cast<std::size_t>(max_ - min_) + 1;
  if (coin_a_.size() != width || coin_b_.size() != width) {
    throw std::invalid_argument("walk amplitudes do not match the window");
  }
  if (std::abs(Norm() - 1.0) > kStateTolerance) {
    throw std::invalid_argument("walk state is not normalized");
  }
}

WalkState WalkState::Localized(int radius, Amplitude a, Amplitude b) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  const auto width = static_cast<std::size_t>(2 * radius + 1);
  std::vector<Amplitude> ca(width), cb(width);
  ca[radius] = a;
  cb[radius] = b;
  return WalkState(-radius, radius, std::move(ca), std::move(cb));
}

std::size_t WalkState::Index(int position) const {
  if (position < min_ || position > max_) throw std::out_of_range("position outside window");
  return static_cast<std::size_t>(position - min_);
}

double WalkState::Norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < coin_a_.size(); ++i) {
    s += std::norm(coin_a_[i]) + std::norm(coin_b_[i]);
  }
  return std::sqrt(s);
}

std::vector<double> WalkState::PositionDistribution() const {
  std::vector<double> d(coin_a_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(coin_a_[i]) + std::norm(coin_b_[i]);
  return d;
}

WalkState ConditionalShift(const WalkState& walk, Shift shift) {
  std::vector<Amplitude> a = walk.coin_a();
  std::vector<Amplitude> b = walk.coin_b();
  if (shift == Shift::kMinusOnA) {
    if (a.front() != 0.0) throw std::out_of_range("walk would leave the window on the left");
    std::rotate(a.begin(), a.begin() + 1, a.end());
  } else {
    if (b.back() != 0.0) throw std::out_of_range("walk would leave the window on the right");
    std::rotate(b.rbegin(), b.rbegin() + 1, b.rend());
  }
  return WalkState(walk.min_position(), walk.max_position(), std::move(a), std::move(b));
}

WalkState DtqwStep(const WalkState& walk, const CoinParams& coin, Shift shift) {
  const GateMatrix c = CoinMatrix(coin);
  std::vector<Amplitude> a(walk.width()), b(walk.width());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Amplitude x = walk.coin_a()[i], y = walk.coin_b()[i];
    a[i] = c.at(0, 0) * x + c.at(0, 1) * y;
    b[i] = c.at(1, 0) * x + c.at(1, 1) * y;
  }
  WalkState coined(walk.min_position(), walk.max_position(), std::move(a), std::move(b));
  return ConditionalShift(coined, shift);
}

WalkState DtqwFullStep(const WalkState& walk, const CoinParams& coin) {
  return ConditionalShift(DtqwStep(walk, coin, Shift::kMinusOnA), Shift::kPlusOnB);
}

}  // namespace qav::photonic
