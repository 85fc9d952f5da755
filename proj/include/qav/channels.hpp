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

// Insecure hop model for travel qubits: stochastic Pauli noise, loss, an
// intercept-resend eavesdropper and BB84 decoy checking.

#ifndef QAV_CHANNELS_HPP_
#define QAV_CHANNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>

#include "qav/quantum_core.hpp"
#include "qav/random.hpp"

namespace qav {

enum class NoiseKind { kIdeal, kDephasing, kDepolarizing };
enum class Adversary { kNone, kInterceptResend };

std::string_view ToString(NoiseKind kind);
std::string_view ToString(Adversary adversary);
NoiseKind NoiseKindFromString(std::string_view name);
Adversary AdversaryFromString(std::string_view name);

struct NoiseModel {
  NoiseKind kind = NoiseKind::kIdeal;
  double p = 0.0;
};

// Per-decoy error rate of a random-basis intercept-resend attack.
inline constexpr double kInterceptResendErrorRate = 0.25;
inline constexpr double kDefaultDisturbanceThreshold = 0.125;
inline constexpr int kDefaultDecoysPerHop = 16;

struct DecoyConfig {
  int delta1 = kDefaultDecoysPerHop;
  double disturbance_threshold = kDefaultDisturbanceThreshold;
};

struct ChannelConfig {
  NoiseModel noise;
  double loss_probability = 0.0;
  Adversary adversary = Adversary::kNone;
  DecoyConfig decoy;

  // Throws std::invalid_argument if a probability lies outside [0, 1],
  // delta1 is negative, or an active adversary is paired with a threshold
  // outside (0, kInterceptResendErrorRate).
  void Validate() const;

  bool noiseless() const {
    return noise.kind == NoiseKind::kIdeal || noise.p == 0.0;
  }
};

// Hop i (0 <= i < n) carries a travel qubit into voter i; hop n returns it
// to the authority.
struct HopReport {
  int pair = 0;
  int hop_index = 0;
  int decoys_sent = 0;
  int decoy_errors = 0;
  bool qubit_lost = false;
};

struct TransmitResult {
  PureState state;
  bool qubit_lost = false;
};

// One hop for the travel qubit of `joint_state`. Order: loss, noise, then
// the adversary's measurement if one is configured.
TransmitResult Transmit(const PureState& joint_state, int travel_qubit,
                        const ChannelConfig& config, RandomSource& rng);

// Sends config.delta1 BB84 decoys across the hop; the receiver measures each
// in its preparation basis once the basis is announced.
HopReport DecoyRound(int hop, const DecoyConfig& config, Adversary adversary,
                     RandomSource& rng);

// Pooled error rate over `reports` above the threshold, or any lost qubit.
bool ShouldAbort(std::span<const HopReport> reports, const DecoyConfig& config);

}  // namespace qav

#endif  // QAV_CHANNELS_HPP_
