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

#include "qav/channels.hpp"

#include <stdexcept>
#include <string>

#include "qav/auth.hpp"

namespace qav {
namespace {

bool IsProbability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view ToString(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kIdeal: return "ideal";
    case NoiseKind::kDephasing: return "dephasing";
    case NoiseKind::kDepolarizing: return "depolarizing";
  }
  return "?";
}

std::string_view ToString(Adversary adversary) {
  return adversary == Adversary::kNone ? "none" : "intercept_resend";
}

NoiseKind NoiseKindFromString(std::string_view name) {
  if (name == "ideal") return NoiseKind::kIdeal;
  if (name == "dephasing") return NoiseKind::kDephasing;
  if (name == "depolarizing") return NoiseKind::kDepolarizing;
  throw std::invalid_argument("unknown noise model: " + std::string(name));
}

Adversary AdversaryFromString(std::string_view name) {
  if (name == "none") return Adversary::kNone;
  if (name == "intercept_resend" || name == "intercept-resend") return Adversary::kInterceptResend;
  throw std::invalid_argument("unknown adversary: " + std::string(name));
}

void ChannelConfig::Validate() const {
  if (!IsProbability(noise.p)) throw std::invalid_argument("noise p must lie in [0, 1]");
  if (!IsProbability(loss_probability)) {
    throw std::invalid_argument("loss probability must lie in [0, 1]");
  }
  if (decoy.delta1 < 0) throw std::invalid_argument("delta1 must be >= 0");
  if (!IsProbability(decoy.disturbance_threshold)) {
    throw std::invalid_argument("disturbance threshold must lie in [0, 1]");
  }
  if (adversary != Adversary::kNone && decoy.delta1 > 0 &&
      !(decoy.disturbance_threshold > 0.0 &&
        decoy.disturbance_threshold < kInterceptResendErrorRate)) {
    throw std::invalid_argument(
        "with an adversary the disturbance threshold must lie strictly between 0 and 0.25");
  }
}

TransmitResult Transmit(const PureState& joint_state, int travel_qubit,
                        const ChannelConfig& config, RandomSource& rng) {
  if (travel_qubit < 0 || travel_qubit >= joint_state.num_qubits()) {
    throw std::out_of_range("travel qubit index out of range");
  }
  if (config.loss_probability > 0.0 && rng.Bernoulli(config.loss_probability)) {
    return {joint_state, true};
  }
  PureState state = joint_state;
  switch (config.noise.kind) {
    case NoiseKind::kIdeal:
      break;
    case NoiseKind::kDephasing:
      if (rng.Bernoulli(config.noise.p)) state = ApplyGate(state, PauliZ(), travel_qubit);
      break;
    case NoiseKind::kDepolarizing:
      if (rng.Bernoulli(config.noise.p)) {
        switch (rng.Below(3)) {
          case 0: state = ApplyGate(state, PauliX(), travel_qubit); break;
          case 1: state = ApplyGate(state, PauliY(), travel_qubit); break;
          default: state = ApplyGate(state, PauliZ(), travel_qubit); break;
        }
      }
      break;
  }
  if (config.adversary == Adversary::kInterceptResend) {
    const Basis basis = rng.Bit() ? Basis::kHadamard : Basis::kComputational;
    state = MeasureQubit(state, travel_qubit, basis, rng).post_state;
  }
  return {std::move(state), false};
}

HopReport DecoyRound(int hop, const DecoyConfig& config, Adversary adversary,
                     RandomSource& rng) {
  HopReport report;
  report.hop_index = hop;
  report.decoys_sent = config.delta1;
  for (int i = 0; i < config.delta1; ++i) {
    const Bb84Symbol prepared = RandomSymbol(rng);
    Bb84Symbol in_flight = prepared;
    if (adversary == Adversary::kInterceptResend) {
      const Basis eve = rng.Bit() ? Basis::kHadamard : Basis::kComputational;
      in_flight = MeasureSymbol(in_flight, eve, rng);
    }
    if (MeasureSymbol(in_flight, BasisOf(prepared), rng) != prepared) ++report.decoy_errors;
  }
  return report;
}

bool ShouldAbort(std::span<const HopReport> reports, const DecoyConfig& config) {
  long sent = 0;
  long errors = 0;
  for (const auto& r : reports) {
    if (r.qubit_lost) return true;
    sent += r.decoys_sent;
    errors += r.decoy_errors;
  }
  if (sent == 0) return false;
  return static_cast<double>(errors) / static_cast<double>(sent) > config.disturbance_threshold;
}

}  // namespace qav
