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

// Single-round anonymous veto with Bell pairs.
//
// The authority prepares h copies of |Phi+>, keeps the home halves and sends
// every travel half through voters V_0 .. V_{n-1} and back. A vetoing voter
// applies diag(1, exp(i*pi/2^(a-1))) to travel qubit a, so after the relay
// pair a sits in (|00> + exp(i*k*pi/2^(a-1)) |11>)/sqrt(2) where k is the
// number of vetoes. Pair a is a certain PhiMinus exactly when the lowest set
// bit of k is bit a-1, and a certain PhiPlus when k is 0 mod 2^a. Any
// PhiMinus therefore means k >= 1, and for k >= 1 the pair indexed by the
// lowest set bit of k always reports one.
//
// The iterative baseline (RunQav6) spends one Bell pair per round instead,
// raising the phase resolution each round until it sees PhiMinus or runs
// out of rounds.

#ifndef QAV_PROTOCOL_HPP_
#define QAV_PROTOCOL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qav/auth.hpp"
#include "qav/channels.hpp"
#include "qav/quantum_core.hpp"
#include "qav/random.hpp"

namespace qav {

enum class PairCountRule { kFloor, kCeil };
enum class Backend { kAbstract, kPhotonic };

std::string_view ToString(PairCountRule rule);
std::string_view ToString(Backend backend);
PairCountRule PairCountRuleFromString(std::string_view name);
Backend BackendFromString(std::string_view name);

// floor(log2 n) + 1 or ceil(log2 n) + 1. Throws std::invalid_argument for
// n < 1.
int PairCount(long n, PairCountRule rule = PairCountRule::kFloor);

struct ProtocolParams {
  int n = 1;
  PairCountRule pair_count_rule = PairCountRule::kFloor;
  Backend backend = Backend::kAbstract;
  AuthPolicy auth;
  // Voters that try to pass authentication with a guessed sequence.
  std::vector<int> forgers;

  static ProtocolParams ForVoters(int n, PairCountRule rule = PairCountRule::kFloor);

  int pairs() const { return PairCount(n, pair_count_rule); }
};

// votes[i] is true iff voter V_i vetoes.
class VoteVector {
 public:
  VoteVector() = default;
  explicit VoteVector(std::vector<bool> bits) : bits_(std::move(bits)) {}

  // Voter V_i vetoes iff bit i of `mask` is set.
  static VoteVector FromMask(int n, unsigned long long mask);

  // "0100" style; V_0 first. Throws std::invalid_argument on other characters.
  static VoteVector Parse(std::string_view text);

  // Uniformly random vector with exactly k vetoes.
  static VoteVector RandomWithVetoes(int n, int k, RandomSource& rng);

  int size() const { return static_cast<int>(bits_.size()); }
  bool operator[](int i) const { return bits_[static_cast<std::size_t>(i)]; }
  int vetoes() const;
  std::string ToString() const;

 private:
  std::vector<bool> bits_;
};

// (k*pi/2^(a-1)) mod 2*pi in [0, 2*pi).
double ExpectedPairPhase(long k, int pair);

// PhiPlus when k = 0 mod 2^a, PhiMinus when k = 2^(a-1) mod 2^a, otherwise
// empty because the outcome is genuinely random.
std::optional<BellOutcome> DeterministicOutcome(long k, int pair);

struct OutcomeDistribution {
  double phi_plus = 1.0;
  double phi_minus = 0.0;
};

// cos^2(k*pi/2^a), sin^2(k*pi/2^a).
OutcomeDistribution GetOutcomeDistribution(long k, int pair);

// Ideal post-relay state of pair `pair` for k vetoes.
PureState ExpectedPairState(long k, int pair);

struct PairRecord {
  int pair = 0;
  BellOutcome outcome = BellOutcome::kPhiPlus;
  std::optional<BellOutcome> predicted_deterministic;
  double phase = 0.0;
};

struct TallyResult {
  bool veto_detected = false;
  std::vector<PairRecord> records;
  bool aborted = false;
  std::optional<std::string> abort_reason;
  // Psi outcomes; these only arise from bit-flip noise or tampering.
  int channel_faults = 0;
  std::vector<HopReport> hops;
  std::vector<AuthResult> authentication;
  // Two qubits per Bell pair, plus the travel qubit and the decoys of every
  // hop that was attempted.
  long qubits_transmitted = 0;
  // Joint state of every pair immediately before its Bell measurement.
  std::vector<PureState> pre_measurement_states;
};

// Any PhiMinus. Psi outcomes are channel faults, not vetoes.
bool Decide(const std::vector<PairRecord>& records);

// Throws std::invalid_argument when votes.size() != params.n or the channel
// configuration is invalid. Eavesdropping, loss and failed authentication
// abort the run; they are not errors.
TallyResult RunProtocol(const VoteVector& votes, const ChannelConfig& channel,
                        const ProtocolParams& params, RandomSource& rng);

// Per-veto phase in round t: pi/2^(t-1) (shifted, consistent with the
// single-round protocol) or pi/2^t (literal).
enum class Qav6PhaseConvention { kShifted, kLiteral };

std::string_view ToString(Qav6PhaseConvention c);
Qav6PhaseConvention Qav6PhaseConventionFromString(std::string_view name);

struct Qav6Options {
  Qav6PhaseConvention convention = Qav6PhaseConvention::kShifted;
  AuthPolicy auth;
  std::vector<int> forgers;
};

struct Qav6Result {
  bool veto_detected = false;
  int iterations_used = 0;
  std::vector<BellOutcome> outcomes;
  bool aborted = false;
  std::optional<std::string> abort_reason;
  int channel_faults = 0;
  long qubits_transmitted = 0;
};

// ceil(1 + log2 n).
int Qav6MaxIterations(long n);

Qav6Result RunQav6(const VoteVector& votes, const ChannelConfig& channel, RandomSource& rng,
                   const Qav6Options& options = {});

}  // namespace qav

#endif  // QAV_PROTOCOL_HPP_
