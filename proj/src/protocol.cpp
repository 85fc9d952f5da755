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

#include "qav/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <type_traits>

#include "qav/photonic.hpp"

namespace qav {
namespace {

constexpr int kTravelQubit = 1;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// Largest pair index for which 2^a fits comfortably in a long.
constexpr int kMaxPairIndex = 62;

void CheckPairIndex(int pair) {
  if (pair < 1) throw std::invalid_argument("pair index must be >= 1");
  if (pair > kMaxPairIndex) throw std::invalid_argument("pair index too large");
}

void CheckVetoCount(long k) {
  if (k < 0) throw std::invalid_argument("veto count must be >= 0");
}

// k mod 2^a.
long Residue(long k, int pair) { return k & ((1L << pair) - 1); }

bool IsPsi(BellOutcome o) {
  return o == BellOutcome::kPsiPlus || o == BellOutcome::kPsiMinus;
}

void ValidateParticipants(int n, const std::vector<int>& forgers) {
  if (n < 1) throw std::invalid_argument("voter count must be >= 1");
  for (int f : forgers) {
    if (f < 0 || f >= n) throw std::invalid_argument("forger index out of range");
  }
}

std::optional<std::string> Authenticate(int n, const AuthPolicy& policy,
                                        const std::vector<int>& forgers, RandomSource& rng,
                                        std::vector<AuthResult>& results) {
  if (!policy.enabled) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    const bool forger = std::find(forgers.begin(), forgers.end(), i) != forgers.end();
    results.push_back(AuthenticateVoter(policy, forger, rng));
    if (!results.back().accepted) {
      return "voter V_" + std::to_string(i) + " failed authentication";
    }
  }
  return std::nullopt;
}

// Backend adapters so one relay routine serves both carriers.
struct AbstractCarrier {
  using State = PureState;
  static State Prepare() { return BellPhiPlus(); }
  static std::optional<State> Veto(const State& s, const GateMatrix& gate) {
    return ApplyGate(s, gate, kTravelQubit);
  }
  static PureState Logical(const State& s) { return s; }
  static std::optional<BellOutcome> Measure(const State& s, RandomSource& rng) {
    return BellMeasure(s, rng);
  }
};

struct PhotonicCarrier {
  using State = photonic::PhotonState;
  static State Prepare() { return photonic::PrepareBellPhotonic(); }
  static PureState Logical(const State& s) { return photonic::ToLogical(s); }
  static std::optional<BellOutcome> Measure(const State& s, RandomSource& rng) {
    if (s.CrossTermSupport() > photonic::kCrossTermTolerance) return std::nullopt;
    return photonic::BellMeasurePhotonic(s, rng);
  }
};

// Photonic vetoes go through the path-1 phase shifter, which matches the
// logical phase gate only on the protocol subspace.
template <typename Carrier>
std::optional<typename Carrier::State> ApplyVeto(const typename Carrier::State& s,
                                                 const GateMatrix& gate, int gate_index) {
  if constexpr (std::is_same_v<Carrier, PhotonicCarrier>) {
    if (s.CrossTermSupport() > photonic::kCrossTermTolerance) return std::nullopt;
    return photonic::ApplyVetoPhotonic(s, gate_index);
  } else {
    return Carrier::Veto(s, gate);
  }
}

struct RelayOutcome {
  std::optional<std::string> abort_reason;
};

// Sends every carrier through hops 0..n. gate_index[j] is the phase gate a
// vetoing voter applies to carrier j. Hop reports and qubit counts are
// appended as the relay progresses.
template <typename Carrier>
RelayOutcome Relay(std::vector<typename Carrier::State>& carriers,
                   const std::vector<int>& gate_index, const std::vector<int>& pair_labels,
                   const VoteVector& votes, const ChannelConfig& channel, RandomSource& rng,
                   std::vector<HopReport>& hops, long& qubits) {
  const int n = votes.size();
  std::vector<GateMatrix> gates;
  gates.reserve(gate_index.size());
  for (int g : gate_index) gates.push_back(PhaseGate(g));

  for (int hop = 0; hop <= n; ++hop) {
    for (std::size_t j = 0; j < carriers.size(); ++j) {
      HopReport report = DecoyRound(hop, channel.decoy, channel.adversary, rng);
      report.pair = pair_labels[j];
      TransmitResult sent =
          Transmit(Carrier::Logical(carriers[j]), kTravelQubit, channel, rng);
      report.qubit_lost = sent.qubit_lost;
      qubits += 1 + report.decoys_sent;
      hops.push_back(report);
      if (report.qubit_lost) {
        return {"travel qubit of pair " + std::to_string(report.pair) + " lost on hop " +
                std::to_string(hop)};
      }
      if (ShouldAbort(std::span<const HopReport>(&hops.back(), 1), channel.decoy)) {
        return {"decoy disturbance above threshold on hop " + std::to_string(hop) +
                " of pair " + std::to_string(report.pair)};
      }
      if constexpr (std::is_same_v<Carrier, PhotonicCarrier>) {
        carriers[j] = photonic::PhotonState::FromLogical(sent.state);
      } else {
        carriers[j] = std::move(sent.state);
      }
    }
    if (hop < n && votes[hop]) {
      for (std::size_t j = 0; j < carriers.size(); ++j) {
        auto next = ApplyVeto<Carrier>(carriers[j], gates[j], gate_index[j]);
        if (!next) {
          return {"photon left the protocol subspace before voter V_" + std::to_string(hop)};
        }
        carriers[j] = std::move(*next);
      }
    }
  }
  return {};
}

template <typename Carrier>
TallyResult RunWithCarrier(const VoteVector& votes, const ChannelConfig& channel,
                           const ProtocolParams& params, RandomSource& rng) {
  TallyResult result;
  const long k = votes.vetoes();
  const int h = params.pairs();

  if (auto reason = Authenticate(params.n, params.auth, params.forgers, rng,
                                 result.authentication)) {
    result.aborted = true;
    result.abort_reason = std::move(reason);
    return result;
  }

  std::vector<typename Carrier::State> carriers(static_cast<std::size_t>(h), Carrier::Prepare());
  result.qubits_transmitted = 2L * h;
  std::vector<int> pair_labels(static_cast<std::size_t>(h));
  for (int a = 1; a <= h; ++a) pair_labels[a - 1] = a;

  RelayOutcome relay = Relay<Carrier>(carriers, pair_labels, pair_labels, votes, channel, rng,
                                      result.hops, result.qubits_transmitted);
  if (relay.abort_reason) {
    result.aborted = true;
    result.abort_reason = std::move(relay.abort_reason);
    return result;
  }

  for (int a = 1; a <= h; ++a) {
    const auto& carrier = carriers[a - 1];
    result.pre_measurement_states.push_back(Carrier::Logical(carrier));
    const auto outcome = Carrier::Measure(carrier, rng);
    if (!outcome) {
      result.aborted = true;
      result.abort_reason = "photon left the protocol subspace before the Bell analyzer";
      result.records.clear();
      return result;
    }
    if (IsPsi(*outcome)) ++result.channel_faults;
    result.records.push_back({a, *outcome, DeterministicOutcome(k, a), ExpectedPairPhase(k, a)});
  }

  if (result.channel_faults > 0 && channel.noiseless()) {
    result.aborted = true;
    result.abort_reason = "Psi outcome on a channel configured as noiseless";
    return result;
  }
  result.veto_detected = Decide(result.records);
  return result;
}

}  // namespace

std::string_view ToString(PairCountRule rule) {
  return rule == PairCountRule::kFloor ? "floor" : "ceil";
}

std::string_view ToString(Backend backend) {
  return backend == Backend::kAbstract ? "abstract" : "photonic";
}

PairCountRule PairCountRuleFromString(std::string_view name) {
  if (name == "floor") return PairCountRule::kFloor;
  if (name == "ceil") return PairCountRule::kCeil;
  throw std::invalid_argument("unknown pair-count rule: " + std::string(name));
}

Backend BackendFromString(std::string_view name) {
  if (name == "abstract") return Backend::kAbstract;
  if (name == "photonic") return Backend::kPhotonic;
  throw std::invalid_argument("unknown backend: " + std::string(name));
}

int PairCount(long n, PairCountRule rule) {
  if (n < 1) throw std::invalid_argument("voter count must be >= 1");
  const auto u = static_cast<unsigned long>(n);
  const int floor_log = std::bit_width(u) - 1;
  if (rule == PairCountRule::kFloor) return floor_log + 1;
  const int ceil_log = std::has_single_bit(u) ? floor_log : floor_log + 1;
  return ceil_log + 1;
}

ProtocolParams ProtocolParams::ForVoters(int n, PairCountRule rule) {
  ProtocolParams p;
  p.n = n;
  p.pair_count_rule = rule;
  return p;
}

VoteVector VoteVector::FromMask(int n, unsigned long long mask) {
  if (n < 0 || n > 64) throw std::invalid_argument("mask supports at most 64 voters");
  std::vector<bool> bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) bits[i] = ((mask >> i) & 1ULL) != 0;
  return VoteVector(std::move(bits));
}

VoteVector VoteVector::Parse(std::string_view text) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("vote string must contain only '0' and '1'");
    }
    bits.push_back(c == '1');
  }
  return VoteVector(std::move(bits));
}

VoteVector VoteVector::RandomWithVetoes(int n, int k, RandomSource& rng) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n and n >= 1");
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  // Partial Fisher-Yates: the first k slots pick the vetoing voters.
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.Below(static_cast<std::uint64_t>(n - i)));
    std::swap(order[i], order[j]);
  }
  std::vector<bool> bits(static_cast<std::size_t>(n));
  for (int i = 0; i < k; ++i) bits[order[i]] = true;
  return VoteVector(std::move(bits));
}

int VoteVector::vetoes() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

std::string VoteVector::ToString() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

double ExpectedPairPhase(long k, int pair) {
  CheckVetoCount(k);
  CheckPairIndex(pair);
  return static_cast<double>(Residue(k, pair)) * std::numbers::pi / std::ldexp(1.0, pair - 1);
}

std::optional<BellOutcome> DeterministicOutcome(long k, int pair) {
  CheckVetoCount(k);
  CheckPairIndex(pair);
  const long r = Residue(k, pair);
  if (r == 0) return BellOutcome::kPhiPlus;
  if (r == (1L << (pair - 1))) return BellOutcome::kPhiMinus;
  return std::nullopt;
}

OutcomeDistribution GetOutcomeDistribution(long k, int pair) {
  CheckVetoCount(k);
  CheckPairIndex(pair);
  if (auto d = DeterministicOutcome(k, pair)) {
    return *d == BellOutcome::kPhiPlus ? OutcomeDistribution{1.0, 0.0}
                                       : OutcomeDistribution{0.0, 1.0};
  }
  const double half_angle =
      static_cast<double>(Residue(k, pair)) * std::numbers::pi / std::ldexp(1.0, pair);
  const double c = std::cos(half_angle);
  const double s = std::sin(half_angle);
  return {c * c, s * s};
}

PureState ExpectedPairState(long k, int pair) {
  const double phase = ExpectedPairPhase(k, pair);
  return PureState({kInvSqrt2, 0.0, 0.0, std::polar(kInvSqrt2, phase)});
}

bool Decide(const std::vector<PairRecord>& records) {
  return std::any_of(records.begin(), records.end(),
                     [](const PairRecord& r) { return r.outcome == BellOutcome::kPhiMinus; });
}

TallyResult RunProtocol(const VoteVector& votes, const ChannelConfig& channel,
                        const ProtocolParams& params, RandomSource& rng) {
  ValidateParticipants(params.n, params.forgers);
  if (votes.size() != params.n) {
    throw std::invalid_argument("vote vector has " + std::to_string(votes.size()) +
                                " entries, expected " + std::to_string(params.n));
  }
  channel.Validate();
  if (params.backend == Backend::kPhotonic) {
    return RunWithCarrier<PhotonicCarrier>(votes, channel, params, rng);
  }
  return RunWithCarrier<AbstractCarrier>(votes, channel, params, rng);
}

std::string_view ToString(Qav6PhaseConvention c) {
  return c == Qav6PhaseConvention::kShifted ? "shifted" : "literal";
}

Qav6PhaseConvention Qav6PhaseConventionFromString(std::string_view name) {
  if (name == "shifted") return Qav6PhaseConvention::kShifted;
  if (name == "literal") return Qav6PhaseConvention::kLiteral;
  throw std::invalid_argument("unknown iterative-baseline phase convention: " + std::string(name));
}

int Qav6MaxIterations(long n) { return PairCount(n, PairCountRule::kCeil); }

Qav6Result RunQav6(const VoteVector& votes, const ChannelConfig& channel, RandomSource& rng,
                   const Qav6Options& options) {
  const int n = votes.size();
  ValidateParticipants(n, options.forgers);
  channel.Validate();

  Qav6Result result;
  std::vector<AuthResult> auth;
  if (auto reason = Authenticate(n, options.auth, options.forgers, rng, auth)) {
    result.aborted = true;
    result.abort_reason = std::move(reason);
    return result;
  }

  const int max_iterations = Qav6MaxIterations(n);
  std::vector<HopReport> hops;
  for (int t = 1; t <= max_iterations; ++t) {
    result.iterations_used = t;
    const int gate = options.convention == Qav6PhaseConvention::kShifted ? t : t + 1;
    std::vector<PureState> carrier{BellPhiPlus()};
    result.qubits_transmitted += 2;
    RelayOutcome relay = Relay<AbstractCarrier>(carrier, {gate}, {t}, votes, channel, rng, hops,
                                                result.qubits_transmitted);
    if (relay.abort_reason) {
      result.aborted = true;
      result.abort_reason = std::move(relay.abort_reason);
      result.veto_detected = false;
      return result;
    }
    const BellOutcome outcome = BellMeasure(carrier.front(), rng);
    result.outcomes.push_back(outcome);
    if (IsPsi(outcome)) {
      ++result.channel_faults;
      if (channel.noiseless()) {
        result.aborted = true;
        result.abort_reason = "Psi outcome on a channel configured as noiseless";
        return result;
      }
    }
    if (outcome == BellOutcome::kPhiMinus) {
      result.veto_detected = true;
      break;
    }
  }
  return result;
}

}  // namespace qav
