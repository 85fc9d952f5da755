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

// Voter eligibility via a BB84-state signature with elimination.
//
// The voter sends a secret sequence of BB84 states. The authority measures
// each one in a random basis and records the state orthogonal to what it saw
// as "eliminated". Later the voter reveals the sequence; a genuine sequence
// never contains an eliminated state, a guessed one does about 1/4 of the
// time.

#ifndef QAV_AUTH_HPP_
#define QAV_AUTH_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qav/quantum_core.hpp"
#include "qav/random.hpp"

namespace qav {

enum class Bb84Symbol { kZero = 0, kOne = 1, kPlus = 2, kMinus = 3 };

std::string_view ToString(Bb84Symbol s);

inline Basis BasisOf(Bb84Symbol s) {
  return (s == Bb84Symbol::kZero || s == Bb84Symbol::kOne) ? Basis::kComputational
                                                           : Basis::kHadamard;
}

// The eigenstate of `basis` with eigen-index `bit` (0 -> |0>/|+>).
Bb84Symbol SymbolFor(Basis basis, int bit);

// The other eigenstate of the same basis.
Bb84Symbol Orthogonal(Bb84Symbol s);

Bb84Symbol RandomSymbol(RandomSource& rng);

// Born-rule measurement of a BB84 state in `basis`; returns the observed
// eigenstate. Same basis is deterministic, conjugate basis is a fair coin.
Bb84Symbol MeasureSymbol(Bb84Symbol prepared, Basis basis, RandomSource& rng);

inline constexpr std::size_t kDefaultSignatureLength = 256;
inline constexpr double kDefaultAuthThreshold = 0.125;

struct EliminatedSignature {
  std::vector<Bb84Symbol> eliminated;
  std::vector<Basis> basis_used;

  std::size_t size() const { return eliminated.size(); }
};

struct AuthResult {
  double mismatch_rate = 0.0;
  bool accepted = false;
  double threshold = kDefaultAuthThreshold;
};

// Throws std::invalid_argument when length < 1.
std::vector<Bb84Symbol> VoterGenerate(std::size_t length, RandomSource& rng);

EliminatedSignature VaMeasure(std::span<const Bb84Symbol> transmitted, RandomSource& rng);

// mismatch_rate is the fraction of positions where the revealed symbol is the
// eliminated one. Throws std::invalid_argument on a length mismatch.
AuthResult Verify(std::span<const Bb84Symbol> revealed, const EliminatedSignature& sig,
                  double threshold);

struct AuthPolicy {
  bool enabled = true;
  std::size_t signature_length = kDefaultSignatureLength;
  double threshold = kDefaultAuthThreshold;
};

// Full round for one voter: generate, measure, reveal, verify. A forger
// reveals a fresh random sequence instead of the one that was measured.
AuthResult AuthenticateVoter(const AuthPolicy& policy, bool forger, RandomSource& rng);

}  // namespace qav

#endif  // QAV_AUTH_HPP_
