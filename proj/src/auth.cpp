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

#include "qav/auth.hpp"

#include <stdexcept>

namespace qav {

std::string_view ToString(Bb84Symbol s) {
  switch (s) {
    case Bb84Symbol::kZero: return "0";
    case Bb84Symbol::kOne: return "1";
    case Bb84Symbol::kPlus: return "+";
    case Bb84Symbol::kMinus: return "-";
  }
  return "?";
}

Bb84Symbol SymbolFor(Basis basis, int bit) {
  if (basis == Basis::kComputational) return bit ? Bb84Symbol::kOne : Bb84Symbol::kZero;
  return bit ? Bb84Symbol::kMinus : Bb84Symbol::kPlus;
}

Bb84Symbol Orthogonal(Bb84Symbol s) {
  switch (s) {
    case Bb84Symbol::kZero: return Bb84Symbol::kOne;
    case Bb84Symbol::kOne: return Bb84Symbol::kZero;
    case Bb84Symbol::kPlus: return Bb84Symbol::kMinus;
    case Bb84Symbol::kMinus: return Bb84Symbol::kPlus;
  }
  return s;
}

Bb84Symbol RandomSymbol(RandomSource& rng) {
  return static_cast<Bb84Symbol>(rng.Below(4));
}

Bb84Symbol MeasureSymbol(Bb84Symbol prepared, Basis basis, RandomSource& rng) {
  if (BasisOf(prepared) == basis) return prepared;
  return SymbolFor(basis, rng.Bit() ? 1 : 0);
}

std::vector<Bb84Symbol> VoterGenerate(std::size_t length, RandomSource& rng) {
  if (length < 1) throw std::invalid_argument("signature length must be >= 1");
  std::vector<Bb84Symbol> seq(length);
  for (auto& s : seq) s = RandomSymbol(rng);
  return seq;
}

EliminatedSignature VaMeasure(std::span<const Bb84Symbol> transmitted, RandomSource& rng) {
  EliminatedSignature sig;
  sig.eliminated.reserve(transmitted.size());
  sig.basis_used.reserve(transmitted.size());
  for (Bb84Symbol s : transmitted) {
    const Basis basis = rng.Bit() ? Basis::kHadamard : Basis::kComputational;
    sig.basis_used.push_back(basis);
    sig.eliminated.push_back(Orthogonal(MeasureSymbol(s, basis, rng)));
  }
  return sig;
}

AuthResult Verify(std::span<const Bb84Symbol> revealed, const EliminatedSignature& sig,
                  double threshold) {
  if (revealed.size() != sig.size()) {
    throw std::invalid_argument("revealed sequence length does not match the signature");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("authentication threshold must lie in [0, 1]");
  }
  AuthResult result;
  result.threshold = threshold;
  if (revealed.empty()) {
    result.accepted = true;
    return result;
  }
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < revealed.size(); ++i) {
    if (revealed[i] == sig.eliminated[i]) ++mismatches;
  }
  result.mismatch_rate = static_cast<double>(mismatches) / static_cast<double>(revealed.size());
  result.accepted = result.mismatch_rate <= threshold;
  return result;
}

AuthResult AuthenticateVoter(const AuthPolicy& policy, bool forger, RandomSource& rng) {
  const auto secret = VoterGenerate(policy.signature_length, rng);
  const auto sig = VaMeasure(secret, rng);
  if (!forger) return Verify(secret, sig, policy.threshold);
  const auto guess = VoterGenerate(policy.signature_length, rng);
  return Verify(guess, sig, policy.threshold);
}

}  // namespace qav
