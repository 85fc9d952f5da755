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

// Qubit efficiency eta = c / (q + b): output classical bits over transmitted
// qubits plus auxiliary classical bits. For a veto c = 1 and b = 0.

#ifndef QAV_EFFICIENCY_HPP_
#define QAV_EFFICIENCY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qav {

// Reduced non-negative fraction.
class Fraction {
 public:
  Fraction(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string ToString() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend bool operator<(const Fraction& a, const Fraction& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

inline constexpr std::int64_t kOutputBits = 1;
inline constexpr std::int64_t kAuxiliaryBits = 0;

// (n + 1)(1 + delta1) + 2: one Bell pair's qubits over n + 1 hops.
std::int64_t QubitsPerBellPair(std::int64_t n, std::int64_t delta1);

// QubitsPerBellPair * (ceil(log2 n) + 1). Throws std::invalid_argument for
// n < 1 or delta1 < 0.
std::int64_t QubitTotalDeterministic(std::int64_t n, std::int64_t delta1);

Fraction EtaDeterministic(std::int64_t n, std::int64_t delta1);

// Throws std::invalid_argument unless 1 <= l <= ceil(1 + log2 n).
Fraction EtaQav6(std::int64_t n, std::int64_t delta1, std::int64_t l);

struct EfficiencyRow {
  std::int64_t n = 0;
  int h = 0;        // ceil rule
  int h_floor = 0;  // the protocol's default rule, for reference
  std::int64_t q_total = 0;
  Fraction eta_deterministic{1, 1};
  std::int64_t qav6_worst_iterations = 0;
  Fraction eta_qav6_worst{1, 1};
};

// One row per n. Throws std::invalid_argument for an empty list.
std::vector<EfficiencyRow> ComparisonTable(std::span<const std::int64_t> n_values,
                                           std::int64_t delta1);

std::string ComparisonTableCsv(std::span<const EfficiencyRow> rows);

}  // namespace qav

#endif  // QAV_EFFICIENCY_HPP_
