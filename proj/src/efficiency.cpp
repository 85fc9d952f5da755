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

#include "qav/efficiency.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qav/protocol.hpp"

namespace qav {
namespace {

void CheckInputs(std::int64_t n, std::int64_t delta1) {
  if (n < 1) throw std::invalid_argument("voter count must be >= 1");
  if (delta1 < 0) throw std::invalid_argument("delta1 must be >= 0");
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw std::invalid_argument("fraction needs num >= 0, den > 0");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Fraction::ToString() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool operator<(const Fraction& a, const Fraction& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

std::int64_t QubitsPerBellPair(std::int64_t n, std::int64_t delta1) {
  CheckInputs(n, delta1);
  return (n + 1) * (1 + delta1) + 2;
}

std::int64_t QubitTotalDeterministic(std::int64_t n, std::int64_t delta1) {
  return QubitsPerBellPair(n, delta1) * PairCount(n, PairCountRule::kCeil);
}

Fraction EtaDeterministic(std::int64_t n, std::int64_t delta1) {
  return Fraction(kOutputBits, QubitTotalDeterministic(n, delta1) + kAuxiliaryBits);
}

Fraction EtaQav6(std::int64_t n, std::int64_t delta1, std::int64_t l) {
  CheckInputs(n, delta1);
  if (l < 1 || l > Qav6MaxIterations(n)) {
    throw std::invalid_argument("iteration count must lie in [1, ceil(1 + log2 n)]");
  }
  return Fraction(kOutputBits, QubitsPerBellPair(n, delta1) * l + kAuxiliaryBits);
}

std::vector<EfficiencyRow> ComparisonTable(std::span<const std::int64_t> n_values,
                                           std::int64_t delta1) {
  if (n_values.empty()) throw std::invalid_argument("comparison table needs at least one n");
  std::vector<EfficiencyRow> rows;
  rows.reserve(n_values.size());
  for (std::int64_t n : n_values) {
    EfficiencyRow row;
    row.n = n;
    row.h = PairCount(n, PairCountRule::kCeil);
    row.h_floor = PairCount(n, PairCountRule::kFloor);
    row.q_total = QubitTotalDeterministic(n, delta1);
    row.eta_deterministic = EtaDeterministic(n, delta1);
    row.qav6_worst_iterations = Qav6MaxIterations(n);
    row.eta_qav6_worst = EtaQav6(n, delta1, row.qav6_worst_iterations);
    rows.push_back(row);
  }
  return rows;
}

std::string ComparisonTableCsv(std::span<const EfficiencyRow> rows) {
  std::ostringstream out;
  out << "n,h,h_floor,q_total,eta_det,eta_det_decimal,qav6_worst_l,eta_qav6_worst,"
         "eta_qav6_worst_decimal\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.n << ',' << r.h << ',' << r.h_floor << ',' << r.q_total << ','
        << r.eta_deterministic.ToString() << ',';
    std::snprintf(buf, sizeof buf, "%.10g", r.eta_deterministic.ToDouble());
    out << buf << ',' << r.qav6_worst_iterations << ',' << r.eta_qav6_worst.ToString() << ',';
    std::snprintf(buf, sizeof buf, "%.10g", r.eta_qav6_worst.ToDouble());
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace qav
