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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qav/efficiency.hpp"

using namespace qav;

namespace {

std::int64_t CeilLog2(std::int64_t n) {
  std::int64_t c = 0;
  while ((std::int64_t{1} << c) < n) ++c;
  return c;
}

std::int64_t QTotalOracle(std::int64_t n, std::int64_t d) {
  return ((n + 1) * (1 + d) + 2) * (CeilLog2(n) + 1);
}

}  // namespace

TEST_CASE("fractions") {
  CHECK(Fraction(2, 4) == Fraction(1, 2));
  CHECK(Fraction(3, 9).ToString() == "1/3");
  CHECK(Fraction(0, 5) == Fraction(0, 1));
  CHECK(Fraction(1, 80) < Fraction(1, 20));
  CHECK_FALSE(Fraction(1, 20) < Fraction(1, 80));
  CHECK(Fraction(1, 4).ToDouble() == 0.25);
  CHECK_THROWS_AS(Fraction(1, 0), std::invalid_argument);
}

TEST_CASE("qubit totals") {
  CHECK(QubitTotalDeterministic(4, 10) == 171);
  CHECK(QubitTotalDeterministic(1, 0) == 4);
  CHECK(QubitTotalDeterministic(8, 1) == 80);
  for (std::int64_t n = 1; n <= 300; ++n) {
    for (std::int64_t d : {0, 1, 2, 10, 16}) {
      CHECK(QubitTotalDeterministic(n, d) == QTotalOracle(n, d));
      CHECK(EtaDeterministic(n, d) == Fraction(1, QTotalOracle(n, d)));
    }
  }
  CHECK_THROWS_AS(QubitTotalDeterministic(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(QubitTotalDeterministic(4, -1), std::invalid_argument);
}

TEST_CASE("efficiency values") {
  CHECK(EtaDeterministic(4, 10) == Fraction(1, 171));
  CHECK(EtaDeterministic(1, 0) == Fraction(1, 4));
  CHECK(EtaDeterministic(8, 1) == Fraction(1, 80));
  CHECK(EtaQav6(8, 1, 4) == Fraction(1, 80));
  CHECK(EtaQav6(8, 1, 1) == Fraction(1, 20));
  CHECK_THROWS_AS(EtaQav6(8, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(EtaQav6(8, 1, 5), std::invalid_argument);
  CHECK_NOTHROW(EtaQav6(5, 1, 4));
}

TEST_CASE("worst-case baseline matches the single round for powers of two") {
  for (std::int64_t log = 0; log <= 10; ++log) {
    const std::int64_t n = std::int64_t{1} << log;
    for (std::int64_t d : {0, 1, 16}) CHECK(EtaQav6(n, d, 1 + log) == EtaDeterministic(n, d));
  }
}

TEST_CASE("comparison table") {
  const std::vector<std::int64_t> eight = {8};
  const auto rows = ComparisonTable(eight, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 8);
  CHECK(rows[0].h == 4);
  CHECK(rows[0].q_total == 80);
  CHECK(rows[0].eta_deterministic == Fraction(1, 80));
  CHECK(rows[0].eta_qav6_worst == Fraction(1, 80));

  const std::vector<std::int64_t> four = {4};
  const auto r4 = ComparisonTable(four, 10);
  CHECK(r4[0].h == 3);
  CHECK(r4[0].q_total == 171);
  CHECK(r4[0].eta_deterministic == Fraction(1, 171));

  const std::vector<std::int64_t> five = {5};
  const auto r5 = ComparisonTable(five, 1);
  CHECK(r5[0].h == 4);
  CHECK(r5[0].h_floor == 3);

  CHECK_THROWS_AS(ComparisonTable(std::vector<std::int64_t>{}, 1), std::invalid_argument);
  const std::string csv = ComparisonTableCsv(rows);
  CHECK(csv.find("8,4,4,80,1/80,") != std::string::npos);
}
