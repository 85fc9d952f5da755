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

#include <set>

#include "doctest.h"
#include "qav/random.hpp"

using qav::RandomSource;

TEST_CASE("same seed gives the same stream") {
  RandomSource a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
}

TEST_CASE("per-trial streams are deterministic and distinct") {
  auto a = RandomSource::ForTrial(7, 3);
  auto b = RandomSource::ForTrial(7, 3);
  auto c = RandomSource::ForTrial(7, 4);
  const auto first = a.NextU64();
  CHECK(first == b.NextU64());
  CHECK(first != c.NextU64());
}

TEST_CASE("uniform stays in the unit interval") {
  RandomSource rng(1);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
}

TEST_CASE("below covers its range") {
  RandomSource rng(2);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.Below(6);
    REQUIRE(v < 6);
    seen.insert(v);
  }
  CHECK(seen.size() == 6);
  CHECK(rng.Below(1) == 0);
}

TEST_CASE("bernoulli extremes") {
  RandomSource rng(3);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(rng.Bernoulli(0.0));
    CHECK(rng.Bernoulli(1.0));
  }
}
