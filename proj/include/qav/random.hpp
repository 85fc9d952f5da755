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

#ifndef QAV_RANDOM_HPP_
#define QAV_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace qav {

// Seeded pseudo-random stream. One instance belongs to exactly one protocol
// run or trial; it is not thread safe.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  // Independent stream for trial `trial` of an experiment seeded with `seed`.
  // Serial and parallel batches derive identical streams from this.
  static RandomSource ForTrial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t NextU64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();

  // Fair coin.
  bool Bit() { return (engine_() >> 63) != 0; }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound);

  // True with probability p.
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t MixSeed(std::uint64_t x);

}  // namespace qav

#endif  // QAV_RANDOM_HPP_
