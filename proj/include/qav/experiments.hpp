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

// Experiment drivers behind the command-line subcommands. Each takes a
// RunSpec and produces a JSON report (plus CSV for tabular commands).
//
// Every trial draws from RandomSource::ForTrial(seed, index), so a report is
// a function of the spec alone: the thread count only changes wall-clock.

#ifndef QAV_EXPERIMENTS_HPP_
#define QAV_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qav/protocol.hpp"

namespace qav::experiments {

using Json = nlohmann::ordered_json;

inline constexpr std::uint64_t kDefaultSeed = 20260101;
inline constexpr long kDefaultTrials = 10000;
inline constexpr int kMaxExhaustiveVoters = 16;

struct RunSpec {
  int n = 4;
  std::optional<std::string> votes;
  std::optional<int> k;
  std::uint64_t seed = kDefaultSeed;
  long trials = kDefaultTrials;
  Backend backend = Backend::kAbstract;
  NoiseKind noise = NoiseKind::kIdeal;
  double p = 0.0;
  std::vector<double> p_grid;
  double loss = 0.0;
  Adversary adversary = Adversary::kNone;
  int delta1 = kDefaultDecoysPerHop;
  double threshold = kDefaultDisturbanceThreshold;
  PairCountRule pair_rule = PairCountRule::kFloor;
  std::string format = "json";
  std::vector<std::int64_t> n_values;
  bool auth = true;
  long signature_length = static_cast<long>(kDefaultSignatureLength);
  double auth_threshold = kDefaultAuthThreshold;
  // Execution only; excluded from the spec echo.
  int threads = 1;

  // Unknown keys are rejected. Throws std::invalid_argument.
  static RunSpec FromJson(const nlohmann::json& j);
  Json ToJson() const;

  ChannelConfig Channel() const;
  ProtocolParams Params() const;
};

struct Report {
  Json json;
  std::optional<std::string> csv;
};

inline constexpr std::string_view kSubcommands[] = {"tally",     "exhaustive", "sweep", "efficiency",
                                                    "adversary", "auth",       "backend"};

// Dispatches on `subcommand`. Throws std::invalid_argument for an unknown
// subcommand or an invalid spec.
Report RunCommand(std::string_view subcommand, const RunSpec& spec);

Report CmdTally(const RunSpec& spec);
Report CmdExhaustive(const RunSpec& spec);
Report CmdSweep(const RunSpec& spec);
Report CmdEfficiency(const RunSpec& spec);
Report CmdAdversary(const RunSpec& spec);
Report CmdAuth(const RunSpec& spec);
Report CmdBackend(const RunSpec& spec);

Json TallyResultToJson(const TallyResult& result);

// Copy of a report without the "runtime" block (wall-clock, threads).
Json WithoutRuntime(const Json& report);

}  // namespace qav::experiments

#endif  // QAV_EXPERIMENTS_HPP_
