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

#include "qav/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qav/auth.hpp"
#include "qav/efficiency.hpp"
#include "qav/photonic.hpp"

namespace qav::experiments {
namespace {

constexpr int kMaxListedCounterexamples = 32;
constexpr double kSigmaBound = 4.0;

// Runs fn(i) for i in [0, count) on `threads` workers; results come back in
// index order so the aggregate does not depend on scheduling.
template <typename Fn>
auto ParallelMap(std::size_t count, int threads, Fn&& fn) {
  using T = decltype(fn(std::size_t{0}));
  std::vector<T> out(count);
  const auto workers =
      static_cast<std::size_t>(std::max(1, std::min<int>(threads, static_cast<int>(count))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

template <typename T>
T Get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string FormatDecimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

Json FractionJson(const Fraction& f) {
  return Json{{"exact", f.ToString()}, {"decimal", f.ToDouble()}};
}

double Rate(long count, long total) {
  return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
}

bool IsTableCommand(std::string_view sub) {
  return sub == "efficiency" || sub == "sweep" || sub == "backend";
}

void ValidateCommon(std::string_view subcommand, const RunSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (spec.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (spec.format != "json" && spec.format != "csv") {
    throw std::invalid_argument("format must be json or csv");
  }
  if (spec.format == "csv" && !IsTableCommand(subcommand)) {
    throw std::invalid_argument("csv output is only available for efficiency, sweep and backend");
  }
  if (spec.votes && spec.k) throw std::invalid_argument("give either votes or k, not both");
  if (spec.votes && static_cast<int>(spec.votes->size()) != spec.n) {
    throw std::invalid_argument("votes has " + std::to_string(spec.votes->size()) +
                                " entries but n = " + std::to_string(spec.n));
  }
  if (spec.votes) VoteVector::Parse(*spec.votes);
  if (spec.k && (*spec.k < 0 || *spec.k > spec.n)) {
    throw std::invalid_argument("k must lie in [0, n]");
  }
  if (spec.signature_length < 1) throw std::invalid_argument("signature_length must be >= 1");
  if (!(spec.auth_threshold >= 0.0 && spec.auth_threshold <= 1.0)) {
    throw std::invalid_argument("auth_threshold must lie in [0, 1]");
  }
  for (double p : spec.p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p_grid entries must lie in [0, 1]");
  }
  spec.Channel().Validate();
}

Json Envelope(std::string_view subcommand, const RunSpec& spec, Json result,
              std::chrono::steady_clock::time_point start) {
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json report;
  report["tool"] = "qav";
  report["version"] = QAV_VERSION_STRING;
  report["subcommand"] = std::string(subcommand);
  report["seed"] = spec.seed;
  report["spec"] = spec.ToJson();
  report["result"] = std::move(result);
  report["runtime"] = Json{{"threads", spec.threads}, {"wall_clock_seconds", elapsed}};
  return report;
}

VoteVector ResolveVotes(const RunSpec& spec, RandomSource& rng) {
  if (spec.votes) return VoteVector::Parse(*spec.votes);
  return VoteVector::RandomWithVetoes(spec.n, spec.k.value_or(0), rng);
}

// Stream used to draw a random vote vector; kept apart from the run stream.
constexpr std::uint64_t kVoteStream = 0xC0FFEEULL;

}  // namespace

RunSpec RunSpec::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("run spec must be a JSON object");
  static const std::set<std::string> kKeys = {
      "n",         "votes",     "k",         "seed",      "trials",
      "backend",   "noise",     "p",         "p_grid",    "loss",
      "adversary", "delta1",    "threshold", "pair_rule", "format",
      "n_values",  "auth",      "signature_length",       "auth_threshold",
      "threads"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!kKeys.contains(it.key())) throw std::invalid_argument("unknown spec key: " + it.key());
  }
  RunSpec s;
  if (j.contains("n")) s.n = Get<int>(j, "n");
  if (j.contains("votes") && !j.at("votes").is_null()) s.votes = Get<std::string>(j, "votes");
  if (j.contains("k") && !j.at("k").is_null()) s.k = Get<int>(j, "k");
  if (j.contains("seed")) s.seed = Get<std::uint64_t>(j, "seed");
  if (j.contains("trials")) s.trials = Get<long>(j, "trials");
  if (j.contains("backend")) s.backend = BackendFromString(Get<std::string>(j, "backend"));
  if (j.contains("noise")) s.noise = NoiseKindFromString(Get<std::string>(j, "noise"));
  if (j.contains("p")) s.p = Get<double>(j, "p");
  if (j.contains("p_grid")) s.p_grid = Get<std::vector<double>>(j, "p_grid");
  if (j.contains("loss")) s.loss = Get<double>(j, "loss");
  if (j.contains("adversary")) s.adversary = AdversaryFromString(Get<std::string>(j, "adversary"));
  if (j.contains("delta1")) s.delta1 = Get<int>(j, "delta1");
  if (j.contains("threshold")) s.threshold = Get<double>(j, "threshold");
  if (j.contains("pair_rule")) s.pair_rule = PairCountRuleFromString(Get<std::string>(j, "pair_rule"));
  if (j.contains("format")) s.format = Get<std::string>(j, "format");
  if (j.contains("n_values")) s.n_values = Get<std::vector<std::int64_t>>(j, "n_values");
  if (j.contains("auth")) s.auth = Get<bool>(j, "auth");
  if (j.contains("signature_length")) s.signature_length = Get<long>(j, "signature_length");
  if (j.contains("auth_threshold")) s.auth_threshold = Get<double>(j, "auth_threshold");
  if (j.contains("threads")) s.threads = Get<int>(j, "threads");
  return s;
}

Json RunSpec::ToJson() const {
  Json j;
  j["n"] = n;
  j["votes"] = votes ? Json(*votes) : Json(nullptr);
  j["k"] = k ? Json(*k) : Json(nullptr);
  j["seed"] = seed;
  j["trials"] = trials;
  j["backend"] = std::string(ToString(backend));
  j["noise"] = std::string(ToString(noise));
  j["p"] = p;
  j["p_grid"] = p_grid;
  j["loss"] = loss;
  j["adversary"] = std::string(ToString(adversary));
  j["delta1"] = delta1;
  j["threshold"] = threshold;
  j["pair_rule"] = std::string(ToString(pair_rule));
  j["format"] = format;
  j["n_values"] = n_values;
  j["auth"] = auth;
  j["signature_length"] = signature_length;
  j["auth_threshold"] = auth_threshold;
  return j;
}

ChannelConfig RunSpec::Channel() const {
  ChannelConfig c;
  c.noise = {noise, p};
  c.loss_probability = loss;
  c.adversary = adversary;
  c.decoy = {delta1, threshold};
  return c;
}

ProtocolParams RunSpec::Params() const {
  ProtocolParams params = ProtocolParams::ForVoters(n, pair_rule);
  params.backend = backend;
  params.auth.enabled = auth;
  params.auth.signature_length = static_cast<std::size_t>(signature_length);
  params.auth.threshold = auth_threshold;
  return params;
}

Json TallyResultToJson(const TallyResult& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"pair", rec.pair},
                       {"outcome", std::string(ToString(rec.outcome))},
                       {"predicted_deterministic",
                        rec.predicted_deterministic
                            ? Json(std::string(ToString(*rec.predicted_deterministic)))
                            : Json(nullptr)},
                       {"phase", rec.phase}});
  }
  long decoys = 0, errors = 0;
  bool lost = false;
  for (const auto& h : r.hops) {
    decoys += h.decoys_sent;
    errors += h.decoy_errors;
    lost = lost || h.qubit_lost;
  }
  double worst_mismatch = 0.0;
  for (const auto& a : r.authentication) worst_mismatch = std::max(worst_mismatch, a.mismatch_rate);
  Json j;
  j["veto_detected"] = r.veto_detected;
  j["aborted"] = r.aborted;
  j["abort_reason"] = r.abort_reason ? Json(*r.abort_reason) : Json(nullptr);
  j["channel_faults"] = r.channel_faults;
  j["records"] = std::move(records);
  j["hops"] = Json{{"count", r.hops.size()},
                   {"decoys_sent", decoys},
                   {"decoy_errors", errors},
                   {"qubit_lost", lost}};
  j["authentication"] = Json{{"voters_checked", r.authentication.size()},
                             {"max_mismatch_rate", worst_mismatch}};
  j["qubits_transmitted"] = r.qubits_transmitted;
  return j;
}

Json WithoutRuntime(const Json& report) {
  Json copy = report;
  copy.erase("runtime");
  return copy;
}

Report CmdTally(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ValidateCommon("tally", spec);
  if (!spec.votes && !spec.k) throw std::invalid_argument("tally needs votes or k");
  RandomSource vote_rng = RandomSource::ForTrial(spec.seed, kVoteStream);
  const VoteVector votes = ResolveVotes(spec, vote_rng);
  RandomSource rng(spec.seed);
  const TallyResult result = RunProtocol(votes, spec.Channel(), spec.Params(), rng);
  Json body;
  body["votes"] = votes.ToString();
  body["pairs"] = spec.Params().pairs();
  body["tally"] = TallyResultToJson(result);
  return {Envelope("tally", spec, std::move(body), start), std::nullopt};
}

Report CmdExhaustive(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ValidateCommon("exhaustive", spec);
  if (spec.n > kMaxExhaustiveVoters) {
    throw std::invalid_argument("exhaustive enumeration supports n <= " +
                                std::to_string(kMaxExhaustiveVoters));
  }
  const std::size_t vectors = std::size_t{1} << spec.n;
  const ChannelConfig channel = spec.Channel();
  const ProtocolParams params = spec.Params();

  struct Outcome {
    bool aborted = false;
    bool correct = false;
  };
  const auto outcomes = ParallelMap(vectors, spec.threads, [&](std::size_t mask) {
    const VoteVector votes = VoteVector::FromMask(spec.n, mask);
    RandomSource rng = RandomSource::ForTrial(spec.seed, mask);
    const TallyResult r = RunProtocol(votes, channel, params, rng);
    return Outcome{r.aborted, !r.aborted && r.veto_detected == (votes.vetoes() >= 1)};
  });

  long aborted = 0, wrong = 0;
  Json listed = Json::array();
  for (std::size_t mask = 0; mask < vectors; ++mask) {
    if (outcomes[mask].aborted) {
      ++aborted;
    } else if (!outcomes[mask].correct) {
      ++wrong;
      if (listed.size() < kMaxListedCounterexamples) {
        listed.push_back(VoteVector::FromMask(spec.n, mask).ToString());
      }
    }
  }
  Json body;
  body["vectors"] = vectors;
  body["counterexamples"] = wrong;
  body["aborted"] = aborted;
  body["counterexample_votes"] = std::move(listed);
  body["success"] = wrong == 0 && aborted == 0;
  return {Envelope("exhaustive", spec, std::move(body), start), std::nullopt};
}

Report CmdSweep(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ValidateCommon("sweep", spec);
  const std::vector<double> grid = spec.p_grid.empty() ? std::vector<double>{spec.p} : spec.p_grid;
  const ProtocolParams params = spec.Params();
  const int h = params.pairs();

  struct Trial {
    bool aborted = false;
    bool veto = false;
    bool any_veto_cast = false;
    int faults = 0;
    std::vector<bool> phi_minus;
  };

  Json points = Json::array();
  std::ostringstream csv;
  csv << "p,trials,completed,abort_rate,false_positive_rate,false_negative_rate,fault_rate";
  for (int a = 1; a <= h; ++a) csv << ",phi_minus_rate_pair_" << a;
  csv << '\n';

  for (std::size_t g = 0; g < grid.size(); ++g) {
    RunSpec point = spec;
    point.p = grid[g];
    const ChannelConfig channel = point.Channel();
    channel.Validate();
    const auto trials = ParallelMap(static_cast<std::size_t>(spec.trials), spec.threads,
                                    [&](std::size_t t) {
      RandomSource rng = RandomSource::ForTrial(
          spec.seed, g * static_cast<std::uint64_t>(spec.trials) + t);
      const VoteVector votes = ResolveVotes(spec, rng);
      const TallyResult r = RunProtocol(votes, channel, params, rng);
      Trial out;
      out.aborted = r.aborted;
      out.veto = r.veto_detected;
      out.any_veto_cast = votes.vetoes() >= 1;
      out.faults = r.channel_faults;
      out.phi_minus.assign(static_cast<std::size_t>(h), false);
      if (!r.aborted) {
        for (const auto& rec : r.records) {
          out.phi_minus[rec.pair - 1] = rec.outcome == BellOutcome::kPhiMinus;
        }
      }
      return out;
    });

    long aborted = 0, completed = 0, fp = 0, fn = 0, faulty = 0;
    std::vector<long> phi_minus(static_cast<std::size_t>(h), 0);
    for (const auto& t : trials) {
      if (t.faults > 0) ++faulty;
      if (t.aborted) {
        ++aborted;
        continue;
      }
      ++completed;
      if (t.veto && !t.any_veto_cast) ++fp;
      if (!t.veto && t.any_veto_cast) ++fn;
      for (int a = 0; a < h; ++a) phi_minus[a] += t.phi_minus[a] ? 1 : 0;
    }
    Json rates = Json::array();
    for (int a = 0; a < h; ++a) rates.push_back(Rate(phi_minus[a], completed));
    Json pt;
    pt["p"] = grid[g];
    pt["trials"] = spec.trials;
    pt["completed"] = completed;
    pt["abort_rate"] = Rate(aborted, spec.trials);
    pt["false_positive_rate"] = Rate(fp, spec.trials);
    pt["false_negative_rate"] = Rate(fn, spec.trials);
    pt["fault_rate"] = Rate(faulty, spec.trials);
    pt["phi_minus_rate_per_pair"] = rates;
    points.push_back(pt);

    csv << FormatDecimal(grid[g]) << ',' << spec.trials << ',' << completed << ','
        << FormatDecimal(Rate(aborted, spec.trials)) << ',' << FormatDecimal(Rate(fp, spec.trials))
        << ',' << FormatDecimal(Rate(fn, spec.trials)) << ','
        << FormatDecimal(Rate(faulty, spec.trials));
    for (int a = 0; a < h; ++a) csv << ',' << FormatDecimal(Rate(phi_minus[a], completed));
    csv << '\n';
  }
  Json body;
  body["pairs"] = h;
  body["points"] = std::move(points);
  return {Envelope("sweep", spec, std::move(body), start), csv.str()};
}

Report CmdEfficiency(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ValidateCommon("efficiency", spec);
  const std::vector<std::int64_t> ns =
      spec.n_values.empty() ? std::vector<std::int64_t>{spec.n} : spec.n_values;
  const auto rows = ComparisonTable(ns, spec.delta1);
  Json table = Json::array();
  for (const auto& r : rows) {
    table.push_back({{"n", r.n},
                     {"h", r.h},
                     {"h_floor", r.h_floor},
                     {"q_total", r.q_total},
                     {"eta_deterministic", FractionJson(r.eta_deterministic)},
                     {"qav6_worst_iterations", r.qav6_worst_iterations},
                     {"eta_qav6_worst", FractionJson(r.eta_qav6_worst)}});
  }
  Json body;
  body["delta1"] = spec.delta1;
  body["metadata"] = {{"h_rule", "ceil"},
                      {"protocol_default_rule", "floor"},
                      {"rules_differ_for",
                       [&] {
                         Json differ = Json::array();
                         for (const auto& r : rows) {
                           if (r.h != r.h_floor) differ.push_back(r.n);
                         }
                         return differ;
                       }()},
                      {"output_bits", kOutputBits},
                      {"auxiliary_bits", kAuxiliaryBits}};
  body["rows"] = std::move(table);
  return {Envelope("efficiency", spec, std::move(body), start), ComparisonTableCsv(rows)};
}

Report CmdAdversary(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ValidateCommon("adversary", spec);
  RunSpec attacked = spec;
  attacked.adversary = Adversary::kInterceptResend;
  RunSpec quiet = spec;
  quiet.adversary = Adversary::kNone;
  const ChannelConfig attacked_channel = attacked.Channel();
  attacked_channel.Validate();
  const ChannelConfig quiet_channel = quiet.Channel();
  const ProtocolParams params = spec.Params();

  struct Trial {
    int attacked_errors = 0;
    int quiet_errors = 0;
    bool run_aborted = false;
    bool quiet_run_aborted = false;
  };
  const auto trials = ParallelMap(static_cast<std::size_t>(spec.trials), spec.threads,
                                  [&](std::size_t t) {
    RandomSource rng = RandomSource::ForTrial(spec.seed, t);
    Trial out;
    out.attacked_errors =
        DecoyRound(0, attacked_channel.decoy, Adversary::kInterceptResend, rng).decoy_errors;
    out.quiet_errors = DecoyRound(0, quiet_channel.decoy, Adversary::kNone, rng).decoy_errors;
    const VoteVector votes = ResolveVotes(spec, rng);
    out.run_aborted = RunProtocol(votes, attacked_channel, params, rng).aborted;
    out.quiet_run_aborted = RunProtocol(votes, quiet_channel, params, rng).aborted;
    return out;
  });

  long errors = 0, detected = 0, quiet_errors = 0, aborted = 0, quiet_aborted = 0;
  for (const auto& t : trials) {
    errors += t.attacked_errors;
    detected += t.attacked_errors > 0 ? 1 : 0;
    quiet_errors += t.quiet_errors;
    aborted += t.run_aborted ? 1 : 0;
    quiet_aborted += t.quiet_run_aborted ? 1 : 0;
  }
  const long decoys = spec.trials * spec.delta1;
  Json body;
  body["delta1"] = spec.delta1;
  body["threshold"] = spec.threshold;
  body["per_decoy_error_rate"] = Rate(errors, decoys);
  body["detection_rate"] = Rate(detected, spec.trials);
  body["expected_detection_rate"] = 1.0 - std::pow(0.75, spec.delta1);
  body["no_adversary_error_rate"] = Rate(quiet_errors, decoys);
  body["protocol_abort_rate"] = Rate(aborted, spec.trials);
  body["no_adversary_protocol_abort_rate"] = Rate(quiet_aborted, spec.trials);
  return {Envelope("adversary", spec, std::move(body), start), std::nullopt};
}

Report CmdAuth(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ValidateCommon("auth", spec);
  AuthPolicy policy;
  policy.signature_length = static_cast<std::size_t>(spec.signature_length);
  policy.threshold = spec.auth_threshold;

  struct Trial {
    AuthResult honest;
    AuthResult forger;
  };
  const auto trials = ParallelMap(static_cast<std::size_t>(spec.trials), spec.threads,
                                  [&](std::size_t t) {
    RandomSource rng = RandomSource::ForTrial(spec.seed, t);
    Trial out;
    out.honest = AuthenticateVoter(policy, false, rng);
    out.forger = AuthenticateVoter(policy, true, rng);
    return out;
  });
  double honest_max = 0.0, forger_sum = 0.0;
  long honest_accepted = 0, forger_rejected = 0;
  for (const auto& t : trials) {
    honest_max = std::max(honest_max, t.honest.mismatch_rate);
    honest_accepted += t.honest.accepted ? 1 : 0;
    forger_sum += t.forger.mismatch_rate;
    forger_rejected += t.forger.accepted ? 0 : 1;
  }
  Json body;
  body["signature_length"] = spec.signature_length;
  body["threshold"] = spec.auth_threshold;
  body["honest_max_mismatch_rate"] = honest_max;
  body["honest_acceptance_rate"] = Rate(honest_accepted, spec.trials);
  body["forger_mean_mismatch_rate"] = forger_sum / static_cast<double>(spec.trials);
  body["forger_rejection_rate"] = Rate(forger_rejected, spec.trials);
  return {Envelope("auth", spec, std::move(body), start), std::nullopt};
}

Report CmdBackend(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ValidateCommon("backend", spec);
  const int h = spec.Params().pairs();
  const int kmax = spec.n;

  struct Cell {
    int k = 0;
    int pair = 0;
    long abstract_minus = 0;
    long photonic_minus = 0;
    double state_distance = 0.0;
  };
  const std::size_t cells = static_cast<std::size_t>((kmax + 1) * h);
  const auto results = ParallelMap(cells, spec.threads, [&](std::size_t c) {
    Cell cell;
    cell.k = static_cast<int>(c) / h;
    cell.pair = static_cast<int>(c) % h + 1;
    PureState logical = BellPhiPlus();
    photonic::PhotonState photon = photonic::PrepareBellPhotonic();
    const GateMatrix gate = PhaseGate(cell.pair);
    for (int v = 0; v < cell.k; ++v) {
      logical = ApplyGate(logical, gate, 1);
      photon = photonic::ApplyVetoPhotonic(photon, cell.pair);
    }
    cell.state_distance = logical.Distance(photonic::ToLogical(photon));
    RandomSource abstract_rng = RandomSource::ForTrial(spec.seed, 2 * c);
    RandomSource photonic_rng = RandomSource::ForTrial(spec.seed, 2 * c + 1);
    for (long t = 0; t < spec.trials; ++t) {
      if (BellMeasure(logical, abstract_rng) == BellOutcome::kPhiMinus) ++cell.abstract_minus;
      if (photonic::BellMeasurePhotonic(photon, photonic_rng) == BellOutcome::kPhiMinus) {
        ++cell.photonic_minus;
      }
    }
    return cell;
  });

  const double trials = static_cast<double>(spec.trials);
  double max_dev_sigma = 0.0, max_dev_abs = 0.0, max_state_distance = 0.0;
  bool pass = true;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "k,pair,expected_phi_minus,abstract_phi_minus,photonic_phi_minus,deviation_sigma,"
         "state_distance\n";
  for (const auto& cell : results) {
    const double expected = GetOutcomeDistribution(cell.k, cell.pair).phi_minus;
    const double fa = cell.abstract_minus / trials;
    const double fp = cell.photonic_minus / trials;
    const double sigma = std::sqrt(expected * (1.0 - expected) / trials);
    const double diff = std::abs(fa - fp);
    // Between-backend deviation, in units of the standard error of a
    // difference of two independent frequencies.
    double dev_sigma = 0.0;
    if (sigma > 0.0) {
      dev_sigma = diff / (std::sqrt(2.0) * sigma);
      const bool ok = dev_sigma <= kSigmaBound && std::abs(fa - expected) <= kSigmaBound * sigma &&
                      std::abs(fp - expected) <= kSigmaBound * sigma;
      pass = pass && ok;
    } else {
      pass = pass && fa == expected && fp == expected;
      if (diff > 0.0) dev_sigma = INFINITY;
    }
    pass = pass && cell.state_distance <= 1e-12;
    max_dev_sigma = std::max(max_dev_sigma, dev_sigma);
    max_dev_abs = std::max(max_dev_abs, diff);
    max_state_distance = std::max(max_state_distance, cell.state_distance);
    rows.push_back({{"k", cell.k},
                    {"pair", cell.pair},
                    {"expected_phi_minus", expected},
                    {"abstract_phi_minus", fa},
                    {"photonic_phi_minus", fp},
                    {"deviation_sigma", dev_sigma},
                    {"state_distance", cell.state_distance}});
    csv << cell.k << ',' << cell.pair << ',' << FormatDecimal(expected) << ','
        << FormatDecimal(fa) << ',' << FormatDecimal(fp) << ',' << FormatDecimal(dev_sigma) << ','
        << FormatDecimal(cell.state_distance) << '\n';
  }
  Json body;
  body["pairs"] = h;
  body["sigma_bound"] = kSigmaBound;
  body["max_deviation_sigma"] = max_dev_sigma;
  body["max_deviation_abs"] = max_dev_abs;
  body["max_state_distance"] = max_state_distance;
  body["pass"] = pass;
  body["cells"] = std::move(rows);
  return {Envelope("backend", spec, std::move(body), start), csv.str()};
}

Report RunCommand(std::string_view subcommand, const RunSpec& spec) {
  if (subcommand == "tally") return CmdTally(spec);
  if (subcommand == "exhaustive") return CmdExhaustive(spec);
  if (subcommand == "sweep") return CmdSweep(spec);
  if (subcommand == "efficiency") return CmdEfficiency(spec);
  if (subcommand == "adversary") return CmdAdversary(spec);
  if (subcommand == "auth") return CmdAuth(spec);
  if (subcommand == "backend") return CmdBackend(spec);
  throw std::invalid_argument("unknown subcommand: " + std::string(subcommand));
}

}  // namespace qav::experiments
