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

#include "qav/qav.h"

#include <exception>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "qav/efficiency.hpp"
#include "qav/experiments.hpp"
#include "qav/protocol.hpp"

struct qav_channel {
  qav::ChannelConfig config;
};

struct qav_tally {
  qav::TallyResult result;
  std::string abort_reason;
  std::string json;
};

struct qav_report {
  std::string json;
  std::string stable_json;
  std::string csv;
  bool has_csv = false;
};

namespace {

thread_local std::string g_last_error;

qav_status Fail(qav_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Maps the core's exceptions onto status codes.
template <typename Fn>
qav_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return QAV_OK;
  } catch (const std::out_of_range& e) {
    return Fail(QAV_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return Fail(QAV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(QAV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(QAV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(QAV_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(QAV_ERR_INTERNAL, "unknown error");
  }
}

qav::NoiseKind ToNoise(qav_noise kind) {
  switch (kind) {
    case QAV_NOISE_IDEAL: return qav::NoiseKind::kIdeal;
    case QAV_NOISE_DEPHASING: return qav::NoiseKind::kDephasing;
    case QAV_NOISE_DEPOLARIZING: return qav::NoiseKind::kDepolarizing;
  }
  throw std::invalid_argument("unknown noise kind");
}

qav::Adversary ToAdversary(qav_adversary a) {
  switch (a) {
    case QAV_ADVERSARY_NONE: return qav::Adversary::kNone;
    case QAV_ADVERSARY_INTERCEPT_RESEND: return qav::Adversary::kInterceptResend;
  }
  throw std::invalid_argument("unknown adversary");
}

}  // namespace

extern "C" {

QAV_API const char* qav_version(void) { return QAV_VERSION_STRING; }

QAV_API const char* qav_last_error(void) { return g_last_error.c_str(); }

QAV_API qav_status qav_channel_create(qav_channel** out) {
  if (!out) return Fail(QAV_ERR_NULL_ARGUMENT, "out is null");
  return Guard([&] { *out = new qav_channel{}; });
}

QAV_API void qav_channel_destroy(qav_channel* channel) { delete channel; }

QAV_API qav_status qav_channel_set_noise(qav_channel* channel, qav_noise kind, double p) {
  if (!channel) return Fail(QAV_ERR_NULL_ARGUMENT, "channel is null");
  return Guard([&] {
    qav::ChannelConfig next = channel->config;
    next.noise = {ToNoise(kind), p};
    next.Validate();
    channel->config = next;
  });
}

QAV_API qav_status qav_channel_set_loss(qav_channel* channel, double probability) {
  if (!channel) return Fail(QAV_ERR_NULL_ARGUMENT, "channel is null");
  return Guard([&] {
    qav::ChannelConfig next = channel->config;
    next.loss_probability = probability;
    next.Validate();
    channel->config = next;
  });
}

QAV_API qav_status qav_channel_set_adversary(qav_channel* channel, qav_adversary adversary) {
  if (!channel) return Fail(QAV_ERR_NULL_ARGUMENT, "channel is null");
  return Guard([&] {
    qav::ChannelConfig next = channel->config;
    next.adversary = ToAdversary(adversary);
    next.Validate();
    channel->config = next;
  });
}

QAV_API qav_status qav_channel_set_decoys(qav_channel* channel, int delta1, double threshold) {
  if (!channel) return Fail(QAV_ERR_NULL_ARGUMENT, "channel is null");
  return Guard([&] {
    qav::ChannelConfig next = channel->config;
    next.decoy = {delta1, threshold};
    next.Validate();
    channel->config = next;
  });
}

QAV_API qav_status qav_tally_run(const uint8_t* votes, size_t n, const qav_channel* channel,
                                 qav_pair_rule rule, qav_backend backend, uint64_t seed,
                                 qav_tally** out) {
  if (!out) return Fail(QAV_ERR_NULL_ARGUMENT, "out is null");
  if (!votes && n > 0) return Fail(QAV_ERR_NULL_ARGUMENT, "votes is null");
  return Guard([&] {
    std::vector<bool> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = votes[i] != 0;
    qav::ProtocolParams params = qav::ProtocolParams::ForVoters(
        static_cast<int>(n), rule == QAV_PAIR_RULE_CEIL ? qav::PairCountRule::kCeil
                                                        : qav::PairCountRule::kFloor);
    params.backend =
        backend == QAV_BACKEND_PHOTONIC ? qav::Backend::kPhotonic : qav::Backend::kAbstract;
    const qav::ChannelConfig config = channel ? channel->config : qav::ChannelConfig{};
    qav::RandomSource rng(seed);
    auto tally = std::make_unique<qav_tally>();
    tally->result = qav::RunProtocol(qav::VoteVector(std::move(bits)), config, params, rng);
    tally->abort_reason = tally->result.abort_reason.value_or("");
    tally->json = qav::experiments::TallyResultToJson(tally->result).dump(2);
    *out = tally.release();
  });
}

QAV_API void qav_tally_destroy(qav_tally* tally) { delete tally; }

QAV_API int qav_tally_veto_detected(const qav_tally* tally) {
  return tally && tally->result.veto_detected ? 1 : 0;
}

QAV_API int qav_tally_aborted(const qav_tally* tally) {
  return tally && tally->result.aborted ? 1 : 0;
}

QAV_API const char* qav_tally_abort_reason(const qav_tally* tally) {
  return tally ? tally->abort_reason.c_str() : "";
}

QAV_API size_t qav_tally_pair_count(const qav_tally* tally) {
  return tally ? tally->result.records.size() : 0;
}

QAV_API qav_status qav_tally_pair_outcome(const qav_tally* tally, size_t index,
                                          qav_bell_outcome* out) {
  if (!tally || !out) return Fail(QAV_ERR_NULL_ARGUMENT, "null argument");
  if (index >= tally->result.records.size()) {
    return Fail(QAV_ERR_OUT_OF_RANGE, "pair index out of range");
  }
  *out = static_cast<qav_bell_outcome>(tally->result.records[index].outcome);
  return QAV_OK;
}

QAV_API long qav_tally_qubits_transmitted(const qav_tally* tally) {
  return tally ? tally->result.qubits_transmitted : 0;
}

QAV_API const char* qav_tally_json(const qav_tally* tally) {
  return tally ? tally->json.c_str() : "";
}

QAV_API qav_status qav_qubit_total(int64_t n, int64_t delta1, int64_t* out) {
  if (!out) return Fail(QAV_ERR_NULL_ARGUMENT, "out is null");
  return Guard([&] { *out = qav::QubitTotalDeterministic(n, delta1); });
}

QAV_API qav_status qav_eta_deterministic(int64_t n, int64_t delta1, int64_t* num, int64_t* den) {
  if (!num || !den) return Fail(QAV_ERR_NULL_ARGUMENT, "null output");
  return Guard([&] {
    const qav::Fraction f = qav::EtaDeterministic(n, delta1);
    *num = f.num();
    *den = f.den();
  });
}

QAV_API qav_status qav_eta_qav6(int64_t n, int64_t delta1, int64_t l, int64_t* num,
                                int64_t* den) {
  if (!num || !den) return Fail(QAV_ERR_NULL_ARGUMENT, "null output");
  return Guard([&] {
    const qav::Fraction f = qav::EtaQav6(n, delta1, l);
    *num = f.num();
    *den = f.den();
  });
}

QAV_API qav_status qav_run_command(const char* subcommand, const char* spec_json,
                                   qav_report** out) {
  if (!subcommand || !out) return Fail(QAV_ERR_NULL_ARGUMENT, "null argument");
  return Guard([&] {
    const nlohmann::json parsed =
        spec_json && *spec_json ? nlohmann::json::parse(spec_json) : nlohmann::json::object();
    const auto spec = qav::experiments::RunSpec::FromJson(parsed);
    const auto report = qav::experiments::RunCommand(subcommand, spec);
    auto handle = std::make_unique<qav_report>();
    handle->json = report.json.dump(2);
    handle->stable_json = qav::experiments::WithoutRuntime(report.json).dump(2);
    if (report.csv) {
      handle->csv = *report.csv;
      handle->has_csv = true;
    }
    *out = handle.release();
  });
}

QAV_API void qav_report_destroy(qav_report* report) { delete report; }

QAV_API const char* qav_report_json(const qav_report* report) {
  return report ? report->json.c_str() : "";
}

QAV_API const char* qav_report_json_stable(const qav_report* report) {
  return report ? report->stable_json.c_str() : "";
}

QAV_API const char* qav_report_csv(const qav_report* report) {
  return report && report->has_csv ? report->csv.c_str() : nullptr;
}

}  // extern "C"
