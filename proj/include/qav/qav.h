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

/*
 * C interface to the qav anonymous-veto simulator.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return a qav_status; on failure qav_last_error() describes the
 * problem for the calling thread until its next API call.
 */

#ifndef QAV_QAV_H_
#define QAV_QAV_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QAV_BUILDING_LIBRARY)
#define QAV_API __attribute__((visibility("default")))
#else
#define QAV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qav_status {
  QAV_OK = 0,
  QAV_ERR_NULL_ARGUMENT = 1,
  QAV_ERR_INVALID_ARGUMENT = 2,
  QAV_ERR_OUT_OF_RANGE = 3,
  QAV_ERR_INTERNAL = 4
} qav_status;

typedef enum qav_noise { QAV_NOISE_IDEAL = 0, QAV_NOISE_DEPHASING = 1, QAV_NOISE_DEPOLARIZING = 2 } qav_noise;
typedef enum qav_adversary { QAV_ADVERSARY_NONE = 0, QAV_ADVERSARY_INTERCEPT_RESEND = 1 } qav_adversary;
typedef enum qav_pair_rule { QAV_PAIR_RULE_FLOOR = 0, QAV_PAIR_RULE_CEIL = 1 } qav_pair_rule;
typedef enum qav_backend { QAV_BACKEND_ABSTRACT = 0, QAV_BACKEND_PHOTONIC = 1 } qav_backend;

/* Bell outcomes in fixed order. */
typedef enum qav_bell_outcome {
  QAV_PHI_PLUS = 0,
  QAV_PHI_MINUS = 1,
  QAV_PSI_PLUS = 2,
  QAV_PSI_MINUS = 3
} qav_bell_outcome;

typedef struct qav_channel qav_channel;
typedef struct qav_tally qav_tally;
typedef struct qav_report qav_report;

QAV_API const char* qav_version(void);
QAV_API const char* qav_last_error(void);

/* Channel configuration. A new channel is ideal, lossless, unattacked,
 * with 16 decoys per hop and disturbance threshold 0.125. */
QAV_API qav_status qav_channel_create(qav_channel** out);
QAV_API void qav_channel_destroy(qav_channel* channel);
QAV_API qav_status qav_channel_set_noise(qav_channel* channel, qav_noise kind, double p);
QAV_API qav_status qav_channel_set_loss(qav_channel* channel, double probability);
QAV_API qav_status qav_channel_set_adversary(qav_channel* channel, qav_adversary adversary);
QAV_API qav_status qav_channel_set_decoys(qav_channel* channel, int delta1, double threshold);

/* One protocol run. votes[i] != 0 means voter i vetoes. channel may be NULL
 * for the ideal default. */
QAV_API qav_status qav_tally_run(const uint8_t* votes, size_t n, const qav_channel* channel,
                                 qav_pair_rule rule, qav_backend backend, uint64_t seed,
                                 qav_tally** out);
QAV_API void qav_tally_destroy(qav_tally* tally);
QAV_API int qav_tally_veto_detected(const qav_tally* tally);
QAV_API int qav_tally_aborted(const qav_tally* tally);
/* Empty string when the run was not aborted. */
QAV_API const char* qav_tally_abort_reason(const qav_tally* tally);
QAV_API size_t qav_tally_pair_count(const qav_tally* tally);
QAV_API qav_status qav_tally_pair_outcome(const qav_tally* tally, size_t index,
                                          qav_bell_outcome* out);
QAV_API long qav_tally_qubits_transmitted(const qav_tally* tally);
/* Serialized result, valid until the tally is destroyed. */
QAV_API const char* qav_tally_json(const qav_tally* tally);

/* Efficiency formulas. Fractions are returned reduced. */
QAV_API qav_status qav_qubit_total(int64_t n, int64_t delta1, int64_t* out);
QAV_API qav_status qav_eta_deterministic(int64_t n, int64_t delta1, int64_t* num, int64_t* den);
QAV_API qav_status qav_eta_qav6(int64_t n, int64_t delta1, int64_t l, int64_t* num, int64_t* den);

/* Runs a subcommand ("tally", "exhaustive", "sweep", "efficiency",
 * "adversary", "auth", "backend") with a JSON run spec. */
QAV_API qav_status qav_run_command(const char* subcommand, const char* spec_json,
                                   qav_report** out);
QAV_API void qav_report_destroy(qav_report* report);
/* Pretty-printed JSON report, valid until the report is destroyed. */
QAV_API const char* qav_report_json(const qav_report* report);
/* Same report without the runtime block; stable across reruns. */
QAV_API const char* qav_report_json_stable(const qav_report* report);
/* CSV table, or NULL for commands without tabular output. */
QAV_API const char* qav_report_csv(const qav_report* report);

#ifdef __cplusplus
}
#endif

#endif /* QAV_QAV_H_ */
