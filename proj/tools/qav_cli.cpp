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

// qav: command-line driver over the C API.
//
//   qav tally --n 4 --votes 0100
//   qav exhaustive --n 8
//   qav sweep --n 4 --k 0 --noise dephasing --p-grid 0,0.05,0.1 --trials 100000
//   qav efficiency --n-values 2,4,8,16 --delta1 1 --format csv
//   qav adversary --delta1 16 --trials 100000
//   qav auth --trials 10000
//   qav backend --n 8 --trials 100000
//
// A JSON config file (--config) may set any flag by its long name with
// dashes replaced by underscores; flags given on the command line win.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qav/qav.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInternal = 1;
constexpr int kExitCheckFailed = 3;

struct Flags {
  int n = 0;
  std::string votes;
  int k = 0;
  std::uint64_t seed = 0;
  long trials = 0;
  std::string backend;
  std::string noise;
  double p = 0.0;
  std::vector<double> p_grid;
  double loss = 0.0;
  std::string adversary;
  int delta1 = 0;
  double threshold = 0.0;
  std::string pair_rule;
  std::string format;
  std::vector<std::int64_t> n_values;
  long signature_length = 0;
  double auth_threshold = 0.0;
  bool no_auth = false;
  int threads = 1;
  bool exhaustive = false;
  std::string out;
  std::string config;
};

struct ReportDeleter {
  void operator()(qav_report* r) const { qav_report_destroy(r); }
};

template <typename T>
void Overlay(nlohmann::json& spec, const CLI::App& app, const char* flag, const char* key,
             const T& value) {
  if (app.count(flag) > 0) spec[key] = value;
}

int WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return 0;
  }
  std::ofstream file(path);
  if (!file) {
    std::cerr << "qav: cannot open " << path << " for writing\n";
    return kExitInternal;
  }
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-pair anonymous veto simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(qav_version()));

  Flags f;
  app.add_option("--n", f.n, "number of voters");
  app.add_option("--votes", f.votes, "explicit votes, V_0 first (e.g. 0100)");
  app.add_option("--k", f.k, "random vote vector with exactly k vetoes");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--trials", f.trials, "Monte Carlo trials");
  app.add_option("--backend", f.backend, "abstract or photonic")
      ->check(CLI::IsMember({"abstract", "photonic"}));
  app.add_option("--noise", f.noise, "ideal, dephasing or depolarizing")
      ->check(CLI::IsMember({"ideal", "dephasing", "depolarizing"}));
  app.add_option("--p", f.p, "noise probability per hop");
  app.add_option("--p-grid", f.p_grid, "comma-separated noise grid for sweep")->delimiter(',');
  app.add_option("--loss", f.loss, "loss probability per hop");
  app.add_option("--adversary", f.adversary, "none or intercept_resend")
      ->check(CLI::IsMember({"none", "intercept_resend", "intercept-resend"}));
  app.add_option("--delta1", f.delta1, "decoys per hop");
  app.add_option("--threshold", f.threshold, "decoy disturbance threshold");
  app.add_option("--pair-rule", f.pair_rule, "floor or ceil")
      ->check(CLI::IsMember({"floor", "ceil"}));
  app.add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--n-values", f.n_values, "comma-separated voter counts for efficiency")
      ->delimiter(',');
  app.add_option("--signature-length", f.signature_length, "BB84 signature length");
  app.add_option("--auth-threshold", f.auth_threshold, "signature mismatch threshold");
  app.add_flag("--no-auth", f.no_auth, "skip voter authentication");
  app.add_option("--threads", f.threads, "worker threads for trial batches");
  app.add_flag("--exhaustive", f.exhaustive, "tally: enumerate every vote vector");
  app.add_option("--out", f.out, "write the report to PATH instead of stdout");
  app.add_option("--config", f.config, "JSON file with default flag values")
      ->check(CLI::ExistingFile);

  std::vector<CLI::App*> subs;
  subs.push_back(app.add_subcommand("tally", "run the protocol once"));
  subs.push_back(app.add_subcommand("exhaustive", "check every vote vector for n <= 16"));
  subs.push_back(app.add_subcommand("sweep", "Monte Carlo error and abort rates over a noise grid"));
  subs.push_back(app.add_subcommand("efficiency", "qubit-efficiency comparison table"));
  subs.push_back(app.add_subcommand("adversary", "decoy detection of intercept-resend"));
  subs.push_back(app.add_subcommand("auth", "signature acceptance for honest voters and forgers"));
  subs.push_back(app.add_subcommand("backend", "abstract vs photonic outcome distributions"));

  CLI11_PARSE(app, argc, argv);

  std::string subcommand;
  for (auto* s : subs) {
    if (s->parsed()) subcommand = s->get_name();
  }
  if (subcommand == "tally" && f.exhaustive) subcommand = "exhaustive";

  nlohmann::json spec = nlohmann::json::object();
  if (!f.config.empty()) {
    try {
      std::ifstream in(f.config);
      spec = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "qav: cannot parse " << f.config << ": " << e.what() << '\n';
      return kExitUsage;
    }
    if (!spec.is_object()) {
      std::cerr << "qav: config file must hold a JSON object\n";
      return kExitUsage;
    }
  }
  std::string out_path = f.out;
  if (out_path.empty() && spec.contains("out")) out_path = spec["out"].get<std::string>();
  spec.erase("out");

  Overlay(spec, app, "--n", "n", f.n);
  Overlay(spec, app, "--votes", "votes", f.votes);
  Overlay(spec, app, "--k", "k", f.k);
  Overlay(spec, app, "--seed", "seed", f.seed);
  Overlay(spec, app, "--trials", "trials", f.trials);
  Overlay(spec, app, "--backend", "backend", f.backend);
  Overlay(spec, app, "--noise", "noise", f.noise);
  Overlay(spec, app, "--p", "p", f.p);
  Overlay(spec, app, "--p-grid", "p_grid", f.p_grid);
  Overlay(spec, app, "--loss", "loss", f.loss);
  Overlay(spec, app, "--adversary", "adversary", f.adversary);
  Overlay(spec, app, "--delta1", "delta1", f.delta1);
  Overlay(spec, app, "--threshold", "threshold", f.threshold);
  Overlay(spec, app, "--pair-rule", "pair_rule", f.pair_rule);
  Overlay(spec, app, "--format", "format", f.format);
  Overlay(spec, app, "--n-values", "n_values", f.n_values);
  Overlay(spec, app, "--signature-length", "signature_length", f.signature_length);
  Overlay(spec, app, "--auth-threshold", "auth_threshold", f.auth_threshold);
  Overlay(spec, app, "--threads", "threads", f.threads);
  if (f.no_auth) spec["auth"] = false;
  if (spec.contains("exhaustive")) {
    if (spec["exhaustive"] == true && subcommand == "tally") subcommand = "exhaustive";
    spec.erase("exhaustive");
  }
  const std::string format = spec.value("format", std::string("json"));

  qav_report* raw = nullptr;
  const qav_status status = qav_run_command(subcommand.c_str(), spec.dump().c_str(), &raw);
  if (status != QAV_OK) {
    std::cerr << "qav " << subcommand << ": " << qav_last_error() << '\n';
    return status == QAV_ERR_INTERNAL ? kExitInternal : kExitUsage;
  }
  std::unique_ptr<qav_report, ReportDeleter> report(raw);

  const char* csv = qav_report_csv(report.get());
  const std::string json = qav_report_json(report.get());
  if (const int rc = WriteOutput(out_path, format == "csv" && csv ? std::string(csv) : json)) {
    return rc;
  }

  const auto parsed = nlohmann::json::parse(json);
  const auto& result = parsed["result"];
  if (result.contains("success") && !result["success"].get<bool>()) return kExitCheckFailed;
  if (result.contains("pass") && !result["pass"].get<bool>()) return kExitCheckFailed;
  return 0;
}
