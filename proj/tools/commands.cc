// Copyright 2026 The wsc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "commands.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "wsc/certifier.h"
#include "wsc/error.h"
#include "wsc/optimizer.h"
#include "wsc/serialization.h"

namespace wsc::cli {

namespace fs = std::filesystem;

namespace {

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void WriteFile(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorCode::kConfig,
                "output.dir: cannot write '" + path.string() + "'");
  }
  f << contents;
}

int InputError(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return kExitInputError;
}

}  // namespace

int CmdCertify(const ExperimentConfig& config, bool quiet, std::ostream& out,
               std::ostream& err) {
  WscCertificate cert = [&] {
    const Experiment ex = BuildExperiment(config);
    CertifyOptions opts;
    opts.seed = config.seed;
    opts.workers = config.workers;
    opts.tol_residual = config.tol_residual;
    if (ex.gamma_source != "analytic") {
      opts.gamma = ex.gamma;
      opts.gamma_estimated = ex.gamma_source == "estimated";
    }
    return CertifyRegion(*ex.objective, ex.region, ex.eta, config.n_samples,
                         opts);
  }();

  Json report = CertificateToJson(cert);
  report["config"] = ConfigToJson(config);
  report["generated_at"] = UtcTimestamp();
  const fs::path path = fs::path(config.output_dir) / "certificate.json";
  WriteFile(path, report.dump(2) + "\n");

  if (!quiet) {
    out << VerdictName(cert.verdict) << ": " << cert.objective_id
        << " radius=" << cert.region.radius() << " c_obs=" << cert.c_obs;
    if (cert.a) out << " a=" << *cert.a << " mu=" << *cert.mu;
    out << " residual_min=" << cert.residual_min << " -> " << path.string()
        << "\n";
  }
  (void)err;
  switch (cert.verdict) {
    case Verdict::kCertified: return kExitCertified;
    case Verdict::kRefuted: return kExitRefuted;
    case Verdict::kInconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

int CmdRun(const ExperimentConfig& config, bool quiet, std::ostream& out,
           std::ostream& err) {
  const Experiment ex = BuildExperiment(config);
  std::optional<Point> x0;
  if (config.x0) {
    try {
      x0.emplace(ex.objective->manifold(), *config.x0);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfig, std::string("x0: ") + e.what());
    }
  } else {
    std::mt19937_64 rng(config.seed);
    x0 = SamplePoint(ex.region, rng);
  }
  RunOptions opts;
  opts.region = ex.region;
  opts.seed = config.seed;
  const Trajectory traj =
      Run(*ex.objective, *x0, ex.policy, config.n_steps, opts);

  const fs::path dir(config.output_dir);
  WriteFile(dir / "trajectory.csv", TrajectoryToCsv(traj));
  Json j = TrajectoryToJson(traj);
  j["config"] = ConfigToJson(config);
  WriteFile(dir / "trajectory.json", j.dump(2) + "\n");

  const StepRecord& last = traj.steps.back();
  if (traj.abort_reason) {
    err << "run aborted: " << *traj.abort_reason << "\n";
    return 1;
  }
  if (traj.steps.front().dist_to_min <= kConvergedDistance) {
    if (!quiet) out << "run: started at the minimizer; c_obs undefined\n";
    return 0;
  }
  try {
    const double c = ContractionRate(traj);
    if (!quiet) {
      out << "run: " << traj.objective_id << " steps=" << last.index
          << " final_dist=" << last.dist_to_min << " c_obs=" << c << " -> "
          << (dir / "trajectory.csv").string() << "\n";
    }
  } catch (const Error& e) {
    err << "run: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int CmdSelftest(const SelfTestOptions& options, bool quiet, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<PropertyResult> results = RunSelfTest(options);
  int failed = 0;
  for (const PropertyResult& r : results) {
    if (!r.passed) ++failed;
    if (!quiet || !r.passed) {
      out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
      if (!r.detail.empty()) out << "  (" << r.detail << ")";
      out << "\n";
    }
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  out << "selftest: " << results.size() - failed << "/" << results.size()
      << " properties passed in " << secs << " s\n";
  return failed == 0 ? 0 : 1;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Certify weak-strong-convexity from gradient-descent contraction"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<int> samples;
  std::optional<int> workers;
  std::string eta;
  std::string out_dir;
  bool quiet = false;

  auto add_experiment_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment config (JSON)")
        ->required();
    sub->add_option("--seed", seed, "RNG seed (default 42)");
    sub->add_option("--samples", samples, "Number of sampled points")
        ->check(CLI::PositiveNumber);
    sub->add_option("--eta", eta, "Step size or 'auto'");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--workers", workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", quiet, "Only print errors");
  };
  CLI::App* certify = app.add_subcommand("certify", "Certify a region");
  add_experiment_flags(certify);
  CLI::App* run = app.add_subcommand("run", "Record a gradient-descent run");
  add_experiment_flags(run);
  CLI::App* selftest =
      app.add_subcommand("selftest", "Run the reduced invariant suite");
  selftest->add_flag("--quiet", quiet, "Only print failures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInputError;
  }

  if (selftest->parsed()) return CmdSelftest(SelfTestOptions{}, quiet, out);

  try {
    ExperimentConfig config = LoadConfigFile(config_path);
    if (seed) config.seed = *seed;
    if (samples) config.n_samples = *samples;
    if (workers) config.workers = *workers;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (!eta.empty()) {
      if (eta == "auto") {
        config.eta.reset();
      } else {
        try {
          size_t used = 0;
          const double v = std::stod(eta, &used);
          if (used != eta.size() || !(v > 0.0)) throw std::invalid_argument("");
          config.eta = v;
        } catch (const std::exception&) {
          throw Error(ErrorCode::kConfig,
                      "--eta: must be a positive number or 'auto'");
        }
      }
    }
    if (certify->parsed()) return CmdCertify(config, quiet, out, err);
    return CmdRun(config, quiet, out, err);
  } catch (const Error& e) {
    return InputError(err, e);
  } catch (const fs::filesystem_error& e) {
    return InputError(err, e);
  }
}

}  // namespace wsc::cli
