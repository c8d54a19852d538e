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

// Experiment configuration for the wsc tool.
//
//   {
//     "manifold":  {"kind": "euclidean", "dim": 2},
//     "objective": {"id": "quad_euclidean",
//                   "params": {"Q": [[1, 0], [0, 4]], "minimizer": [0, 0]}},
//     "region":    {"radius": 10},
//     "eta":       "auto",              // or a positive number
//     "gamma":     null,                // null (catalog), number, "estimate"
//     "n_samples": 1000,
//     "n_steps":   100,
//     "seed":      42,
//     "workers":   1,
//     "x0":        null,                // start of `run`; null samples one
//     "tolerances": {"residual": 1e-9},
//     "output":    {"dir": "wsc_out"}
//   }
//
// Only "manifold", "objective" and "region" are required.

#ifndef WSC_CONFIG_H_
#define WSC_CONFIG_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "wsc/manifold.h"
#include "wsc/objectives.h"
#include "wsc/optimizer.h"

namespace wsc {

inline constexpr uint64_t kDefaultSeed = 42;

struct ExperimentConfig {
  Manifold manifold = Manifold::Euclidean(1);
  std::string objective_id;
  nlohmann::json objective_params = nlohmann::json::object();
  double radius = 0.0;
  std::optional<double> eta;  // nullopt = "auto"
  std::optional<double> gamma;
  bool estimate_gamma = false;
  int n_samples = 1000;
  int n_steps = 100;
  uint64_t seed = kDefaultSeed;
  int workers = 1;
  std::optional<Eigen::VectorXd> x0;
  double tol_residual = 1e-9;
  std::string output_dir = "wsc_out";
};

// Validating loader; Error(kConfig) messages start with the offending field.
ExperimentConfig ParseConfig(const nlohmann::json& j);
ExperimentConfig LoadConfigFile(const std::string& path);
// Canonical JSON: every field present, defaults filled in.
nlohmann::json ConfigToJson(const ExperimentConfig& config);

// A config resolved into library objects.
struct Experiment {
  std::shared_ptr<const Objective> objective;
  Region region;
  StepSizePolicy policy;
  double eta;
  double gamma;
  std::string gamma_source;  // "analytic", "estimated" or "override"
};

// Builds the objective and region and resolves "auto" eta:
//   k_max > 0:  thm2_guard(a, gamma, zeta)   -> min(a / (zeta gamma), 2/gamma)
//   otherwise:  prop2(a, gamma, zeta)         -> a / (zeta gamma)
// with zeta = Zeta(k_min, radius) and a the analytic constant, or 1 when the
// catalog has none. A numeric eta on a positively curved manifold must not
// exceed 2/gamma.
Experiment BuildExperiment(const ExperimentConfig& config);

}  // namespace wsc

#endif  // WSC_CONFIG_H_
