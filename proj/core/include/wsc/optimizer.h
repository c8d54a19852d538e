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

// Fixed-step (Riemannian) gradient descent and contraction measurement.

#ifndef WSC_OPTIMIZER_H_
#define WSC_OPTIMIZER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsc/manifold.h"
#include "wsc/objectives.h"

namespace wsc {

enum class StepMode { kFixed, kProp1, kProp2, kThm2Guard };

std::string_view StepModeName(StepMode mode);
StepMode StepModeFromName(std::string_view name);

// Step-size rules:
//   fixed       eta
//   prop1       a / gamma
//   prop2       a / (zeta gamma)
//   thm2_guard  min(base, 2 / gamma), base = eta if eta > 0 else a/(zeta gamma)
struct StepSizePolicy {
  StepMode mode = StepMode::kFixed;
  double eta = 0.0;
  double a = 1.0;
  double gamma = 1.0;
  double zeta = 1.0;

  static StepSizePolicy Fixed(double eta);
  static StepSizePolicy Prop1(double a, double gamma);
  static StepSizePolicy Prop2(double a, double gamma, double zeta);
  static StepSizePolicy Thm2Guard(double a, double gamma, double zeta,
                                  double eta = 0.0);

  // Throws Error(kInvalidArgument) for nonpositive inputs or zeta < 1.
  double Resolve() const;
};

// x - eta grad f(x). Only for Euclidean manifolds (or a flat metric equal to
// the identity); throws Error(kCurvedManifold) otherwise.
Point GdStep(const Objective& obj, const Point& x, double eta);

// exp_x(-eta grad f(x)). Throws Error(kStepTooLarge) on the sphere when the
// step length reaches pi, Error(kNonFinite) on overflow.
Point RgdStep(const Objective& obj, const Point& x, double eta);

struct StepRecord {
  int index;
  Point point;
  double value;
  double gradient_norm;
  double dist_to_min;
  double eta_used;
  bool outside_region;
};

struct Trajectory {
  std::string objective_id;
  StepSizePolicy policy;
  uint64_t seed = 0;
  std::vector<StepRecord> steps;
  // Set when the run stopped early.
  std::optional<std::string> abort_reason;
  // Number of recorded iterates that left the declared region.
  int exits_region = 0;
};

struct RunOptions {
  std::optional<Region> region;
  uint64_t seed = 0;
};

// Applies RgdStep n_steps times, recording x0 and every iterate. Iterates are
// never projected back into the region; exits are flagged on the record.
Trajectory Run(const Objective& obj, const Point& x0,
               const StepSizePolicy& policy, int n_steps,
               const RunOptions& options = {});

struct ContractionScan {
  double worst_ratio = 0.0;  // max dist^2_{k+1} / dist^2_k
  int worst_index = -1;      // k of the worst pair
  int pairs = 0;
};

// Scans consecutive pairs until dist_to_min drops below 1e-12.
ContractionScan ScanContraction(const Trajectory& traj);

// c_obs = min_k (1 - dist^2_{k+1} / dist^2_k), clamped to [0, 1].
// Throws Error(kNoContraction) carrying the worst ratio if any ratio exceeds
// 1 + 1e-10 or c_obs < 1e-10, and Error(kInvalidArgument) if the trajectory
// has fewer than two records or starts at the minimizer.
inline constexpr double kDivergenceTolerance = 1e-10;
inline constexpr double kMinContraction = 1e-10;
inline constexpr double kConvergedDistance = 1e-12;
double ContractionRate(const Trajectory& traj);

}  // namespace wsc

#endif  // WSC_OPTIMIZER_H_
