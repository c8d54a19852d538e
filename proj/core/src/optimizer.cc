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

#include "wsc/optimizer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "wsc/error.h"

namespace wsc {

std::string_view StepModeName(StepMode mode) {
  switch (mode) {
    case StepMode::kFixed: return "fixed";
    case StepMode::kProp1: return "prop1";
    case StepMode::kProp2: return "prop2";
    case StepMode::kThm2Guard: return "thm2_guard";
  }
  return "unknown";
}

StepMode StepModeFromName(std::string_view name) {
  if (name == "fixed") return StepMode::kFixed;
  if (name == "prop1") return StepMode::kProp1;
  if (name == "prop2") return StepMode::kProp2;
  if (name == "thm2_guard") return StepMode::kThm2Guard;
  throw Error(ErrorCode::kConfig,
              "policy.mode: unknown step-size mode '" + std::string(name) + "'");
}

StepSizePolicy StepSizePolicy::Fixed(double eta) {
  return {StepMode::kFixed, eta, 1.0, 1.0, 1.0};
}

StepSizePolicy StepSizePolicy::Prop1(double a, double gamma) {
  return {StepMode::kProp1, 0.0, a, gamma, 1.0};
}

StepSizePolicy StepSizePolicy::Prop2(double a, double gamma, double zeta) {
  return {StepMode::kProp2, 0.0, a, gamma, zeta};
}

StepSizePolicy StepSizePolicy::Thm2Guard(double a, double gamma, double zeta,
                                         double eta) {
  return {StepMode::kThm2Guard, eta, a, gamma, zeta};
}

double StepSizePolicy::Resolve() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  switch (mode) {
    case StepMode::kFixed:
      require(eta >= 0.0 && std::isfinite(eta), "eta must be finite and >= 0");
      return eta;
    case StepMode::kProp1:
      require(a > 0.0 && gamma > 0.0, "prop1 needs a > 0 and gamma > 0");
      return a / gamma;
    case StepMode::kProp2:
      require(a > 0.0 && gamma > 0.0, "prop2 needs a > 0 and gamma > 0");
      require(zeta >= 1.0, "prop2 needs zeta >= 1");
      return a / (zeta * gamma);
    case StepMode::kThm2Guard: {
      require(gamma > 0.0, "thm2_guard needs gamma > 0");
      double base = eta;
      if (!(base > 0.0)) {
        require(a > 0.0 && zeta >= 1.0, "thm2_guard needs a > 0, zeta >= 1");
        base = a / (zeta * gamma);
      }
      return std::min(base, 2.0 / gamma);
    }
  }
  return eta;
}

Point GdStep(const Objective& obj, const Point& x, double eta) {
  const Manifold& m = x.manifold();
  const bool identity_metric =
      m.kind() == ManifoldKind::kEuclidean ||
      (m.kind() == ManifoldKind::kFlatMetric &&
       m.metric() ==
           Eigen::MatrixXd::Identity(m.dim(), m.dim()));
  if (!identity_metric) {
    throw Error(ErrorCode::kCurvedManifold,
                "plain gradient descent needs the Euclidean metric; use "
                "RgdStep for " +
                    std::string(KindName(m.kind())) + " manifolds");
  }
  return Point(m, x.coords() - eta * obj.Gradient(x).coords());
}

Point RgdStep(const Objective& obj, const Point& x, double eta) {
  const Tangent step = obj.Gradient(x) * (-eta);
  if (!step.coords().allFinite()) {
    throw Error(ErrorCode::kNonFinite, "gradient step is not finite");
  }
  if (x.manifold().kind() == ManifoldKind::kSphere &&
      Norm(step) >= std::numbers::pi) {
    throw Error(ErrorCode::kStepTooLarge,
                "step length eta*|grad f| reaches pi on the sphere");
  }
  return Exp(x, step);
}

namespace {

StepRecord Record(const Objective& obj, int index, const Point& x, double eta,
                  const std::optional<Region>& region) {
  const double dist = Dist(x, obj.minimizer());
  const double value = obj.Value(x);
  const double grad_norm = Norm(obj.Gradient(x));
  if (!std::isfinite(value) || !std::isfinite(grad_norm)) {
    throw Error(ErrorCode::kNonFinite,
                "non-finite value at step " + std::to_string(index));
  }
  const bool outside =
      region.has_value() && Dist(x, region->center()) > region->radius() + 1e-9;
  return StepRecord{index, x, value, grad_norm, dist, eta, outside};
}

}  // namespace

Trajectory Run(const Objective& obj, const Point& x0,
               const StepSizePolicy& policy, int n_steps,
               const RunOptions& options) {
  if (n_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_steps must be >= 1");
  }
  const double eta = policy.Resolve();
  Trajectory traj;
  traj.objective_id = obj.id();
  traj.policy = policy;
  traj.seed = options.seed;
  traj.steps.reserve(n_steps + 1);
  traj.steps.push_back(Record(obj, 0, x0, eta, options.region));
  traj.exits_region += traj.steps.back().outside_region;
  for (int k = 1; k <= n_steps; ++k) {
    try {
      const Point next = RgdStep(obj, traj.steps.back().point, eta);
      traj.steps.push_back(Record(obj, k, next, eta, options.region));
      traj.exits_region += traj.steps.back().outside_region;
    } catch (const Error& e) {
      traj.abort_reason = std::string(ErrorCodeName(e.code())) + " at step " +
                          std::to_string(k) + ": " + e.what();
      break;
    }
  }
  return traj;
}

ContractionScan ScanContraction(const Trajectory& traj) {
  ContractionScan scan;
  for (size_t k = 0; k + 1 < traj.steps.size(); ++k) {
    const double d0 = traj.steps[k].dist_to_min;
    if (d0 < kConvergedDistance) break;
    const double d1 = traj.steps[k + 1].dist_to_min;
    const double ratio = (d1 * d1) / (d0 * d0);
    if (scan.worst_index < 0 || ratio > scan.worst_ratio) {
      scan.worst_ratio = ratio;
      scan.worst_index = static_cast<int>(k);
    }
    ++scan.pairs;
  }
  return scan;
}

double ContractionRate(const Trajectory& traj) {
  if (traj.steps.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "contraction rate needs at least two trajectory records");
  }
  if (traj.steps.front().dist_to_min <= kConvergedDistance) {
    throw Error(ErrorCode::kInvalidArgument,
                "trajectory starts at the minimizer; contraction undefined");
  }
  const ContractionScan scan = ScanContraction(traj);
  const double c = std::clamp(1.0 - scan.worst_ratio, 0.0, 1.0);
  if (scan.worst_ratio > 1.0 + kDivergenceTolerance || c < kMinContraction) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "no contraction: worst ratio dist^2_{k+1}/dist^2_k = %.17g "
                  "at step %d",
                  scan.worst_ratio, scan.worst_index);
    throw Error(ErrorCode::kNoContraction, buf);
  }
  return c;
}

}  // namespace wsc
