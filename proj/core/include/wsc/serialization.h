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

// JSON and CSV encodings for geometry values, certificates and trajectories.
//
// Manifold descriptor: {"kind": "sphere", "dim": 2}
//                      {"kind": "flat_metric", "dim": 2,
//                       "metric_matrix": [[2, 0], [0, 3]]}
// Point:   {"manifold": {...}, "coords": [...]}
// Tangent: {"manifold": {...}, "base": [...], "coords": [...]}

#ifndef WSC_SERIALIZATION_H_
#define WSC_SERIALIZATION_H_

#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "wsc/certifier.h"
#include "wsc/curvature.h"
#include "wsc/manifold.h"
#include "wsc/optimizer.h"

namespace wsc {

using Json = nlohmann::json;

Json VectorToJson(const Eigen::VectorXd& v);
Json MatrixToJson(const Eigen::MatrixXd& m);
// Throw Error(kConfig) on malformed input.
Eigen::VectorXd VectorFromJson(const Json& j);
Eigen::MatrixXd MatrixFromJson(const Json& j);

Json ManifoldToJson(const Manifold& m);
Manifold ManifoldFromJson(const Json& j);

Json PointToJson(const Point& x);
Point PointFromJson(const Json& j);
Json TangentToJson(const Tangent& v);
Tangent TangentFromJson(const Json& j);

Json TriangleCheckToJson(const TriangleCheck& t);

Json CertificateToJson(const WscCertificate& cert);
// Drops fields that legitimately differ between identical runs: the
// "generated_at" timestamp and the echoed execution settings config.workers
// and config.output, none of which may influence the result.
Json CanonicalForm(Json report);

Json TrajectoryToJson(const Trajectory& traj);
// Header: step,x0,...,x{n-1},f,grad_norm,dist_to_min,eta
std::string TrajectoryToCsv(const Trajectory& traj);

}  // namespace wsc

#endif  // WSC_SERIALIZATION_H_
