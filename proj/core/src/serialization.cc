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

#include "wsc/serialization.h"

#include <cstdio>
#include <sstream>

#include "wsc/error.h"

namespace wsc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json OptionalToJson(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json VectorToJson(const VectorXd& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

Json MatrixToJson(const MatrixXd& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    j.push_back(VectorToJson(m.row(r).transpose()));
  }
  return j;
}

VectorXd VectorFromJson(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kConfig, "expected a non-empty array of numbers");
  }
  VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(ErrorCode::kConfig,
                  "element " + std::to_string(i) + " is not a number");
    }
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

MatrixXd MatrixFromJson(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kConfig, "expected a non-empty array of rows");
  }
  const size_t rows = j.size();
  size_t cols = 0;
  MatrixXd m;
  for (size_t r = 0; r < rows; ++r) {
    const VectorXd row = VectorFromJson(j[r]);
    if (r == 0) {
      cols = static_cast<size_t>(row.size());
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (static_cast<size_t>(row.size()) != cols) {
      throw Error(ErrorCode::kConfig, "matrix rows have different lengths");
    }
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Json ManifoldToJson(const Manifold& m) {
  Json j = {{"kind", KindName(m.kind())}, {"dim", m.dim()}};
  if (m.kind() == ManifoldKind::kFlatMetric) {
    j["metric_matrix"] = MatrixToJson(m.metric());
  }
  return j;
}

Manifold ManifoldFromJson(const Json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kConfig, "manifold: expected an object");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::kConfig, "manifold.kind: required string field");
  }
  const ManifoldKind kind = KindFromName(j["kind"].get<std::string>());
  if (!j.contains("dim") || !j["dim"].is_number_integer() ||
      j["dim"].get<long long>() < 1) {
    throw Error(ErrorCode::kConfig, "manifold.dim: must be a positive integer");
  }
  const int dim = j["dim"].get<int>();
  const bool has_metric = j.contains("metric_matrix");
  if (has_metric != (kind == ManifoldKind::kFlatMetric)) {
    throw Error(ErrorCode::kConfig,
                "manifold.metric_matrix: required for flat_metric and only "
                "allowed there");
  }
  switch (kind) {
    case ManifoldKind::kEuclidean: return Manifold::Euclidean(dim);
    case ManifoldKind::kSphere: return Manifold::Sphere(dim);
    case ManifoldKind::kHyperboloid: return Manifold::Hyperboloid(dim);
    case ManifoldKind::kFlatMetric: {
      MatrixXd a;
      try {
        a = MatrixFromJson(j["metric_matrix"]);
        if (a.rows() != dim) {
          throw Error(ErrorCode::kConfig, "size does not match dim");
        }
        return Manifold::FlatMetric(a);
      } catch (const Error& e) {
        throw Error(ErrorCode::kConfig,
                    std::string("manifold.metric_matrix: ") + e.what());
      }
    }
  }
  throw Error(ErrorCode::kConfig, "manifold.kind: unsupported");
}

Json PointToJson(const Point& x) {
  return {{"manifold", ManifoldToJson(x.manifold())},
          {"coords", VectorToJson(x.coords())}};
}

Point PointFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("manifold") || !j.contains("coords")) {
    throw Error(ErrorCode::kConfig, "point: expected {manifold, coords}");
  }
  return Point(ManifoldFromJson(j["manifold"]), VectorFromJson(j["coords"]));
}

Json TangentToJson(const Tangent& v) {
  return {{"manifold", ManifoldToJson(v.manifold())},
          {"base", VectorToJson(v.base().coords())},
          {"coords", VectorToJson(v.coords())}};
}

Tangent TangentFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("manifold") || !j.contains("base") ||
      !j.contains("coords")) {
    throw Error(ErrorCode::kConfig,
                "tangent: expected {manifold, base, coords}");
  }
  const Manifold m = ManifoldFromJson(j["manifold"]);
  return Tangent(Point(m, VectorFromJson(j["base"])),
                 VectorFromJson(j["coords"]));
}

Json TriangleCheckToJson(const TriangleCheck& t) {
  return {{"a", VectorToJson(t.a.coords())},
          {"b", VectorToJson(t.b.coords())},
          {"c", VectorToJson(t.c.coords())},
          {"manifold", ManifoldToJson(t.a.manifold())},
          {"delta_used", t.delta_used},
          {"residual", t.residual},
          {"scale", t.scale}};
}

Json CertificateToJson(const WscCertificate& cert) {
  Json j;
  j["tool"] = "wsc";
  j["version"] = WSC_VERSION;
  j["objective"] = cert.objective_id;
  j["seed"] = cert.seed;
  j["region"] = {{"center", PointToJson(cert.region.center())},
                 {"radius", cert.region.radius()}};
  j["n_samples"] = cert.n_samples;
  j["eta_used"] = cert.eta_used;
  j["gamma_used"] = cert.gamma_used;
  j["gamma_source"] = cert.gamma_source;
  j["delta_bar_used"] = cert.delta_bar_used;
  j["c_obs"] = cert.c_obs;
  j["worst_ratio"] = cert.worst_ratio;
  j["a"] = OptionalToJson(cert.a);
  j["mu"] = OptionalToJson(cert.mu);
  j["a_mu_eta"] = OptionalToJson(cert.a_mu_eta);
  j["residual_min"] = cert.residual_min;
  j["residual_mean"] = cert.residual_mean;
  j["residual_min_scaled"] = cert.residual_min_scaled;
  j["tol_residual"] = cert.tol_residual;
  j["exits_region"] = cert.exits_region;
  j["verdict"] = VerdictName(cert.verdict);
  j["flags"] = cert.flags;
  j["witness"] = cert.witness ? PointToJson(*cert.witness) : Json(nullptr);
  return j;
}

Json CanonicalForm(Json report) {
  if (!report.is_object()) return report;
  report.erase("generated_at");
  if (report.contains("config") && report["config"].is_object()) {
    report["config"].erase("workers");
    report["config"].erase("output");
  }
  return report;
}

Json TrajectoryToJson(const Trajectory& traj) {
  Json steps = Json::array();
  for (const StepRecord& s : traj.steps) {
    steps.push_back({{"step", s.index},
                     {"coords", VectorToJson(s.point.coords())},
                     {"f", s.value},
                     {"grad_norm", s.gradient_norm},
                     {"dist_to_min", s.dist_to_min},
                     {"eta", s.eta_used},
                     {"outside_region", s.outside_region}});
  }
  Json j;
  j["objective"] = traj.objective_id;
  j["policy"] = {{"mode", StepModeName(traj.policy.mode)},
                 {"eta", traj.policy.eta},
                 {"a", traj.policy.a},
                 {"gamma", traj.policy.gamma},
                 {"zeta", traj.policy.zeta}};
  j["seed"] = traj.seed;
  j["manifold"] = traj.steps.empty()
                      ? Json(nullptr)
                      : ManifoldToJson(traj.steps.front().point.manifold());
  j["steps"] = std::move(steps);
  j["exits_region"] = traj.exits_region;
  j["abort_reason"] = traj.abort_reason ? Json(*traj.abort_reason) : Json(nullptr);
  return j;
}

std::string TrajectoryToCsv(const Trajectory& traj) {
  std::ostringstream out;
  const Eigen::Index n =
      traj.steps.empty() ? 0 : traj.steps.front().point.coords().size();
  out << "step";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i;
  out << ",f,grad_norm,dist_to_min,eta\n";
  for (const StepRecord& s : traj.steps) {
    out << s.index;
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << Fmt(s.point.coords()(i));
    out << ',' << Fmt(s.value) << ',' << Fmt(s.gradient_norm) << ','
        << Fmt(s.dist_to_min) << ',' << Fmt(s.eta_used) << '\n';
  }
  return out.str();
}

}  // namespace wsc
