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

#include "wsc/objectives.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsc/error.h"
#include "wsc/serialization.h"

namespace wsc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

void RequireSymmetric(const MatrixXd& m, const std::string& name) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                name + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, name + " has non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidArgument, name + " is not symmetric");
  }
}

// Extreme eigenvalues of Q relative to the metric of a flat manifold, i.e. of
// A^{-1/2} Q A^{-1/2}.
std::pair<double, double> RelativeSpectrum(const Manifold& m,
                                           const MatrixXd& q) {
  VectorXd evals;
  if (m.kind() == ManifoldKind::kFlatMetric) {
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> ges(
        q, m.metric(), Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    evals = ges.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(q, Eigen::EigenvaluesOnly);
    evals = es.eigenvalues();
  }
  return {evals.minCoeff(), evals.maxCoeff()};
}

ObjectiveMetadata QuadraticMetadata(const Manifold& m, const MatrixXd& q,
                                    const VectorXd& xstar) {
  if (!m.is_flat()) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadratic objectives need a euclidean or flat_metric manifold");
  }
  RequireSymmetric(q, "Q");
  if (q.rows() != m.dim() || xstar.size() != m.dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "Q and the minimizer must match the manifold dimension");
  }
  const auto [lo, hi] = RelativeSpectrum(m, q);
  const double tol = 1e-12 * std::max(1.0, std::abs(hi));
  if (lo < -tol) {
    throw Error(ErrorCode::kInvalidArgument,
                "Q must be positive semidefinite");
  }
  ObjectiveMetadata meta{Point(m, xstar), std::max(0.0, hi), std::nullopt,
                         std::nullopt};
  if (lo > tol) {
    meta.analytic_a = 1.0;
    meta.analytic_mu = lo;
  }
  return meta;
}

std::string QuadraticId(const Manifold& m) {
  return m.kind() == ManifoldKind::kFlatMetric ? "quad_flat_metric"
                                               : "quad_euclidean";
}

VectorXd SortedSpectrum(const MatrixXd& m) {
  RequireSymmetric(m, "M");
  if (m.rows() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "M must be at least 2x2 for a sphere objective");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (m + m.transpose()),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

double TopGap(const MatrixXd& m) {
  const VectorXd evals = SortedSpectrum(m);
  const Eigen::Index n = evals.size();
  const double gap = evals(n - 1) - evals(n - 2);
  if (gap < 1e-6) {
    throw Error(ErrorCode::kInvalidArgument,
                "M needs a simple largest eigenvalue (spectral gap >= 1e-6)");
  }
  return gap;
}

ObjectiveMetadata RayleighMetadata(const MatrixXd& m) {
  TopGap(m);
  const MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym);
  const Eigen::Index n = sym.rows();
  const VectorXd& evals = es.eigenvalues();
  VectorXd top = es.eigenvectors().col(n - 1).normalized();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(top(i)) > 1e-12) {
      if (top(i) < 0.0) top = -top;
      break;
    }
  }
  const Manifold sphere = Manifold::Sphere(static_cast<int>(n - 1));
  return ObjectiveMetadata{Point(sphere, top), evals(n - 1) - evals(0),
                           std::nullopt, std::nullopt};
}

}  // namespace

double Objective::Value(const Point& x) const {
  if (x.manifold() != manifold_) {
    throw Error(ErrorCode::kManifoldMismatch,
                "point is not on the manifold of objective " + id_);
  }
  return DoValue(x);
}

Tangent Objective::Gradient(const Point& x) const {
  if (x.manifold() != manifold_) {
    throw Error(ErrorCode::kManifoldMismatch,
                "point is not on the manifold of objective " + id_);
  }
  return DoGradient(x);
}

// -- QuadraticObjective ------------------------------------------------------

QuadraticObjective::QuadraticObjective(Manifold manifold, MatrixXd q,
                                       VectorXd minimizer)
    : Objective(QuadraticId(manifold), manifold,
                QuadraticMetadata(manifold, q, minimizer)),
      q_(0.5 * (q + q.transpose())),
      xstar_(std::move(minimizer)) {}

VectorXd QuadraticObjective::EuclideanGradient(const VectorXd& x) const {
  return q_ * (x - xstar_);
}

double QuadraticObjective::DoValue(const Point& x) const {
  const VectorXd d = x.coords() - xstar_;
  return 0.5 * d.dot(q_ * d);
}

Tangent QuadraticObjective::DoGradient(const Point& x) const {
  return GradientFromDifferential(x, EuclideanGradient(x.coords()));
}

nlohmann::json QuadraticObjective::Params() const {
  return {{"Q", MatrixToJson(q_)}, {"minimizer", VectorToJson(xstar_)}};
}

// -- RayleighSphereObjective -------------------------------------------------

RayleighSphereObjective::RayleighSphereObjective(MatrixXd m)
    : Objective("rayleigh_sphere", Manifold::Sphere(std::max<int>(1, m.rows() - 1)),
                RayleighMetadata(m)),
      m_(0.5 * (m + m.transpose())),
      gap_(TopGap(m)) {}

double RayleighSphereObjective::DoValue(const Point& x) const {
  return -0.5 * x.coords().dot(m_ * x.coords());
}

Tangent RayleighSphereObjective::DoGradient(const Point& x) const {
  const VectorXd mx = m_ * x.coords();
  return Tangent(x, -(mx - x.coords().dot(mx) * x.coords()));
}

nlohmann::json RayleighSphereObjective::Params() const {
  return {{"M", MatrixToJson(m_)}};
}

// -- SqDistHyperboloidObjective ----------------------------------------------

namespace {

ObjectiveMetadata SqDistMetadata(const Point& target) {
  if (target.manifold().kind() != ManifoldKind::kHyperboloid) {
    throw Error(ErrorCode::kInvalidArgument,
                "sqdist_hyperboloid needs a hyperboloid target point");
  }
  return ObjectiveMetadata{target, 1.0, 1.0, 1.0};
}

}  // namespace

SqDistHyperboloidObjective::SqDistHyperboloidObjective(Point target)
    : Objective("sqdist_hyperboloid", target.manifold(),
                SqDistMetadata(target)) {}

double SqDistHyperboloidObjective::DoValue(const Point& x) const {
  const double d = Dist(x, minimizer());
  return 0.5 * d * d;
}

Tangent SqDistHyperboloidObjective::DoGradient(const Point& x) const {
  return -Log(x, minimizer());
}

nlohmann::json SqDistHyperboloidObjective::Params() const {
  return {{"target", VectorToJson(minimizer().coords())}};
}

// -- PerturbedQuadraticObjective ---------------------------------------------

namespace {

ObjectiveMetadata PerturbedMetadata(const MatrixXd& q, const VectorXd& xstar,
                                    double epsilon, double omega) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon) || !std::isfinite(omega)) {
    throw Error(ErrorCode::kInvalidArgument,
                "perturbed_quad needs finite epsilon >= 0 and finite omega");
  }
  ObjectiveMetadata meta =
      QuadraticMetadata(Manifold::Euclidean(static_cast<int>(q.rows())), q,
                        xstar);
  meta.gamma += 2.0 * epsilon * omega * omega;
  meta.analytic_a.reset();
  meta.analytic_mu.reset();
  return meta;
}

}  // namespace

PerturbedQuadraticObjective::PerturbedQuadraticObjective(MatrixXd q,
                                                         VectorXd minimizer,
                                                         double epsilon,
                                                         double omega)
    : Objective("perturbed_quad",
                Manifold::Euclidean(static_cast<int>(q.rows())),
                PerturbedMetadata(q, minimizer, epsilon, omega)),
      q_(0.5 * (q + q.transpose())),
      xstar_(std::move(minimizer)),
      epsilon_(epsilon),
      omega_(omega) {}

double PerturbedQuadraticObjective::DefaultEpsilon(const MatrixXd& q) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (q + q.transpose()),
                                             Eigen::EigenvaluesOnly);
  return 0.05 * es.eigenvalues().minCoeff();
}

VectorXd PerturbedQuadraticObjective::EuclideanGradient(
    const VectorXd& x) const {
  const VectorXd d = x - xstar_;
  VectorXd g = q_ * d;
  g(0) += epsilon_ * omega_ * std::sin(2.0 * omega_ * d(0));
  return g;
}

double PerturbedQuadraticObjective::DoValue(const Point& x) const {
  const VectorXd d = x.coords() - xstar_;
  const double s = std::sin(omega_ * d(0));
  return 0.5 * d.dot(q_ * d) + epsilon_ * s * s;
}

Tangent PerturbedQuadraticObjective::DoGradient(const Point& x) const {
  return Tangent(x, EuclideanGradient(x.coords()));
}

nlohmann::json PerturbedQuadraticObjective::Params() const {
  return {{"Q", MatrixToJson(q_)},
          {"minimizer", VectorToJson(xstar_)},
          {"epsilon", epsilon_},
          {"omega", omega_}};
}

// -- Oracles -----------------------------------------------------------------

Tangent FdGradientOracle(const Objective& obj, const Point& x, double h) {
  if (!(h >= 1e-8 && h <= 1e-3)) {
    throw Error(ErrorCode::kInvalidArgument,
                "finite-difference step must lie in [1e-8, 1e-3]");
  }
  const MatrixXd basis = TangentBasis(x);
  VectorXd grad = VectorXd::Zero(basis.rows());
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    const Tangent e(x, basis.col(i));
    const double fp = obj.Value(Exp(x, e * h));
    const double fm = obj.Value(Exp(x, e * -h));
    grad += ((fp - fm) / (2.0 * h)) * basis.col(i);
  }
  return ProjectTangent(x, grad);
}

double EstimateGamma(const Objective& obj, const Region& region, int n_pairs,
                     std::mt19937_64& rng) {
  if (n_pairs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_pairs must be >= 1");
  }
  if (region.radius() < 1e-6) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot estimate gamma on an empty region");
  }
  constexpr double kMinSeparation = 1e-6;
  constexpr int kMaxAttempts = 1000;
  double best = 0.0;
  for (int pair = 0; pair < n_pairs; ++pair) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const Point x = SamplePoint(region, rng);
      const Point y = SamplePoint(region, rng);
      const double d = Dist(x, y);
      if (d < kMinSeparation) continue;
      const Tangent diff =
          obj.Gradient(x) - Transport(y, x, obj.Gradient(y));
      best = std::max(best, Norm(diff) / d);
      break;
    }
  }
  return best * kGammaSafetyFactor;
}

// -- Factory -----------------------------------------------------------------

namespace {

const nlohmann::json& Field(const nlohmann::json& params,
                            const std::string& name) {
  if (!params.is_object() || !params.contains(name)) {
    throw Error(ErrorCode::kConfig,
                "objective.params." + name + ": required field is missing");
  }
  return params.at(name);
}

template <typename F>
auto WithField(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string what = e.what();
    // Errors that already name a config field pass through unchanged.
    if (what.rfind("objective.", 0) == 0 || what.rfind("manifold.", 0) == 0) {
      throw;
    }
    throw Error(ErrorCode::kConfig, "objective.params." + name + ": " + what);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, "objective.params." + name + ": " + e.what());
  }
}

void RequireKind(const std::string& id, const Manifold& m, ManifoldKind kind) {
  if (m.kind() != kind) {
    throw Error(ErrorCode::kConfig,
                "manifold.kind: objective '" + id + "' requires a " +
                    std::string(KindName(kind)) + " manifold, got " +
                    std::string(KindName(m.kind())));
  }
}

VectorXd MinimizerOrZero(const nlohmann::json& params, int dim) {
  if (params.is_object() && params.contains("minimizer")) {
    return WithField("minimizer",
                     [&] { return VectorFromJson(params.at("minimizer")); });
  }
  return VectorXd::Zero(dim);
}

}  // namespace

std::shared_ptr<const Objective> MakeObjective(const std::string& id,
                                               const Manifold& manifold,
                                               const nlohmann::json& params) {
  if (id == "quad_euclidean" || id == "quad_flat_metric") {
    RequireKind(id, manifold,
                id == "quad_euclidean" ? ManifoldKind::kEuclidean
                                       : ManifoldKind::kFlatMetric);
    const MatrixXd q =
        WithField("Q", [&] { return MatrixFromJson(Field(params, "Q")); });
    const VectorXd xstar = MinimizerOrZero(params, manifold.dim());
    return WithField("Q", [&] {
      return std::make_shared<const QuadraticObjective>(manifold, q, xstar);
    });
  }
  if (id == "rayleigh_sphere") {
    RequireKind(id, manifold, ManifoldKind::kSphere);
    const MatrixXd m =
        WithField("M", [&] { return MatrixFromJson(Field(params, "M")); });
    if (m.rows() != manifold.ambient_dim()) {
      throw Error(ErrorCode::kConfig,
                  "objective.params.M: must be (dim+1)x(dim+1) for the sphere");
    }
    return WithField(
        "M", [&] { return std::make_shared<const RayleighSphereObjective>(m); });
  }
  if (id == "sqdist_hyperboloid") {
    RequireKind(id, manifold, ManifoldKind::kHyperboloid);
    VectorXd target = VectorXd::Zero(manifold.ambient_dim());
    target(manifold.dim()) = 1.0;
    if (params.is_object() && params.contains("target")) {
      target = WithField("target",
                         [&] { return VectorFromJson(params.at("target")); });
    }
    return WithField("target", [&] {
      return std::make_shared<const SqDistHyperboloidObjective>(
          Point(manifold, target));
    });
  }
  if (id == "perturbed_quad") {
    RequireKind(id, manifold, ManifoldKind::kEuclidean);
    const MatrixXd q =
        WithField("Q", [&] { return MatrixFromJson(Field(params, "Q")); });
    if (q.rows() != manifold.dim()) {
      throw Error(ErrorCode::kConfig,
                  "objective.params.Q: dimension does not match the manifold");
    }
    const VectorXd xstar = MinimizerOrZero(params, manifold.dim());
    double eps = PerturbedQuadraticObjective::DefaultEpsilon(q);
    double omega = PerturbedQuadraticObjective::kDefaultOmega;
    if (params.contains("epsilon")) {
      eps = WithField("epsilon", [&] { return params.at("epsilon").get<double>(); });
    }
    if (params.contains("omega")) {
      omega = WithField("omega", [&] { return params.at("omega").get<double>(); });
    }
    return WithField("Q", [&] {
      return std::make_shared<const PerturbedQuadraticObjective>(q, xstar, eps,
                                                                 omega);
    });
  }
  throw Error(ErrorCode::kConfig,
              "objective.id: unknown objective '" + id +
                  "' (expected quad_euclidean, quad_flat_metric, "
                  "rayleigh_sphere, sqdist_hyperboloid or perturbed_quad)");
}

}  // namespace wsc
