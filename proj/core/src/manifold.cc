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

#include "wsc/manifold.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wsc/error.h"

namespace wsc {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double Minkowski(const VectorXd& u, const VectorXd& v) {
  const Eigen::Index n = u.size() - 1;
  return u.head(n).dot(v.head(n)) - u(n) * v(n);
}

double Scale(const VectorXd& v) { return std::max(1.0, v.norm()); }

// Rescales an ambient vector back onto the sphere / upper hyperboloid sheet.
VectorXd Retract(const Manifold& m, VectorXd y) {
  switch (m.kind()) {
    case ManifoldKind::kSphere:
      return y / y.norm();
    case ManifoldKind::kHyperboloid: {
      const double q = -Minkowski(y, y);
      y /= std::sqrt(q);
      const Eigen::Index n = y.size() - 1;
      // Re-derive the time coordinate from the spatial part.
      y(n) = std::sqrt(1.0 + y.head(n).squaredNorm());
      return y;
    }
    default:
      return y;
  }
}

VectorXd ProjectAmbient(const Point& x, const VectorXd& w) {
  switch (x.manifold().kind()) {
    case ManifoldKind::kSphere:
      return w - x.coords().dot(w) * x.coords();
    case ManifoldKind::kHyperboloid:
      return w + Minkowski(x.coords(), w) * x.coords();
    default:
      return w;
  }
}

void RequireSameManifold(const Point& x, const Point& y) {
  if (x.manifold() != y.manifold()) {
    throw Error(ErrorCode::kManifoldMismatch,
                "points live on different manifolds (" +
                    std::string(KindName(x.manifold().kind())) + " vs " +
                    std::string(KindName(y.manifold().kind())) + ")");
  }
}

void RequireBase(const Point& x, const Tangent& v) {
  if (!SameBase(x, v.base())) {
    throw Error(ErrorCode::kBaseMismatch,
                "tangent vector is not based at the given point");
  }
}

// 2 atan2(|x - y|, |x + y|): accurate for both tiny and near-pi angles.
double SphereDist(const VectorXd& x, const VectorXd& y) {
  return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
}

// 2 asinh(|y - x|_L / 2); the chord between two points of the upper sheet is
// spacelike, so the Minkowski norm is real.
double HyperboloidDist(const VectorXd& x, const VectorXd& y) {
  const VectorXd d = y - x;
  const double chord2 = std::max(0.0, Minkowski(d, d));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

}  // namespace

std::string_view KindName(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::kEuclidean: return "euclidean";
    case ManifoldKind::kFlatMetric: return "flat_metric";
    case ManifoldKind::kSphere: return "sphere";
    case ManifoldKind::kHyperboloid: return "hyperboloid";
  }
  return "unknown";
}

ManifoldKind KindFromName(std::string_view name) {
  if (name == "euclidean") return ManifoldKind::kEuclidean;
  if (name == "flat_metric") return ManifoldKind::kFlatMetric;
  if (name == "sphere") return ManifoldKind::kSphere;
  if (name == "hyperboloid") return ManifoldKind::kHyperboloid;
  throw Error(ErrorCode::kConfig,
              "manifold.kind: unknown manifold kind '" + std::string(name) +
                  "' (expected euclidean, flat_metric, sphere or hyperboloid)");
}

struct Manifold::FlatData {
  MatrixXd metric;
  MatrixXd inverse;
  Eigen::LLT<MatrixXd> llt;
  double lambda_min;
  double lambda_max;
};

namespace {

void RequirePositiveDim(int dim) {
  if (dim < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "manifold dimension must be positive, got " +
                    std::to_string(dim));
  }
}

}  // namespace

Manifold Manifold::Euclidean(int dim) {
  RequirePositiveDim(dim);
  return Manifold(ManifoldKind::kEuclidean, dim);
}

Manifold Manifold::Sphere(int dim) {
  RequirePositiveDim(dim);
  return Manifold(ManifoldKind::kSphere, dim);
}

Manifold Manifold::Hyperboloid(int dim) {
  RequirePositiveDim(dim);
  return Manifold(ManifoldKind::kHyperboloid, dim);
}

Manifold Manifold::FlatMetric(const MatrixXd& metric) {
  if (metric.rows() != metric.cols() || metric.rows() < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "metric_matrix must be a non-empty square matrix");
  }
  if (!metric.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                "metric_matrix has non-finite entries");
  }
  const double asym = (metric - metric.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, metric.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::kInvalidArgument, "metric_matrix is not symmetric");
  }
  const MatrixXd sym = 0.5 * (metric + metric.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "metric_matrix is not positive definite");
  }
  auto data = std::make_shared<FlatData>();
  data->metric = sym;
  data->llt.compute(sym);
  data->inverse = data->llt.solve(MatrixXd::Identity(sym.rows(), sym.cols()));
  data->lambda_min = eig.eigenvalues().minCoeff();
  data->lambda_max = eig.eigenvalues().maxCoeff();

  Manifold m(ManifoldKind::kFlatMetric, static_cast<int>(sym.rows()));
  m.flat_ = std::move(data);
  return m;
}

int Manifold::ambient_dim() const {
  return (kind_ == ManifoldKind::kSphere ||
          kind_ == ManifoldKind::kHyperboloid)
             ? dim_ + 1
             : dim_;
}

CurvatureProfile Manifold::curvature() const {
  switch (kind_) {
    case ManifoldKind::kSphere:
      // S^1 is flat, but the constants only ever see two-dimensional sections
      // of S^n with n >= 2; keep the unit-sphere bound for uniformity.
      return {1.0, 1.0};
    case ManifoldKind::kHyperboloid:
      return {-1.0, -1.0};
    default:
      return {0.0, 0.0};
  }
}

const MatrixXd& Manifold::metric() const {
  if (!flat_) {
    throw Error(ErrorCode::kInvalidArgument,
                "metric matrix is only stored for flat_metric manifolds");
  }
  return flat_->metric;
}

const MatrixXd& Manifold::metric_inverse() const {
  if (!flat_) {
    throw Error(ErrorCode::kInvalidArgument,
                "metric matrix is only stored for flat_metric manifolds");
  }
  return flat_->inverse;
}

double Manifold::metric_lambda_min() const {
  return flat_ ? flat_->lambda_min : 1.0;
}

double Manifold::metric_lambda_max() const {
  return flat_ ? flat_->lambda_max : 1.0;
}

VectorXd Manifold::ApplyMetricInverse(const VectorXd& w) const {
  if (!flat_) return w;
  return flat_->llt.solve(w);
}

bool operator==(const Manifold& a, const Manifold& b) {
  if (a.kind_ != b.kind_ || a.dim_ != b.dim_) return false;
  if (a.kind_ != ManifoldKind::kFlatMetric) return true;
  return a.flat_ == b.flat_ || a.flat_->metric == b.flat_->metric;
}

Point::Point(Manifold manifold, VectorXd coords)
    : manifold_(std::move(manifold)), coords_(std::move(coords)) {
  if (coords_.size() != manifold_.ambient_dim()) {
    throw Error(ErrorCode::kInvalidPoint,
                "point has " + std::to_string(coords_.size()) +
                    " coordinates, manifold expects " +
                    std::to_string(manifold_.ambient_dim()));
  }
  if (!coords_.allFinite()) {
    throw Error(ErrorCode::kInvalidPoint, "point has non-finite coordinates");
  }
  switch (manifold_.kind()) {
    case ManifoldKind::kSphere:
      if (std::abs(coords_.norm() - 1.0) > kPointTolerance) {
        throw Error(ErrorCode::kInvalidPoint,
                    "sphere point does not have unit norm");
      }
      break;
    case ManifoldKind::kHyperboloid: {
      const double q = Minkowski(coords_, coords_);
      if (std::abs(q + 1.0) > kPointTolerance * coords_.squaredNorm() ||
          coords_(coords_.size() - 1) <= 0.0) {
        throw Error(ErrorCode::kInvalidPoint,
                    "hyperboloid point is not on the upper sheet <x,x>_L = -1");
      }
      break;
    }
    default:
      break;
  }
}

Tangent::Tangent(Point base, VectorXd coords)
    : base_(std::move(base)), coords_(std::move(coords)) {
  if (coords_.size() != base_.manifold().ambient_dim()) {
    throw Error(ErrorCode::kInvalidPoint,
                "tangent vector has the wrong number of coordinates");
  }
  if (!coords_.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "tangent vector is not finite");
  }
  const VectorXd& x = base_.coords();
  double normal = 0.0;
  switch (base_.manifold().kind()) {
    case ManifoldKind::kSphere: normal = x.dot(coords_); break;
    case ManifoldKind::kHyperboloid: normal = Minkowski(x, coords_); break;
    default: return;
  }
  if (std::abs(normal) > kPointTolerance * Scale(x) * Scale(coords_)) {
    throw Error(ErrorCode::kInvalidPoint,
                "vector is not tangent at its base point");
  }
}

Tangent Tangent::Zero(const Point& base) {
  return Tangent(base, VectorXd::Zero(base.manifold().ambient_dim()));
}

Tangent Tangent::operator-() const { return Tangent(base_, -coords_); }

Tangent Tangent::operator*(double s) const {
  return Tangent(base_, s * coords_);
}

Tangent Tangent::operator+(const Tangent& other) const {
  RequireBase(base_, other);
  return Tangent(base_, coords_ + other.coords_);
}

Tangent Tangent::operator-(const Tangent& other) const {
  RequireBase(base_, other);
  return Tangent(base_, coords_ - other.coords_);
}

bool SameBase(const Point& x, const Point& y) {
  if (x.manifold() != y.manifold()) return false;
  return (x.coords() - y.coords()).cwiseAbs().maxCoeff() <=
         1e-12 * std::max(1.0, x.coords().cwiseAbs().maxCoeff());
}

double MaxRegionRadius(double k_max) {
  if (k_max <= 0.0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / (4.0 * std::sqrt(k_max)) - 1e-9;
}

Region::Region(Point center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (!std::isfinite(radius) || radius < 0.0) {
    throw Error(ErrorCode::kDomain,
                "region radius must be finite and nonnegative");
  }
  const double k_max = center_.manifold().curvature().k_max;
  if (radius >= MaxRegionRadius(k_max)) {
    throw Error(ErrorCode::kDomain,
                "region radius " + std::to_string(radius) +
                    " violates the positive-curvature restriction radius < "
                    "pi/(4 sqrt(k_max)) = " +
                    std::to_string(MaxRegionRadius(k_max) + 1e-9));
  }
}

double Inner(const Point& x, const Tangent& u, const Tangent& v) {
  RequireBase(x, u);
  RequireBase(x, v);
  switch (x.manifold().kind()) {
    case ManifoldKind::kFlatMetric:
      return u.coords().dot(x.manifold().metric() * v.coords());
    case ManifoldKind::kHyperboloid:
      return Minkowski(u.coords(), v.coords());
    default:
      return u.coords().dot(v.coords());
  }
}

double Norm(const Tangent& v) {
  return std::sqrt(std::max(0.0, Inner(v.base(), v, v)));
}

Point Exp(const Point& x, const Tangent& v) {
  RequireBase(x, v);
  const Manifold& m = x.manifold();
  if (m.is_flat()) return Point(m, x.coords() + v.coords());

  const double t = Norm(v);
  const double t2 = t * t;
  double c, s_over_t;
  if (m.kind() == ManifoldKind::kSphere) {
    if (t < kSmallVector) {
      c = 1.0 - 0.5 * t2;
      s_over_t = 1.0 - t2 / 6.0;
    } else {
      c = std::cos(t);
      s_over_t = std::sin(t) / t;
    }
  } else {
    if (t < kSmallVector) {
      c = 1.0 + 0.5 * t2;
      s_over_t = 1.0 + t2 / 6.0;
    } else {
      c = std::cosh(t);
      s_over_t = std::sinh(t) / t;
    }
  }
  VectorXd y = c * x.coords() + s_over_t * v.coords();
  if (!y.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "exponential map overflowed");
  }
  return Point(m, Retract(m, std::move(y)));
}

double Dist(const Point& x, const Point& y) {
  RequireSameManifold(x, y);
  const VectorXd& a = x.coords();
  const VectorXd& b = y.coords();
  switch (x.manifold().kind()) {
    case ManifoldKind::kEuclidean:
      return (b - a).norm();
    case ManifoldKind::kFlatMetric: {
      const VectorXd d = b - a;
      return std::sqrt(std::max(0.0, d.dot(x.manifold().metric() * d)));
    }
    case ManifoldKind::kSphere:
      return SphereDist(a, b);
    case ManifoldKind::kHyperboloid:
      return HyperboloidDist(a, b);
  }
  return 0.0;
}

Tangent Log(const Point& x, const Point& y) {
  RequireSameManifold(x, y);
  const Manifold& m = x.manifold();
  if (m.is_flat()) return Tangent(x, y.coords() - x.coords());

  const double d = Dist(x, y);
  if (m.kind() == ManifoldKind::kSphere &&
      d >= std::numbers::pi - kAntipodalGuard) {
    throw Error(ErrorCode::kUndefinedLog,
                "logarithm undefined between (near-)antipodal sphere points");
  }
  // Component of y orthogonal to x; its norm is sin(d) or sinh(d).
  const VectorXd u = ProjectAmbient(x, y.coords());
  double factor;
  if (d < kSmallVector) {
    factor = m.kind() == ManifoldKind::kSphere ? 1.0 + d * d / 6.0
                                               : 1.0 - d * d / 6.0;
  } else {
    const double s =
        m.kind() == ManifoldKind::kSphere ? std::sin(d) : std::sinh(d);
    factor = d / s;
  }
  return Tangent(x, ProjectAmbient(x, factor * u));
}

Tangent Transport(const Point& x, const Point& y, const Tangent& v) {
  RequireBase(x, v);
  RequireSameManifold(x, y);
  const Manifold& m = x.manifold();
  if (m.is_flat()) return Tangent(y, v.coords());

  const VectorXd& a = x.coords();
  const VectorXd& b = y.coords();
  // Closed forms along the connecting great circle / hyperbola:
  //   sphere:      v - <y,v>   / (1 + <x,y>)   (x + y)
  //   hyperboloid: v + <y,v>_L / (1 - <x,y>_L) (x + y)
  // Both are regular at y = x, so no small-distance branch is required.
  VectorXd w;
  if (m.kind() == ManifoldKind::kSphere) {
    if (SphereDist(a, b) >= std::numbers::pi - kAntipodalGuard) {
      throw Error(ErrorCode::kUndefinedLog,
                  "transport undefined between (near-)antipodal points");
    }
    w = v.coords() - (b.dot(v.coords()) / (1.0 + a.dot(b))) * (a + b);
  } else {
    w = v.coords() +
        (Minkowski(b, v.coords()) / (1.0 - Minkowski(a, b))) * (a + b);
  }
  return Tangent(y, ProjectAmbient(y, w));
}

Tangent ProjectTangent(const Point& x, const VectorXd& w) {
  if (w.size() != x.manifold().ambient_dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "ambient vector has the wrong dimension");
  }
  return Tangent(x, ProjectAmbient(x, w));
}

Tangent GradientFromDifferential(const Point& x, const VectorXd& egrad) {
  const Manifold& m = x.manifold();
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return Tangent(x, egrad);
    case ManifoldKind::kFlatMetric:
      return Tangent(x, m.ApplyMetricInverse(egrad));
    case ManifoldKind::kSphere:
      return ProjectTangent(x, egrad);
    case ManifoldKind::kHyperboloid: {
      // Raise the index with the Minkowski form, then project.
      VectorXd g = egrad;
      g(g.size() - 1) = -g(g.size() - 1);
      return ProjectTangent(x, g);
    }
  }
  return Tangent::Zero(x);
}

MatrixXd TangentBasis(const Point& x) {
  const Manifold& m = x.manifold();
  const int n = m.dim();
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return MatrixXd::Identity(n, n);
    case ManifoldKind::kFlatMetric: {
      // b_i = L^{-T} e_i with A = L L^T gives b_i^T A b_j = delta_ij.
      Eigen::LLT<MatrixXd> llt(m.metric());
      MatrixXd lt = llt.matrixU();
      return lt.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(n, n));
    }
    case ManifoldKind::kSphere: {
      // The trailing Householder columns of x span its orthogonal complement.
      Eigen::HouseholderQR<MatrixXd> qr(x.coords());
      MatrixXd q = qr.householderQ() * MatrixXd::Identity(n + 1, n + 1);
      return q.rightCols(n);
    }
    case ManifoldKind::kHyperboloid: {
      // Transport the standard spatial frame from the origin (0, ..., 0, 1).
      VectorXd origin = VectorXd::Zero(n + 1);
      origin(n) = 1.0;
      const VectorXd& b = x.coords();
      const double denom = 1.0 + b(n);
      MatrixXd basis(n + 1, n);
      for (int i = 0; i < n; ++i) {
        VectorXd e = VectorXd::Zero(n + 1);
        e(i) = 1.0;
        basis.col(i) = e + (b(i) / denom) * (origin + b);
      }
      return basis;
    }
  }
  return MatrixXd();
}

namespace {

VectorXd RandomUnitDirection(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorXd z(dim);
  double norm = 0.0;
  while (norm < 1e-300) {
    for (int i = 0; i < dim; ++i) z(i) = normal(rng);
    norm = z.norm();
  }
  return z / norm;
}

// u in (lo, hi] with 0 <= lo < hi <= 1.
Point SampleBand(const Region& region, double lo, double hi,
                 std::mt19937_64& rng) {
  const Point& center = region.center();
  const int dim = center.manifold().dim();
  const VectorXd z = RandomUnitDirection(dim, rng);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double u = hi - (hi - lo) * uniform(rng);
  const double r = region.radius() * std::pow(u, 1.0 / dim);
  if (r == 0.0) return center;
  return Exp(center, Tangent(center, r * (TangentBasis(center) * z)));
}

}  // namespace

Point SamplePoint(const Region& region, std::mt19937_64& rng) {
  return SampleBand(region, 0.0, 1.0, rng);
}

Point SampleStratified(const Region& region, int stratum, int n_strata,
                       std::mt19937_64& rng) {
  if (n_strata < 1 || stratum < 0 || stratum >= n_strata) {
    throw Error(ErrorCode::kInvalidArgument,
                "stratum must lie in [0, n_strata)");
  }
  return SampleBand(region, static_cast<double>(stratum) / n_strata,
                    static_cast<double>(stratum + 1) / n_strata, rng);
}

Tangent SampleTangent(const Point& x, double max_norm, std::mt19937_64& rng) {
  const int dim = x.manifold().dim();
  const VectorXd z = RandomUnitDirection(dim, rng);
  std::uniform_real_distribution<double> uniform(0.0, max_norm);
  return Tangent(x, uniform(rng) * (TangentBasis(x) * z));
}

}  // namespace wsc
