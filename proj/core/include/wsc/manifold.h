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

// Constant-curvature Riemannian manifolds in ambient coordinates.
//
// Four geometries are supported:
//   * Euclidean R^n,
//   * R^n with a constant SPD metric <u, v>_A = u^T A v (flat, curvature 0),
//   * the unit sphere S^n stored in R^{n+1} (curvature +1),
//   * the hyperboloid model of H^n stored in R^{n+1} with the Minkowski form
//     <u, v>_L = u_0 v_0 + ... + u_{n-1} v_{n-1} - u_n v_n (curvature -1).
//
// Points and tangent vectors validate their invariants on construction, so any
// Point or Tangent that exists is on the manifold to within kPointTolerance.

#ifndef WSC_MANIFOLD_H_
#define WSC_MANIFOLD_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace wsc {

enum class ManifoldKind { kEuclidean, kFlatMetric, kSphere, kHyperboloid };

std::string_view KindName(ManifoldKind kind);
ManifoldKind KindFromName(std::string_view name);  // throws Error(kConfig)

inline constexpr double kPointTolerance = 1e-10;
// Below this tangent norm exp/log switch to second-order Taylor forms.
inline constexpr double kSmallVector = 1e-8;
// log on the sphere is refused once dist(x, y) >= pi - kAntipodalGuard.
inline constexpr double kAntipodalGuard = 1e-8;

// Sectional-curvature bounds.
struct CurvatureProfile {
  double k_min = 0.0;
  double k_max = 0.0;
};

class Manifold {
 public:
  static Manifold Euclidean(int dim);
  // Throws Error(kInvalidArgument) unless `metric` is symmetric (1e-12
  // relative) and positive definite.
  static Manifold FlatMetric(const Eigen::MatrixXd& metric);
  static Manifold Sphere(int dim);
  static Manifold Hyperboloid(int dim);

  ManifoldKind kind() const { return kind_; }
  // Intrinsic dimension.
  int dim() const { return dim_; }
  // Length of coordinate vectors.
  int ambient_dim() const;
  CurvatureProfile curvature() const;

  bool is_flat() const {
    return kind_ == ManifoldKind::kEuclidean ||
           kind_ == ManifoldKind::kFlatMetric;
  }

  // Flat-metric only; identity for the other kinds is not materialized.
  const Eigen::MatrixXd& metric() const;
  const Eigen::MatrixXd& metric_inverse() const;
  double metric_lambda_min() const;
  double metric_lambda_max() const;

  // Solves A y = w with the cached Cholesky factor (flat metric), identity
  // otherwise.
  Eigen::VectorXd ApplyMetricInverse(const Eigen::VectorXd& w) const;

  friend bool operator==(const Manifold& a, const Manifold& b);
  friend bool operator!=(const Manifold& a, const Manifold& b) {
    return !(a == b);
  }

 private:
  struct FlatData;

  Manifold(ManifoldKind kind, int dim) : kind_(kind), dim_(dim) {}

  ManifoldKind kind_;
  int dim_;
  std::shared_ptr<const FlatData> flat_;
};

class Point {
 public:
  // Throws Error(kInvalidPoint) if coords violate the manifold invariants.
  Point(Manifold manifold, Eigen::VectorXd coords);

  const Manifold& manifold() const { return manifold_; }
  const Eigen::VectorXd& coords() const { return coords_; }

 private:
  Manifold manifold_;
  Eigen::VectorXd coords_;
};

class Tangent {
 public:
  // Throws Error(kInvalidPoint) if coords are not tangent at `base`.
  Tangent(Point base, Eigen::VectorXd coords);

  static Tangent Zero(const Point& base);

  const Point& base() const { return base_; }
  const Manifold& manifold() const { return base_.manifold(); }
  const Eigen::VectorXd& coords() const { return coords_; }

  Tangent operator-() const;
  Tangent operator*(double s) const;
  friend Tangent operator*(double s, const Tangent& v) { return v * s; }
  // Both operands must share a base point.
  Tangent operator+(const Tangent& other) const;
  Tangent operator-(const Tangent& other) const;

 private:
  Point base_;
  Eigen::VectorXd coords_;
};

// True if the two points are on the same manifold and their coordinates agree
// to 1e-12 (relative to the coordinate magnitude).
bool SameBase(const Point& x, const Point& y);

// Geodesic ball E around the minimizer. For k_max > 0 the radius must stay
// below pi / (4 sqrt(k_max)), the domain on which the converse bound holds.
class Region {
 public:
  // Throws Error(kDomain) for a radius outside the admissible range.
  Region(Point center, double radius);

  const Point& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Point center_;
  double radius_;
};

// Largest admissible certified-region radius for the given upper curvature
// bound, or +inf when k_max <= 0.
double MaxRegionRadius(double k_max);

// Metric inner product on T_x M. Throws kBaseMismatch.
double Inner(const Point& x, const Tangent& u, const Tangent& v);
double Norm(const Tangent& v);

Point Exp(const Point& x, const Tangent& v);
// Throws kUndefinedLog for (near-)antipodal sphere points.
Tangent Log(const Point& x, const Point& y);
double Dist(const Point& x, const Point& y);
// Parallel transport of v (based at x) along the minimizing geodesic to y.
Tangent Transport(const Point& x, const Point& y, const Tangent& v);

// Metric-orthogonal projection of an ambient vector onto T_x M.
Tangent ProjectTangent(const Point& x, const Eigen::VectorXd& w);

// Converts the ambient (Euclidean) differential of f at x into the
// Riemannian gradient.
Tangent GradientFromDifferential(const Point& x, const Eigen::VectorXd& egrad);

// Columns form a metric-orthonormal basis of T_x M (ambient_dim x dim).
Eigen::MatrixXd TangentBasis(const Point& x);

// Uniform direction, radius R * u^(1/dim), pushed through exp at the center.
Point SamplePoint(const Region& region, std::mt19937_64& rng);

// As SamplePoint, but u is drawn from [stratum, stratum + 1) / n_strata so
// that n_strata calls cover every radius band of the ball.
Point SampleStratified(const Region& region, int stratum, int n_strata,
                       std::mt19937_64& rng);

// Random tangent vector at x with norm uniform in [0, max_norm].
Tangent SampleTangent(const Point& x, double max_norm, std::mt19937_64& rng);

}  // namespace wsc

#endif  // WSC_MANIFOLD_H_
