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

// Catalog of test objectives with closed-form Riemannian gradients and a
// known global minimizer.

#ifndef WSC_OBJECTIVES_H_
#define WSC_OBJECTIVES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "wsc/manifold.h"

namespace wsc {

struct ObjectiveMetadata {
  Point minimizer;
  // Smoothness constant; see each objective for which inequality it bounds.
  double gamma;
  // Weak-strong-convexity constants when known in closed form.
  std::optional<double> analytic_a;
  std::optional<double> analytic_mu;
};

class Objective {
 public:
  virtual ~Objective() = default;

  const std::string& id() const { return id_; }
  const Manifold& manifold() const { return manifold_; }
  const ObjectiveMetadata& metadata() const { return metadata_; }
  const Point& minimizer() const { return metadata_.minimizer; }

  // Throw Error(kManifoldMismatch) for points on another manifold.
  double Value(const Point& x) const;
  Tangent Gradient(const Point& x) const;

  double MinValue() const { return Value(metadata_.minimizer); }

  // Constructor parameters as they appear under "objective.params".
  virtual nlohmann::json Params() const = 0;

 protected:
  Objective(std::string id, Manifold manifold, ObjectiveMetadata metadata)
      : id_(std::move(id)),
        manifold_(std::move(manifold)),
        metadata_(std::move(metadata)) {}

  virtual double DoValue(const Point& x) const = 0;
  virtual Tangent DoGradient(const Point& x) const = 0;

 private:
  std::string id_;
  Manifold manifold_;
  ObjectiveMetadata metadata_;
};

// f(x) = 1/2 (x - x*)^T Q (x - x*) on R^n or on R^n with a constant metric A.
//
// Euclidean: gamma = lambda_max(Q), a = 1, mu = lambda_min(Q).
// Flat metric: Riemannian gradient A^{-1} Q (x - x*); gamma and mu are the
// extreme eigenvalues of A^{-1/2} Q A^{-1/2}, a = 1.
// Q must be symmetric positive semidefinite; (a, mu) are omitted when Q is
// singular.
class QuadraticObjective : public Objective {
 public:
  QuadraticObjective(Manifold manifold, Eigen::MatrixXd q,
                     Eigen::VectorXd minimizer);

  const Eigen::MatrixXd& q() const { return q_; }
  Eigen::VectorXd EuclideanGradient(const Eigen::VectorXd& x) const;

  nlohmann::json Params() const override;

 protected:
  double DoValue(const Point& x) const override;
  Tangent DoGradient(const Point& x) const override;

 private:
  Eigen::MatrixXd q_;
  Eigen::VectorXd xstar_;
};

// f(x) = -1/2 x^T M x on the unit sphere; the minimizer is the top
// eigenvector with its first nonzero component made positive. Requires
// lambda_1 - lambda_2 >= 1e-6. gamma = lambda_max - lambda_min bounds the
// Riemannian Hessian. Note -x* is also a minimizer on the full sphere, so
// certified regions must stay within pi/2 of x*.
class RayleighSphereObjective : public Objective {
 public:
  explicit RayleighSphereObjective(Eigen::MatrixXd m);

  const Eigen::MatrixXd& m() const { return m_; }
  double spectral_gap() const { return gap_; }

  nlohmann::json Params() const override;

 protected:
  double DoValue(const Point& x) const override;
  Tangent DoGradient(const Point& x) const override;

 private:
  Eigen::MatrixXd m_;
  double gap_;
};

// f(x) = 1/2 dist^2(x, p) on the hyperboloid, gradient -log_x(p).
// (a, mu) = (1, 1) hold with equality. gamma = 1 is the constant of the
// weaker smoothness inequality f - f* >= |grad f|^2 / (2 gamma) (which holds
// with equality); the full Lipschitz constant on a ball of radius R around p
// is R coth R.
class SqDistHyperboloidObjective : public Objective {
 public:
  explicit SqDistHyperboloidObjective(Point target);

  nlohmann::json Params() const override;

 protected:
  double DoValue(const Point& x) const override;
  Tangent DoGradient(const Point& x) const override;
};

// f(x) = 1/2 (x - x*)^T Q (x - x*) + eps sin^2(omega (x_1 - x*_1)) on R^n.
// x* stays the unique global minimizer (f >= 0 with equality only at x*), but
// convexity is lost once 2 eps omega^2 exceeds lambda_min(Q); whether the
// function is weak-strongly-convex on a region is left to the certifier.
// gamma = lambda_max(Q) + 2 eps omega^2.
class PerturbedQuadraticObjective : public Objective {
 public:
  PerturbedQuadraticObjective(Eigen::MatrixXd q, Eigen::VectorXd minimizer,
                              double epsilon, double omega);

  // Defaults eps = 0.05 lambda_min(Q), omega = 5.
  static double DefaultEpsilon(const Eigen::MatrixXd& q);
  static constexpr double kDefaultOmega = 5.0;

  double epsilon() const { return epsilon_; }
  double omega() const { return omega_; }
  Eigen::VectorXd EuclideanGradient(const Eigen::VectorXd& x) const;

  nlohmann::json Params() const override;

 protected:
  double DoValue(const Point& x) const override;
  Tangent DoGradient(const Point& x) const override;

 private:
  Eigen::MatrixXd q_;
  Eigen::VectorXd xstar_;
  double epsilon_;
  double omega_;
};

// Central differences of t -> f(exp_x(t e_i)) over a metric-orthonormal
// basis {e_i}, assembled as sum_i D_i e_i. Requires h in [1e-8, 1e-3].
inline constexpr double kDefaultFdStep = 1e-5;
Tangent FdGradientOracle(const Objective& obj, const Point& x,
                         double h = kDefaultFdStep);

// Max over sampled pairs of |grad f(x) - T_{y->x} grad f(y)| / dist(x, y),
// times 1.05 (zero stays zero). Pairs closer than 1e-6 are resampled.
// Throws Error(kInvalidArgument) for n_pairs < 1 or a zero-radius region.
inline constexpr double kGammaSafetyFactor = 1.05;
double EstimateGamma(const Objective& obj, const Region& region, int n_pairs,
                     std::mt19937_64& rng);

// Builds a catalog objective from its id and JSON parameters. Throws
// Error(kConfig) naming the offending field.
std::shared_ptr<const Objective> MakeObjective(const std::string& id,
                                               const Manifold& manifold,
                                               const nlohmann::json& params);

}  // namespace wsc

#endif  // WSC_OBJECTIVES_H_
