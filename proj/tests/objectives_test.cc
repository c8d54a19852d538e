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

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "test_util.h"
#include "wsc/error.h"
#include "wsc/objectives.h"

namespace wsc {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

MatrixXd Diag(std::initializer_list<double> d) {
  VectorXd v(static_cast<Eigen::Index>(d.size()));
  int i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

std::string MessageOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "<no error>";
}

std::vector<std::shared_ptr<const Objective>> Zoo() {
  std::mt19937_64 rng(3);
  const Manifold flat = Manifold::FlatMetric(testing::RandomSpd(3, 0.5, 8.0, rng));
  return {
      std::make_shared<QuadraticObjective>(Manifold::Euclidean(3),
                                           Diag({1.0, 2.0, 4.0}),
                                           VectorXd::Constant(3, 0.5)),
      std::make_shared<QuadraticObjective>(
          flat, testing::RandomSpd(3, 1.0, 3.0, rng), VectorXd::Zero(3)),
      std::make_shared<RayleighSphereObjective>(Diag({0.5, 3.0, 1.0})),
      std::make_shared<SqDistHyperboloidObjective>(
          Exp(testing::Origin(Manifold::Hyperboloid(2)),
              SampleTangent(testing::Origin(Manifold::Hyperboloid(2)), 1.0, rng))),
      std::make_shared<PerturbedQuadraticObjective>(Diag({1.0, 4.0}),
                                                    VectorXd::Zero(2), 0.05, 5.0),
  };
}

TEST(ObjectivesTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(1);
  for (const auto& obj : Zoo()) {
    const Region region(obj->minimizer(), 0.7);
    for (int i = 0; i < 200; ++i) {
      const Point x = SamplePoint(region, rng);
      const Tangent g = obj->Gradient(x);
      EXPECT_LE(Norm(g - FdGradientOracle(*obj, x)), 1e-6 * std::max(1.0, Norm(g)))
          << obj->id();
    }
  }
}

TEST(ObjectivesTest, MinimizerIsCriticalAndMinimal) {
  std::mt19937_64 rng(2);
  for (const auto& obj : Zoo()) {
    EXPECT_LE(Norm(obj->Gradient(obj->minimizer())), 1e-12) << obj->id();
    const Region region(obj->minimizer(), 0.7);
    for (int i = 0; i < 200; ++i) {
      EXPECT_GE(obj->Value(SamplePoint(region, rng)), obj->MinValue() - 1e-15)
          << obj->id();
    }
  }
}

TEST(ObjectivesTest, QuadraticConstants) {
  const QuadraticObjective q(Manifold::Euclidean(2), Diag({1.0, 4.0}),
                             VectorXd::Zero(2));
  EXPECT_DOUBLE_EQ(q.metadata().gamma, 4.0);
  EXPECT_DOUBLE_EQ(*q.metadata().analytic_mu, 1.0);
  EXPECT_DOUBLE_EQ(*q.metadata().analytic_a, 1.0);
  EXPECT_EQ(q.id(), "quad_euclidean");

  // Under the metric A the constants are the generalized eigenvalues of (Q, A).
  const QuadraticObjective qa(Manifold::FlatMetric(Diag({2.0, 8.0})),
                              Diag({4.0, 8.0}), VectorXd::Zero(2));
  EXPECT_EQ(qa.id(), "quad_flat_metric");
  EXPECT_NEAR(qa.metadata().gamma, 2.0, 1e-14);
  EXPECT_NEAR(*qa.metadata().analytic_mu, 1.0, 1e-14);
}

TEST(ObjectivesTest, RayleighMinimizerIsTopEigenvector) {
  MatrixXd m(3, 3);
  m << 2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 0.5;
  const RayleighSphereObjective r(m);
  const VectorXd expected = (VectorXd(3) << 1.0, 1.0, 0.0).finished().normalized();
  EXPECT_LE((r.minimizer().coords() - expected).norm(), 1e-14);
  EXPECT_NEAR(r.spectral_gap(), 3.0 - 1.0, 1e-14);
  EXPECT_NEAR(r.metadata().gamma, 3.0 - 0.5, 1e-14);
  EXPECT_NEAR(r.MinValue(), -1.5, 1e-14);
  EXPECT_THROW(RayleighSphereObjective(MatrixXd::Identity(3, 3)), Error);
}

TEST(ObjectivesTest, SqDistIsHalfSquaredDistance) {
  const Manifold h = Manifold::Hyperboloid(2);
  const SqDistHyperboloidObjective f(testing::Origin(h));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const Point x = testing::RandomPoint(h, rng);
    const double d = Dist(x, f.minimizer());
    EXPECT_NEAR(f.Value(x), 0.5 * d * d, 1e-12);
    EXPECT_NEAR(Norm(f.Gradient(x)), d, 1e-9);
  }
  EXPECT_EQ(f.metadata().gamma, 1.0);
}

TEST(ObjectivesTest, PerturbedQuadraticConstants) {
  const PerturbedQuadraticObjective p(Diag({1.0, 4.0}), VectorXd::Zero(2), 0.05, 5.0);
  EXPECT_NEAR(p.metadata().gamma, 4.0 + 2.0 * 0.05 * 25.0, 1e-14);
  EXPECT_FALSE(p.metadata().analytic_a.has_value());
  EXPECT_DOUBLE_EQ(PerturbedQuadraticObjective::DefaultEpsilon(Diag({2.0, 4.0})), 0.1);
}

TEST(ObjectivesTest, EstimatedGammaBracketsTheTrueConstant) {
  const QuadraticObjective q(Manifold::Euclidean(2), Diag({1.0, 4.0}),
                             VectorXd::Zero(2));
  std::mt19937_64 rng(5);
  const double est = EstimateGamma(q, Region(q.minimizer(), 2.0), 2000, rng);
  EXPECT_LE(est, 4.0 * kGammaSafetyFactor + 1e-12);
  EXPECT_GE(est, 3.5);
  EXPECT_THROW(EstimateGamma(q, Region(q.minimizer(), 0.0), 10, rng), Error);
}

TEST(ObjectivesTest, FiniteDifferenceStepIsBounded) {
  const QuadraticObjective q(Manifold::Euclidean(2), Diag({1.0, 4.0}),
                             VectorXd::Zero(2));
  EXPECT_THROW(FdGradientOracle(q, q.minimizer(), 1e-2), Error);
  EXPECT_THROW(FdGradientOracle(q, q.minimizer(), 1e-10), Error);
}

TEST(ObjectivesTest, FactoryBuildsEveryObjective) {
  const json quad = {{"Q", {{1.0, 0.0}, {0.0, 4.0}}}};
  EXPECT_EQ(MakeObjective("quad_euclidean", Manifold::Euclidean(2), quad)->id(),
            "quad_euclidean");
  EXPECT_EQ(MakeObjective("perturbed_quad", Manifold::Euclidean(2), quad)->id(),
            "perturbed_quad");
  EXPECT_EQ(MakeObjective("rayleigh_sphere", Manifold::Sphere(1),
                          {{"M", {{2.0, 0.0}, {0.0, 1.0}}}})
                ->id(),
            "rayleigh_sphere");
  EXPECT_EQ(MakeObjective("sqdist_hyperboloid", Manifold::Hyperboloid(2), json::object())
                ->id(),
            "sqdist_hyperboloid");
  // Params() feeds back into the factory.
  const auto f = MakeObjective("quad_euclidean", Manifold::Euclidean(2), quad);
  EXPECT_EQ(MakeObjective("quad_euclidean", Manifold::Euclidean(2), f->Params())->Params(),
            f->Params());
}

TEST(ObjectivesTest, FactoryErrorsNameTheField) {
  EXPECT_EQ(MessageOf([] {
              MakeObjective("quad_euclidean", Manifold::Euclidean(2), json::object());
            }).rfind("objective.params.Q", 0),
            0u);
  EXPECT_EQ(MessageOf([] {
              MakeObjective("quad_euclidean", Manifold::Euclidean(2),
                            {{"Q", {{1.0, 2.0}, {0.0, 1.0}}}});
            }).rfind("objective.params.Q", 0),
            0u);
  EXPECT_EQ(MessageOf([] {
              MakeObjective("rayleigh_sphere", Manifold::Euclidean(2),
                            {{"M", {{2.0, 0.0}, {0.0, 1.0}}}});
            }).rfind("manifold.kind", 0),
            0u);
  EXPECT_EQ(MessageOf([] {
              MakeObjective("nope", Manifold::Euclidean(2), json::object());
            }).rfind("objective.id", 0),
            0u);
}

}  // namespace
}  // namespace wsc
