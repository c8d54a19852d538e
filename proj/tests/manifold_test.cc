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

#include "test_util.h"
#include "wsc/error.h"
#include "wsc/manifold.h"

namespace wsc {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using testing::Gaussian;
using testing::Origin;
using testing::RandomPoint;

constexpr double kPi = std::numbers::pi;

double Minkowski(const VectorXd& a, const VectorXd& b) {
  const Eigen::Index n = a.size() - 1;
  return a.head(n).dot(b.head(n)) - a(n) * b(n);
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected wsc::Error";
  return ErrorCode::kInvalidArgument;
}

struct ManifoldCase {
  std::string name;
  Manifold manifold;
  double max_tangent;
};

std::vector<ManifoldCase> AllCases() {
  std::mt19937_64 rng(11);
  return {
      {"euclidean", Manifold::Euclidean(3), 5.0},
      {"flat_metric", Manifold::FlatMetric(testing::RandomSpd(3, 0.5, 8.0, rng)),
       5.0},
      {"sphere1", Manifold::Sphere(1), 0.9 * kPi},
      {"sphere", Manifold::Sphere(3), 0.9 * kPi},
      {"hyperboloid", Manifold::Hyperboloid(3), 3.0},
  };
}

class GeometryTest : public ::testing::TestWithParam<ManifoldCase> {};

TEST_P(GeometryTest, ExpLogRoundTrip) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const Point x = RandomPoint(c.manifold, rng);
    const Tangent v = SampleTangent(x, c.max_tangent, rng);
    const Tangent back = Log(x, Exp(x, v));
    EXPECT_LE(Norm(back - v), 1e-9 * std::max(1.0, Norm(v)));
  }
}

TEST_P(GeometryTest, DistanceMatchesTangentNorm) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const Point x = RandomPoint(c.manifold, rng);
    const Tangent v = SampleTangent(x, c.max_tangent, rng);
    const Point y = Exp(x, v);
    EXPECT_NEAR(Dist(x, y), Norm(v), 1e-10 * std::max(1.0, Norm(v)));
    EXPECT_NEAR(Dist(x, y), Dist(y, x), 1e-12 * std::max(1.0, Norm(v)));
    EXPECT_NEAR(Norm(Log(x, y)), Dist(x, y), 1e-9);
  }
}

TEST_P(GeometryTest, TransportIsAnInverseIsometry) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Point x = RandomPoint(c.manifold, rng);
    const Point y = Exp(x, SampleTangent(x, c.max_tangent, rng));
    const Tangent u = SampleTangent(x, 2.0, rng);
    const Tangent w = SampleTangent(x, 2.0, rng);
    const Tangent tu = Transport(x, y, u);
    const Tangent tw = Transport(x, y, w);
    EXPECT_NEAR(Inner(y, tu, tw), Inner(x, u, w), 1e-10);
    EXPECT_LE(Norm(Transport(y, x, tu) - u), 1e-9);
  }
}

TEST_P(GeometryTest, TransportMapsLogToMinusLog) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Point x = RandomPoint(c.manifold, rng);
    const Point y = Exp(x, SampleTangent(x, c.max_tangent, rng));
    const Tangent moved = Transport(x, y, Log(x, y));
    EXPECT_LE(Norm(moved + Log(y, x)), 1e-9 * std::max(1.0, Dist(x, y)));
  }
}

TEST_P(GeometryTest, OutputsStayOnManifold) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Point x = RandomPoint(c.manifold, rng);
    const Point y = Exp(x, SampleTangent(x, c.max_tangent, rng));
    // Point and Tangent constructors validate, so rebuilding them re-checks.
    EXPECT_NO_THROW(Point(c.manifold, y.coords()));
    EXPECT_NO_THROW(Tangent(y, Log(y, x).coords()));
    EXPECT_NO_THROW(Tangent(x, ProjectTangent(x, Gaussian(c.manifold.ambient_dim(), rng)).coords()));
  }
}

TEST_P(GeometryTest, TangentBasisIsOrthonormal) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i) {
    const Point x = RandomPoint(c.manifold, rng);
    const MatrixXd b = TangentBasis(x);
    ASSERT_EQ(b.cols(), c.manifold.dim());
    for (int p = 0; p < b.cols(); ++p) {
      for (int q = 0; q < b.cols(); ++q) {
        const double g = Inner(x, Tangent(x, b.col(p)), Tangent(x, b.col(q)));
        EXPECT_NEAR(g, p == q ? 1.0 : 0.0, 1e-10);
      }
    }
  }
}

TEST_P(GeometryTest, SamplePointStaysInRegion) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(7);
  const double radius =
      std::min(1.5, 0.99 * MaxRegionRadius(c.manifold.curvature().k_max));
  const Region region(RandomPoint(c.manifold, rng), radius);
  for (int i = 0; i < 300; ++i) {
    EXPECT_LE(Dist(region.center(), SamplePoint(region, rng)), radius + 1e-12);
  }
}

TEST_P(GeometryTest, SmallTangentsAreContinuous) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(8);
  const Point x = RandomPoint(c.manifold, rng);
  const Tangent dir = SampleTangent(x, 1.0, rng);
  const Tangent unit = dir * (1.0 / Norm(dir));
  for (double t : {1e-12, 1e-9, 0.99e-8, 1.01e-8, 1e-7}) {
    const Point y = Exp(x, unit * t);
    EXPECT_NEAR(Dist(x, y), t, 1e-15);
    EXPECT_LE(Norm(Log(x, y) - unit * t), 1e-15);
  }
}

TEST_P(GeometryTest, StratifiedSamplesCoverEveryBand) {
  const ManifoldCase& c = GetParam();
  std::mt19937_64 rng(14);
  const double radius =
      std::min(1.5, 0.99 * MaxRegionRadius(c.manifold.curvature().k_max));
  const Region region(RandomPoint(c.manifold, rng), radius);
  const int n = 64;
  const double dim = c.manifold.dim();
  for (int i = 0; i < n; ++i) {
    const double d = Dist(region.center(), SampleStratified(region, i, n, rng));
    // u = (d / R)^dim must land in the i-th band.
    const double u = std::pow(d / radius, dim);
    EXPECT_GE(u, static_cast<double>(i) / n - 1e-9);
    EXPECT_LE(u, static_cast<double>(i + 1) / n + 1e-9);
  }
  EXPECT_THROW(SampleStratified(region, n, n, rng), Error);
}

INSTANTIATE_TEST_SUITE_P(
    AllManifolds, GeometryTest, ::testing::ValuesIn(AllCases()),
    [](const ::testing::TestParamInfo<ManifoldCase>& info) {
      return info.param.name;
    });

TEST(GeometryTest, TriangleInequality) {
  std::mt19937_64 rng(9);
  for (const ManifoldCase& c : AllCases()) {
    for (int i = 0; i < 300; ++i) {
      const Point x = RandomPoint(c.manifold, rng);
      const Point y = RandomPoint(c.manifold, rng);
      const Point z = RandomPoint(c.manifold, rng);
      EXPECT_LE(Dist(x, z), Dist(x, y) + Dist(y, z) + 1e-12) << c.name;
    }
  }
}

// Integrates x'' = -|x'|^2 x with transport v' = -<v, x'> x and compares
// against the closed forms.
TEST(GeodesicOdeTest, SphereMatchesRungeKutta) {
  const Manifold m = Manifold::Sphere(2);
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const Point x = RandomPoint(m, rng);
    const Tangent v = SampleTangent(x, 2.5, rng);
    const Tangent w = SampleTangent(x, 1.0, rng);
    // State: position, velocity, transported vector.
    Eigen::Matrix<double, 9, 1> s;
    s << x.coords(), v.coords(), w.coords();
    auto f = [](const Eigen::Matrix<double, 9, 1>& z) {
      Eigen::Matrix<double, 9, 1> d;
      const Eigen::Vector3d p = z.segment<3>(0), q = z.segment<3>(3),
                            r = z.segment<3>(6);
      d << q, -q.squaredNorm() * p, -r.dot(q) * p;
      return d;
    };
    const int n = 2000;
    const double h = 1.0 / n;
    for (int k = 0; k < n; ++k) {
      const auto k1 = f(s);
      const auto k2 = f(s + 0.5 * h * k1);
      const auto k3 = f(s + 0.5 * h * k2);
      const auto k4 = f(s + h * k3);
      s += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    const Point y = Exp(x, v);
    EXPECT_LE((y.coords() - s.segment<3>(0)).norm(), 1e-10);
    EXPECT_LE((Transport(x, y, w).coords() - s.segment<3>(6)).norm(), 1e-10);
  }
}

// Same check for the hyperboloid: x'' = <x',x'>_L x, v' = <v, x'>_L x.
TEST(GeodesicOdeTest, HyperboloidMatchesRungeKutta) {
  const Manifold m = Manifold::Hyperboloid(2);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Point x = RandomPoint(m, rng);
    const Tangent v = SampleTangent(x, 2.0, rng);
    const Tangent w = SampleTangent(x, 1.0, rng);
    Eigen::Matrix<double, 9, 1> s;
    s << x.coords(), v.coords(), w.coords();
    auto f = [](const Eigen::Matrix<double, 9, 1>& z) {
      Eigen::Matrix<double, 9, 1> d;
      const VectorXd p = z.segment<3>(0), q = z.segment<3>(3),
                     r = z.segment<3>(6);
      d << q, Minkowski(q, q) * p, Minkowski(r, q) * p;
      return d;
    };
    const int n = 4000;
    const double h = 1.0 / n;
    for (int k = 0; k < n; ++k) {
      const auto k1 = f(s);
      const auto k2 = f(s + 0.5 * h * k1);
      const auto k3 = f(s + 0.5 * h * k2);
      const auto k4 = f(s + h * k3);
      s += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    const Point y = Exp(x, v);
    const double scale = y.coords().norm();
    EXPECT_LE((y.coords() - s.segment<3>(0)).norm(), 1e-9 * scale);
    EXPECT_LE((Transport(x, y, w).coords() - s.segment<3>(6)).norm(),
              1e-9 * scale);
  }
}

TEST(ManifoldTest, KnownDistances) {
  const Manifold s = Manifold::Sphere(2);
  EXPECT_NEAR(Dist(Point(s, VectorXd::Unit(3, 0)), Point(s, VectorXd::Unit(3, 1))),
              kPi / 2, 1e-15);
  const Manifold h = Manifold::Hyperboloid(1);
  const Point o = Origin(h);
  const Point p(h, (VectorXd(2) << std::sinh(3.0), std::cosh(3.0)).finished());
  EXPECT_NEAR(Dist(o, p), 3.0, 1e-14);
  // acosh(-<p,q>) would round to 0 here; the chord form keeps the distance
  // up to the rounding already present in the coordinates (~1e-14).
  const Point q(h, (VectorXd(2) << std::sinh(3.0 + 1e-9), std::cosh(3.0 + 1e-9)).finished());
  EXPECT_NEAR(Dist(p, q), 1e-9, 5e-14);
}

TEST(ManifoldTest, FlatMetricInnerProductAndGradient) {
  MatrixXd a(2, 2);
  a << 2.0, 0.5, 0.5, 1.0;
  const Manifold m = Manifold::FlatMetric(a);
  const Point x(m, VectorXd::Zero(2));
  const Tangent u(x, VectorXd::Unit(2, 0));
  const Tangent v(x, VectorXd::Unit(2, 1));
  EXPECT_DOUBLE_EQ(Inner(x, u, v), 0.5);
  EXPECT_DOUBLE_EQ(Norm(u), std::sqrt(2.0));
  const VectorXd egrad = (VectorXd(2) << 1.0, -2.0).finished();
  EXPECT_LE((GradientFromDifferential(x, egrad).coords() - a.ldlt().solve(egrad)).norm(),
            1e-15);
  EXPECT_NEAR(m.metric_lambda_min(), 1.5 - std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(m.metric_lambda_max(), 1.5 + std::sqrt(0.5), 1e-14);
}

TEST(ManifoldTest, HyperboloidGradientIsMinkowskiRiesz) {
  const Manifold m = Manifold::Hyperboloid(2);
  std::mt19937_64 rng(13);
  const Point x = RandomPoint(m, rng);
  const VectorXd egrad = Gaussian(3, rng);
  const Tangent g = GradientFromDifferential(x, egrad);
  // <grad, v> must equal the differential applied to v for every tangent v.
  for (int i = 0; i < 10; ++i) {
    const Tangent v = SampleTangent(x, 1.0, rng);
    EXPECT_NEAR(Inner(x, g, v), egrad.dot(v.coords()), 1e-12 * x.coords().squaredNorm());
  }
}

TEST(ManifoldTest, RejectsInvalidInput) {
  const Manifold s = Manifold::Sphere(2);
  const Manifold h = Manifold::Hyperboloid(2);
  EXPECT_EQ(CodeOf([&] { Point(s, VectorXd::Constant(3, 1.0)); }),
            ErrorCode::kInvalidPoint);
  EXPECT_EQ(CodeOf([&] { Point(s, VectorXd::Unit(2, 0)); }),
            ErrorCode::kInvalidPoint);
  EXPECT_EQ(CodeOf([&] { Point(h, -VectorXd::Unit(3, 2)); }),
            ErrorCode::kInvalidPoint);
  const Point n(s, VectorXd::Unit(3, 2));
  EXPECT_EQ(CodeOf([&] { Tangent(n, VectorXd::Unit(3, 2)); }),
            ErrorCode::kInvalidPoint);
  EXPECT_EQ(CodeOf([&] { Log(n, Point(s, -VectorXd::Unit(3, 2))); }),
            ErrorCode::kUndefinedLog);
  EXPECT_EQ(CodeOf([&] { Dist(n, Origin(h)); }), ErrorCode::kManifoldMismatch);
  const Point e(s, VectorXd::Unit(3, 0));
  EXPECT_EQ(CodeOf([&] { Exp(e, Tangent(n, VectorXd::Unit(3, 1))); }),
            ErrorCode::kBaseMismatch);
  EXPECT_EQ(CodeOf([&] { Manifold::FlatMetric(-MatrixXd::Identity(2, 2)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { Region(n, kPi / 4); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { Region(n, -1.0); }), ErrorCode::kDomain);
  EXPECT_NO_THROW(Region(n, kPi / 4 - 1e-6));
  EXPECT_NO_THROW(Region(Origin(h), 50.0));
}

TEST(ManifoldTest, KindNamesRoundTrip) {
  for (ManifoldKind k : {ManifoldKind::kEuclidean, ManifoldKind::kFlatMetric,
                         ManifoldKind::kSphere, ManifoldKind::kHyperboloid}) {
    EXPECT_EQ(KindFromName(KindName(k)), k);
  }
  EXPECT_EQ(CodeOf([] { KindFromName("torus"); }), ErrorCode::kConfig);
}

TEST(ManifoldTest, CurvatureProfiles) {
  EXPECT_EQ(Manifold::Sphere(2).curvature().k_max, 1.0);
  EXPECT_EQ(Manifold::Hyperboloid(2).curvature().k_min, -1.0);
  EXPECT_EQ(Manifold::Euclidean(2).curvature().k_max, 0.0);
  EXPECT_NEAR(MaxRegionRadius(1.0), kPi / 4, 2e-9);
  EXPECT_NEAR(MaxRegionRadius(4.0), kPi / 8, 2e-9);
}

}  // namespace
}  // namespace wsc
