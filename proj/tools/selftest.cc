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

#include "selftest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "wsc/certifier.h"
#include "wsc/curvature.h"
#include "wsc/error.h"
#include "wsc/manifold.h"
#include "wsc/objectives.h"
#include "wsc/optimizer.h"

namespace wsc::cli {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kPi = std::numbers::pi;

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// Tracks the worst violation of a family of inequalities `value >= 0`.
struct Worst {
  double value = 0.0;
  void Update(double v) { value = std::min(value, v); }
  bool ok() const { return value >= 0.0; }
};

Point RandomPoint(const Manifold& m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  VectorXd z(m.ambient_dim());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  switch (m.kind()) {
    case ManifoldKind::kSphere:
      return Point(m, z.normalized());
    case ManifoldKind::kHyperboloid: {
      VectorXd o = VectorXd::Zero(m.ambient_dim());
      o(m.dim()) = 1.0;
      const Point origin(m, o);
      return Exp(origin, SampleTangent(origin, 2.0, rng));
    }
    default:
      return Point(m, z);
  }
}

MatrixXd RandomSpd(int n, double lo, double hi, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(lo, hi);
  MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<MatrixXd> qr(g);
  const MatrixXd q = qr.householderQ();
  VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = uniform(rng);
  d(0) = lo;
  d(n - 1) = hi;
  return q * d.asDiagonal() * q.transpose();
}

// Injectivity-safe tangent length for round-trip sampling.
double MaxTangentNorm(const Manifold& m) {
  switch (m.kind()) {
    case ManifoldKind::kSphere: return 0.9 * kPi;
    case ManifoldKind::kHyperboloid: return 3.0;
    default: return 5.0;
  }
}

PropertyResult GeometryProperty(const Manifold& m, int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst_round_trip = 0.0, worst_dist = 0.0, worst_iso = 0.0,
         worst_inverse = 0.0;
  for (int i = 0; i < n; ++i) {
    const Point x = RandomPoint(m, rng);
    const Tangent v = SampleTangent(x, MaxTangentNorm(m), rng);
    const Point y = Exp(x, v);
    const double nv = Norm(v);
    worst_round_trip = std::max(
        worst_round_trip, Norm(Log(x, y) - v) / std::max(1.0, nv));
    worst_dist = std::max(worst_dist, std::abs(Dist(x, y) - nv));
    const Tangent w = SampleTangent(x, 2.0, rng);
    const Tangent moved = Transport(x, y, w);
    worst_iso = std::max(worst_iso, std::abs(Norm(moved) - Norm(w)));
    worst_inverse =
        std::max(worst_inverse, Norm(Transport(y, x, moved) - w));
  }
  const bool ok = worst_round_trip <= 1e-9 && worst_dist <= 1e-10 &&
                  worst_iso <= 1e-10 && worst_inverse <= 1e-9;
  return {"geometry:" + std::string(KindName(m.kind())), ok,
          "round_trip=" + Sci(worst_round_trip) + " dist=" + Sci(worst_dist) +
              " isometry=" + Sci(worst_iso) + " inverse=" + Sci(worst_inverse)};
}

PropertyResult TriangleInequality(const std::vector<Manifold>& ms, int n,
                                  uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (const Manifold& m : ms) {
    for (int i = 0; i < n; ++i) {
      const Point x = RandomPoint(m, rng);
      const Point y = RandomPoint(m, rng);
      const Point z = RandomPoint(m, rng);
      worst = std::max(worst, Dist(x, z) - Dist(x, y) - Dist(y, z));
    }
  }
  return {"geometry:triangle-inequality", worst <= 1e-10,
          "max excess=" + Sci(worst)};
}

// Triangles inside a ball of radius < pi/(4 sqrt(k_max)) stay admissible.
PropertyResult ComparisonProperty(const Manifold& m, int n, uint64_t seed,
                                  const ComparisonCoefficient& coeff) {
  std::mt19937_64 rng(seed);
  const double radius =
      m.curvature().k_max > 0.0 ? 0.95 * MaxRegionRadius(m.curvature().k_max)
                                : 3.0;
  double worst = 0.0;
  bool flat = m.is_flat();
  for (int i = 0; i < n; ++i) {
    const Region ball(RandomPoint(m, rng), radius);
    const Point a = SamplePoint(ball, rng);
    const Point b = SamplePoint(ball, rng);
    const Point c = SamplePoint(ball, rng);
    try {
      const TriangleCheck t = Lemma2Residual(a, b, c, coeff);
      const double scaled = t.residual / std::max(t.scale, 1e-300);
      worst = flat ? std::max(worst, std::abs(scaled)) : std::min(worst, scaled);
    } catch (const Error& e) {
      return {"comparison:" + std::string(KindName(m.kind())), false,
              e.what()};
    }
  }
  const bool ok = flat ? worst <= 1e-12 : worst >= -1e-8;
  return {"comparison:" + std::string(KindName(m.kind())), ok,
          (flat ? "max |residual|/scale=" : "min residual/scale=") +
              Sci(worst)};
}

PropertyResult ConstantsProperty(const std::function<double(double)>& xcot) {
  auto delta_bar = [&](double k, double d) {
    return k <= 0.0 ? 1.0 : xcot(2.0 * std::sqrt(k) * d);
  };
  bool ok = Zeta(0.5, 2.0) == 1.0 && DeltaBar(-1.0, 3.0) == 1.0 &&
            std::abs(Zeta(-1.0, 1.0) - 1.3130352854993313) <= 1e-12 &&
            std::abs(delta_bar(1.0, kPi / 8) - kPi / 4) <= 1e-12 &&
            std::abs(Zeta(-1.0, 1e-6) - 1.0) <= 1e-10 &&
            std::abs(delta_bar(1.0, 1e-6) - 1.0) <= 1e-10;
  return {"constants:zeta-delta-bar", ok, ""};
}

PropertyResult GradientProperty(
    const std::vector<std::shared_ptr<const Objective>>& objs, int n,
    uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0, worst_critical = 0.0;
  for (const auto& obj : objs) {
    const Region region(obj->minimizer(),
                        std::min(0.7, MaxRegionRadius(
                                          obj->manifold().curvature().k_max)));
    for (int i = 0; i < n; ++i) {
      const Point x = SamplePoint(region, rng);
      const Tangent g = obj->Gradient(x);
      const Tangent fd = FdGradientOracle(*obj, x);
      worst = std::max(worst, Norm(g - fd) / std::max(1.0, Norm(g)));
    }
    worst_critical = std::max(worst_critical, Norm(obj->Gradient(obj->minimizer())));
  }
  return {"objectives:gradient-vs-finite-differences",
          worst <= 1e-5 && worst_critical <= 1e-8,
          "rel err=" + Sci(worst) + " |grad f(x*)|=" + Sci(worst_critical)};
}

// max over samples of (dist^2(x~) - factor dist^2(x)) / dist^2(x).
double ForwardExcess(const Objective& obj, const Region& region, double eta,
                     double factor, int n, std::mt19937_64& rng) {
  double worst = -1.0;
  for (int i = 0; i < n; ++i) {
    const Point x = SamplePoint(region, rng);
    const double d0 = Dist(x, obj.minimizer());
    if (d0 < kConvergedDistance) continue;
    const double d1 = Dist(RgdStep(obj, x, eta), obj.minimizer());
    worst = std::max(worst, (d1 * d1 - factor * d0 * d0) / (d0 * d0));
  }
  return worst;
}

struct RoundTrip {
  bool ok;
  std::string detail;
};

// Worst observed contraction -> converse (a, mu) -> residuals at the same
// samples. delta_bar is supplied so the mutation hook reaches it.
RoundTrip ConverseRoundTrip(const Objective& obj, const Region& region,
                            double eta, double delta_bar, int n,
                            uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> xs;
  double worst_ratio = 0.0;
  for (int i = 0; i < n; ++i) {
    xs.push_back(SamplePoint(region, rng));
    const double d0 = Dist(xs.back(), obj.minimizer());
    if (d0 < kConvergedDistance) continue;
    const double d1 = Dist(RgdStep(obj, xs.back(), eta), obj.minimizer());
    worst_ratio = std::max(worst_ratio, d1 * d1 / (d0 * d0));
  }
  const double c = std::clamp(1.0 - worst_ratio, 0.0, 1.0);
  try {
    const ConverseParameters p =
        ComputeConverseParameters(c, obj.metadata().gamma, eta, delta_bar);
    double worst = 0.0;
    for (const Point& x : xs) {
      const double d = Dist(x, obj.minimizer());
      const double scale = std::max(
          {1.0, std::abs(obj.Value(x) - obj.MinValue()), d * d});
      worst = std::min(worst, WscResidual(obj, x, p.a, p.mu) / scale);
    }
    const bool rate_ok = p.a * p.mu * eta <= c * (1.0 + 1e-12);
    return {worst >= -1e-9 && rate_ok,
            "c_obs=" + Sci(c) + " min residual/scale=" + Sci(worst)};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

}  // namespace

std::vector<PropertyResult> RunSelfTest(const SelfTestOptions& options) {
  const int n = options.samples;
  uint64_t seed = options.seed;
  const std::function<double(double)> xcot =
      options.hooks.x_cot_x ? options.hooks.x_cot_x
                            : std::function<double(double)>(XCotX);
  const ComparisonCoefficient comparison = [&](double k, double D) {
    return k <= 0.0 ? 1.0 : xcot(std::sqrt(k) * D);
  };
  auto delta_bar = [&](double k, double d) {
    return k <= 0.0 ? 1.0 : xcot(2.0 * std::sqrt(k) * d);
  };

  std::mt19937_64 setup(seed);
  const Manifold euclid = Manifold::Euclidean(3);
  const Manifold flat = Manifold::FlatMetric(RandomSpd(3, 0.5, 8.0, setup));
  const Manifold sphere = Manifold::Sphere(2);
  const Manifold hyper = Manifold::Hyperboloid(2);
  const std::vector<Manifold> all = {euclid, flat, sphere, hyper};

  std::vector<PropertyResult> out;
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      out.push_back(body());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };

  for (const Manifold& m : all) {
    guarded("geometry:" + std::string(KindName(m.kind())),
            [&] { return GeometryProperty(m, n, ++seed); });
  }
  guarded("geometry:triangle-inequality",
          [&] { return TriangleInequality(all, n, ++seed); });
  for (const Manifold& m : {euclid, sphere, hyper}) {
    guarded("comparison:" + std::string(KindName(m.kind())),
            [&] { return ComparisonProperty(m, n, ++seed, comparison); });
  }
  guarded("constants:zeta-delta-bar", [&] { return ConstantsProperty(xcot); });

  // Objectives used by the remaining properties.
  const MatrixXd q = (VectorXd(3) << 1.0, 2.5, 4.0).finished().asDiagonal();
  const auto quad = std::make_shared<const QuadraticObjective>(
      euclid, q, VectorXd::Zero(3));
  const auto quad_flat = std::make_shared<const QuadraticObjective>(
      flat, RandomSpd(3, 1.0, 4.0, setup), VectorXd::Zero(3));
  const MatrixXd mm = (VectorXd(3) << 3.0, 1.5, 0.5).finished().asDiagonal();
  const auto rayleigh = std::make_shared<const RayleighSphereObjective>(mm);
  VectorXd p = VectorXd::Zero(3);
  p(2) = 1.0;
  const auto sqdist =
      std::make_shared<const SqDistHyperboloidObjective>(Point(hyper, p));
  const auto perturbed = std::make_shared<const PerturbedQuadraticObjective>(
      q, VectorXd::Zero(3), 0.05, 5.0);

  guarded("objectives:gradient-vs-finite-differences", [&] {
    return GradientProperty({quad, quad_flat, rayleigh, sqdist, perturbed}, n,
                            ++seed);
  });

  guarded("forward:quadratic-contraction", [&] {
    std::mt19937_64 rng(++seed);
    const double eta = 1.0 / 4.0;
    const double excess =
        ForwardExcess(*quad, Region(quad->minimizer(), 10.0), eta,
                      1.0 - 1.0 * 1.0 * eta, n, rng);
    return PropertyResult{"forward:quadratic-contraction", excess <= 1e-12,
                          "max excess=" + Sci(excess)};
  });
  guarded("forward:hyperbolic-contraction", [&] {
    std::mt19937_64 rng(++seed);
    const double eta = 1.0 / Zeta(-1.0, 2.0);
    const double excess = ForwardExcess(
        *sqdist, Region(sqdist->minimizer(), 2.0), eta, 1.0 - eta, n, rng);
    return PropertyResult{"forward:hyperbolic-contraction", excess <= 1e-9,
                          "max excess=" + Sci(excess)};
  });

  guarded("converse:flat-round-trip", [&] {
    const RoundTrip r = ConverseRoundTrip(
        *quad, Region(quad->minimizer(), 10.0), 1.0 / quad->metadata().gamma,
        delta_bar(0.0, 10.0), n, ++seed);
    return PropertyResult{"converse:flat-round-trip", r.ok, r.detail};
  });
  guarded("converse:sphere-round-trip", [&] {
    const double radius = 0.15 * kPi;
    const RoundTrip r = ConverseRoundTrip(
        *rayleigh, Region(rayleigh->minimizer(), radius),
        1.0 / rayleigh->metadata().gamma, delta_bar(1.0, radius), n, ++seed);
    return PropertyResult{"converse:sphere-round-trip", r.ok, r.detail};
  });
  guarded("converse:hyperbolic-round-trip", [&] {
    const RoundTrip r = ConverseRoundTrip(
        *sqdist, Region(sqdist->minimizer(), 2.0), 1.0 / Zeta(-1.0, 2.0),
        delta_bar(-1.0, 2.0), n, ++seed);
    return PropertyResult{"converse:hyperbolic-round-trip", r.ok, r.detail};
  });
  guarded("converse:consistency-grid", [&] {
    bool ok = true;
    for (double c : {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
      const ConverseParameters pr = ComputeConverseParameters(c, 1.0, 1.0, 1.0);
      const ConsistencyReport rep = CheckConsistency(pr.a, pr.mu, 1.0, c);
      ok = ok && rep.within_rate && rep.matches_flat_converse &&
           rep.within_quarter_half_band;
    }
    return PropertyResult{"converse:consistency-grid", ok, ""};
  });

  guarded("preconditioned:equivalence", [&] {
    std::mt19937_64 rng(++seed);
    std::uniform_real_distribution<double> eta_dist(0.0, 1.0);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const MatrixXd a = RandomSpd(3, 0.5, 8.0, rng);
      VectorXd x(3);
      for (int k = 0; k < 3; ++k) x(k) = 3.0 * normal(rng);
      const double gap =
          PreconditionedEquivalence(*quad, a, Point(euclid, x), eta_dist(rng));
      worst = std::max(worst, gap / (1.0 + x.cwiseAbs().maxCoeff()));
    }
    return PropertyResult{"preconditioned:equivalence", worst <= 1e-12,
                          "max gap=" + Sci(worst)};
  });
  return out;
}

}  // namespace wsc::cli
