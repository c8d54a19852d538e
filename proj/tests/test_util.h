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

// Random inputs shared by the unit tests.

#ifndef WSC_TESTS_TEST_UTIL_H_
#define WSC_TESTS_TEST_UTIL_H_

#include <random>

#include <Eigen/Dense>

#include "wsc/manifold.h"

namespace wsc::testing {

inline Eigen::VectorXd Gaussian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z(i) = normal(rng);
  return z;
}

// Symmetric positive definite with spectrum exactly spanning [lo, hi].
inline Eigen::MatrixXd RandomSpd(int n, double lo, double hi,
                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = Gaussian(n, rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = uniform(rng);
  d(0) = lo;
  d(n - 1) = hi;
  return q * d.asDiagonal() * q.transpose();
}

inline Point Origin(const Manifold& m) {
  Eigen::VectorXd o = Eigen::VectorXd::Zero(m.ambient_dim());
  if (m.kind() == ManifoldKind::kSphere ||
      m.kind() == ManifoldKind::kHyperboloid) {
    o(m.dim()) = 1.0;
  }
  return Point(m, o);
}

// Uniform on the sphere; within hyperbolic distance 2 of the origin.
inline Point RandomPoint(const Manifold& m, std::mt19937_64& rng) {
  switch (m.kind()) {
    case ManifoldKind::kSphere:
      return Point(m, Gaussian(m.ambient_dim(), rng).normalized());
    case ManifoldKind::kHyperboloid: {
      const Point o = Origin(m);
      return Exp(o, SampleTangent(o, 2.0, rng));
    }
    default:
      return Point(m, 2.0 * Gaussian(m.ambient_dim(), rng));
  }
}

}  // namespace wsc::testing

#endif  // WSC_TESTS_TEST_UTIL_H_
