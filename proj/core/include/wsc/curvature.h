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

// Curvature-dependent comparison constants.
//
// Zeta(k_min, d) penalizes the forward step size on negatively curved spaces
// and DeltaBar(k_max, d) weakens the converse weak-strong-convexity constants
// on positively curved ones. Both are exactly 1 in the flat regime.

#ifndef WSC_CURVATURE_H_
#define WSC_CURVATURE_H_

#include <functional>

#include "wsc/manifold.h"

namespace wsc {

// sqrt(-k_min) d / tanh(sqrt(-k_min) d) for k_min < 0, else 1. Always >= 1.
// Throws Error(kInvalidArgument) for d < 0.
double Zeta(double k_min, double d);

// 2 sqrt(k_max) d / tan(2 sqrt(k_max) d) for k_max > 0, else 1. In (0, 1].
// Throws Error(kDomain) unless d < pi / (4 sqrt(k_max)) - 1e-9 when k_max > 0.
double DeltaBar(double k_max, double d);

// s * cot(s), continuous at 0. Decreasing on [0, pi).
double XCotX(double s);

// Lower bound on the comparison coefficient of a geodesic triangle side,
// given an upper bound D on the distance from the opposite vertex to the
// side. Defaults to sqrt(k_max) D cot(sqrt(k_max) D) (1 when k_max <= 0).
using ComparisonCoefficient = std::function<double(double k_max, double D)>;
double DefaultComparisonCoefficient(double k_max, double D);

struct TriangleCheck {
  Point a, b, c;
  double delta_used;
  // dist^2(a,c) - [delta dist^2(b,c) - 2 <log_b a, log_b c> + dist^2(a,b)].
  double residual;
  // Largest squared side length; the residual is homogeneous of degree 2.
  double scale;
};

// Evaluates the geodesic-triangle comparison inequality with the angle at b.
// The point q on side bc is unknown, so delta is evaluated at the upper bound
// dist(a, q) <= min(dist(a,b), dist(a,c)) + dist(b,c).
//
// Throws kDomain if, for k_max > 0, a side or that bound reaches
// pi / sqrt(k_max); throws kUndefinedLog if a logarithm is undefined.
TriangleCheck Lemma2Residual(
    const Point& a, const Point& b, const Point& c,
    const ComparisonCoefficient& coefficient = DefaultComparisonCoefficient);

}  // namespace wsc

#endif  // WSC_CURVATURE_H_
