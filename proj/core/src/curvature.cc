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

#include "wsc/curvature.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wsc/error.h"

namespace wsc {

namespace {

// Below this argument x/tanh(x) and x/tan(x) use 1 +- x^2/3.
constexpr double kSeriesCutoff = 1e-4;

}  // namespace

double Zeta(double k_min, double d) {
  if (!(d >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "zeta: distance must be nonnegative");
  }
  if (k_min >= 0.0) return 1.0;
  const double s = std::sqrt(-k_min) * d;
  if (s < kSeriesCutoff) return 1.0 + s * s / 3.0;
  return s / std::tanh(s);
}

double DeltaBar(double k_max, double d) {
  if (!(d >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "delta_bar: distance must be nonnegative");
  }
  if (k_max <= 0.0) return 1.0;
  if (d >= MaxRegionRadius(k_max)) {
    throw Error(ErrorCode::kDomain,
                "delta_bar: distance " + std::to_string(d) +
                    " is outside the domain d < pi/(4 sqrt(k_max))");
  }
  const double s = 2.0 * std::sqrt(k_max) * d;
  if (s < kSeriesCutoff) return 1.0 - s * s / 3.0;
  return s / std::tan(s);
}

double XCotX(double s) {
  if (std::abs(s) < kSeriesCutoff) return 1.0 - s * s / 3.0;
  return s / std::tan(s);
}

double DefaultComparisonCoefficient(double k_max, double D) {
  if (k_max <= 0.0) return 1.0;
  return XCotX(std::sqrt(k_max) * D);
}

TriangleCheck Lemma2Residual(const Point& a, const Point& b, const Point& c,
                             const ComparisonCoefficient& coefficient) {
  const double ab = Dist(a, b);
  const double ac = Dist(a, c);
  const double bc = Dist(b, c);
  const double k_max = a.manifold().curvature().k_max;
  const double bound = std::min(ab, ac) + bc;
  if (k_max > 0.0) {
    const double limit = std::numbers::pi / std::sqrt(k_max);
    if (std::max({ab, ac, bc}) >= limit || bound >= limit) {
      throw Error(ErrorCode::kDomain,
                  "triangle too large for the comparison bound: sides must "
                  "stay below pi/sqrt(k_max)");
    }
  }
  const double delta = coefficient(k_max, bound);
  const Tangent ba = Log(b, a);
  const Tangent bcv = Log(b, c);
  const double residual =
      ac * ac - (delta * bc * bc - 2.0 * Inner(b, ba, bcv) + ab * ab);
  return TriangleCheck{a, b, c, delta, residual,
                       std::max({ab * ab, ac * ac, bc * bc})};
}

}  // namespace wsc
