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

// Numerical certification of (geodesic) weak-strong-convexity,
//
//   f(x) - f(x*) <= (1/a) <grad f(x), -log_x(x*)> - (mu/2) dist^2(x, x*),
//
// from an observed single-step contraction rate of Riemannian gradient
// descent, plus residual checks for the auxiliary inequalities the converse
// relies on.
//
// Every residual below is arranged so that the inequality holds iff the
// residual is >= 0.

#ifndef WSC_CERTIFIER_H_
#define WSC_CERTIFIER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wsc/manifold.h"
#include "wsc/objectives.h"

namespace wsc {

// (1/a) <grad f(x), -log_x(x*)> - (mu/2) dist^2(x, x*) - (f(x) - f(x*)).
double WscResidual(const Objective& obj, const Point& x, double a, double mu);

struct ConverseParameters {
  double a;
  double mu;
};

// a = c / (2 gamma eta (1 - sqrt(delta_bar c) / 2)), mu = gamma / 2.
// delta_bar = 1 is the flat-space case. Throws Error(kInvalidArgument) for
// c outside (0, 1], delta_bar outside (0, 1], or nonpositive gamma / eta.
ConverseParameters ComputeConverseParameters(double c, double gamma,
                                             double eta, double delta_bar);

struct ConsistencyReport {
  double a_mu_eta;
  double ratio;  // a mu eta / c
  // a mu eta <= c; otherwise the forward bound would beat the assumed rate.
  bool within_rate;
  // a mu eta == c / (4 (1 - sqrt(c)/2)) to 1e-12 relative (flat converse).
  bool matches_flat_converse;
  // c/4 <= a mu eta <= c/2 (with 1e-12 relative slack).
  bool within_quarter_half_band;

  bool ok() const { return within_rate; }
};

ConsistencyReport CheckConsistency(double a, double mu, double eta, double c);

enum class Verdict { kCertified, kRefuted, kInconclusive };
std::string_view VerdictName(Verdict v);

struct WscCertificate {
  std::string objective_id;
  Region region;
  uint64_t seed = 0;
  int n_samples = 0;
  double eta_used = 0.0;
  double gamma_used = 0.0;
  std::string gamma_source{};  // "analytic", "estimated" or "override"
  double delta_bar_used = 1.0;
  double c_obs = 0.0;
  double worst_ratio = 0.0;
  // Present whenever c_obs is a valid rate in (0, 1].
  std::optional<double> a{};
  std::optional<double> mu{};
  std::optional<double> a_mu_eta{};
  double residual_min = 0.0;
  double residual_mean = 0.0;
  double residual_min_scaled = 0.0;  // min_i residual_i / scale_i
  double tol_residual = 0.0;
  int exits_region = 0;
  Verdict verdict = Verdict::kInconclusive;
  std::vector<std::string> flags{};
  // Worst sample for refuted / no-contraction verdicts.
  std::optional<Point> witness{};
};

struct CertifyOptions {
  uint64_t seed = 42;
  int workers = 1;
  // Residuals are accepted down to -tol_residual * max(1, |f - f*|, dist^2).
  double tol_residual = 1e-9;
  // Replaces the catalog smoothness constant.
  std::optional<double> gamma;
  bool gamma_estimated = false;
};

// Samples n points of the region (stream seed ^ i for sample i), takes one
// RGD step from each, measures the worst contraction c_obs, reconstructs
// (a, mu) with delta_bar evaluated at the region radius, and evaluates the
// weak-strong-convexity residual at every sample.
//
// Throws Error(kDomain / kInvalidArgument) for violated preconditions: region
// not centered at the minimizer, eta > 2/gamma when k_max > 0, n_samples < 1.
// Per-sample numerical failures become flags and an inconclusive verdict.
WscCertificate CertifyRegion(const Objective& obj, const Region& region,
                             double eta, int n_samples,
                             const CertifyOptions& options = {});

// (f(x) - f(x*)) - |grad f(x)|^2 / (2 gamma).
double WeakerSmoothnessResidual(const Objective& obj, const Point& x,
                                double gamma);

// dist^2(x, x*) - (2 / gamma) (f(x) - f(x*)).
double DistanceGrowthResidual(const Objective& obj, const Point& x,
                              double gamma);

// f(x) + <grad f(x), log_x(y)> + (gamma/2) dist^2(x, y) - f(y).
double DescentLemmaResidual(const Objective& obj, const Point& x,
                            const Point& y, double gamma);

// |(x - eta A^{-1} grad f(x)) - RgdStep on (R^n, <.,.>_A)|_inf for a
// Euclidean quadratic objective. The explicit route uses an LU solve, the
// Riemannian route the flat-metric gradient. Throws kInvalidArgument for a
// non-SPD A.
double PreconditionedEquivalence(const QuadraticObjective& obj,
                                 const Eigen::MatrixXd& A, const Point& x,
                                 double eta);

struct TranslatedConstants {
  double gamma_a;  // gamma / lambda_min(A)
  double mu_a;     // mu / lambda_max(A)
  double lambda_min;
  double lambda_max;
};

// Euclidean smoothness / weak-strong-convexity constants expressed in the
// A-metric. Throws kInvalidArgument for a non-SPD A.
TranslatedConstants TranslateConstants(const Eigen::MatrixXd& A,
                                       double gamma_euclidean,
                                       double mu_euclidean);

}  // namespace wsc

#endif  // WSC_CERTIFIER_H_
