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

#include "wsc/certifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <thread>

#include "wsc/curvature.h"
#include "wsc/error.h"
#include "wsc/optimizer.h"

namespace wsc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double WscResidual(const Objective& obj, const Point& x, double a, double mu) {
  if (!(a > 0.0) || !(mu > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "a and mu must be positive");
  }
  const Point& xstar = obj.minimizer();
  const Tangent to_min = Log(x, xstar);
  const double d = Norm(to_min);
  const double gap = obj.Value(x) - obj.Value(xstar);
  return Inner(x, obj.Gradient(x), -to_min) / a - 0.5 * mu * d * d - gap;
}

ConverseParameters ComputeConverseParameters(double c, double gamma,
                                             double eta, double delta_bar) {
  if (!(c > 0.0 && c <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "contraction rate c must lie in (0, 1]");
  }
  if (!(gamma > 0.0) || !(eta > 0.0) || !std::isfinite(gamma) ||
      !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gamma and eta must be positive and finite");
  }
  if (!(delta_bar > 0.0 && delta_bar <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta_bar must lie in (0, 1]");
  }
  const double a =
      c / (2.0 * gamma * eta * (1.0 - 0.5 * std::sqrt(delta_bar * c)));
  return {a, 0.5 * gamma};
}

ConsistencyReport CheckConsistency(double a, double mu, double eta, double c) {
  constexpr double kRel = 1e-12;
  ConsistencyReport r{};
  r.a_mu_eta = a * mu * eta;
  r.ratio = c > 0.0 ? r.a_mu_eta / c : std::numeric_limits<double>::infinity();
  r.within_rate = r.a_mu_eta <= c * (1.0 + kRel);
  const double flat = c / (4.0 * (1.0 - 0.5 * std::sqrt(c)));
  r.matches_flat_converse =
      std::abs(r.a_mu_eta - flat) <= kRel * std::max(std::abs(flat), 1e-300);
  r.within_quarter_half_band =
      r.a_mu_eta >= 0.25 * c * (1.0 - kRel) && r.a_mu_eta <= 0.5 * c * (1.0 + kRel);
  return r;
}

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kCertified: return "certified";
    case Verdict::kRefuted: return "refuted";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Runs fn(i) for i in [0, n) on `workers` threads. Each index is handled by
// exactly one worker and writes only its own output slot.
template <typename Fn>
void ParallelFor(int n, int workers, Fn&& fn) {
  workers = std::clamp(workers, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Fixed-shape pairwise summation; the result depends only on the input order.
double PairwiseSum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const size_t half = v.size() / 2;
  return PairwiseSum(v.first(half)) + PairwiseSum(v.subspan(half));
}

struct SampleResult {
  std::optional<Point> x;
  double dist = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  double grad_norm = 0.0;
  bool exits = false;
  std::string error;  // empty unless the step failed
  double residual = 0.0;
  double scale = 1.0;
};

}  // namespace

WscCertificate CertifyRegion(const Objective& obj, const Region& region,
                             double eta, int n_samples,
                             const CertifyOptions& options) {
  if (n_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_samples must be >= 1");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument, "eta must be positive and finite");
  }
  if (region.center().manifold() != obj.manifold()) {
    throw Error(ErrorCode::kManifoldMismatch,
                "region and objective live on different manifolds");
  }
  const Point& xstar = obj.minimizer();
  if (Dist(region.center(), xstar) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "region must be centered at the objective's minimizer");
  }
  const double gamma = options.gamma.value_or(obj.metadata().gamma);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument,
                "smoothness constant gamma must be positive and finite");
  }
  const CurvatureProfile curv = obj.manifold().curvature();
  if (curv.k_max > 0.0 && eta > 2.0 / gamma * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kDomain,
                "eta = " + std::to_string(eta) +
                    " exceeds 2/gamma, required on positively curved "
                    "manifolds");
  }

  WscCertificate cert{.objective_id = obj.id(), .region = region};
  cert.seed = options.seed;
  cert.n_samples = n_samples;
  cert.eta_used = eta;
  cert.gamma_used = gamma;
  cert.gamma_source = !options.gamma ? "analytic"
                      : options.gamma_estimated ? "estimated"
                                                : "override";
  cert.tol_residual = options.tol_residual;
  cert.delta_bar_used = DeltaBar(curv.k_max, region.radius());
  cert.flags.push_back("sampled-universal");
  cert.flags.push_back("gamma-source:" + cert.gamma_source);
  if (obj.id() == "rayleigh_sphere") cert.flags.push_back("antipode-excluded");

  const double f_star = obj.Value(xstar);
  std::vector<SampleResult> samples(n_samples);

  // Phase 1: sample and step.
  ParallelFor(n_samples, options.workers, [&](int i) {
    SampleResult& s = samples[i];
    std::mt19937_64 rng(options.seed ^ static_cast<uint64_t>(i));
    s.x = SampleStratified(region, i, n_samples, rng);
    s.dist = Dist(*s.x, xstar);
    try {
      s.grad_norm = Norm(obj.Gradient(*s.x));
      if (s.dist < kConvergedDistance) return;
      const Point next = RgdStep(obj, *s.x, eta);
      const double d1 = Dist(next, xstar);
      s.ratio = (d1 * d1) / (s.dist * s.dist);
      s.exits = d1 > region.radius() + 1e-9;
    } catch (const Error& e) {
      s.error = std::string(ErrorCodeName(e.code()));
    }
  });

  int worst = -1;
  int failed = 0;
  int measured = 0;
  bool critical = false;
  for (int i = 0; i < n_samples; ++i) {
    const SampleResult& s = samples[i];
    cert.exits_region += s.exits;
    if (!s.error.empty()) {
      if (failed++ == 0) worst = i;
      continue;
    }
    if (s.dist > 1e-6 && s.grad_norm < 1e-6) critical = true;
    if (std::isnan(s.ratio)) continue;
    ++measured;
    if (failed == 0 && (worst < 0 || s.ratio > samples[worst].ratio)) worst = i;
  }
  if (cert.exits_region > 0) {
    cert.flags.push_back("iterate-exits-region:" +
                         std::to_string(cert.exits_region));
  }
  if (critical) cert.flags.push_back("second-critical-point");

  if (failed > 0) {
    cert.flags.push_back("step-error:" + samples[worst].error + ":" +
                         std::to_string(failed));
    cert.flags.push_back("no-contraction");
    cert.witness = samples[worst].x;
    cert.verdict = Verdict::kInconclusive;
    return cert;
  }

  if (measured == 0) {
    // Every sample sits on x*: the inequality is vacuous there.
    cert.flags.push_back("degenerate-region");
    cert.c_obs = 1.0;
  } else {
    cert.worst_ratio = samples[worst].ratio;
    cert.c_obs = std::clamp(1.0 - cert.worst_ratio, 0.0, 1.0);
    if (cert.worst_ratio > 1.0 + kDivergenceTolerance ||
        cert.c_obs < kMinContraction) {
      cert.flags.push_back("no-contraction");
      cert.witness = samples[worst].x;
      cert.verdict = Verdict::kInconclusive;
      return cert;
    }
  }

  const ConverseParameters params =
      ComputeConverseParameters(cert.c_obs, gamma, eta, cert.delta_bar_used);
  cert.a = params.a;
  cert.mu = params.mu;
  const ConsistencyReport consistency =
      CheckConsistency(params.a, params.mu, eta, cert.c_obs);
  cert.a_mu_eta = consistency.a_mu_eta;
  if (!consistency.within_rate) cert.flags.push_back("rate-consistency-violated");

  // Phase 2: residuals.
  ParallelFor(n_samples, options.workers, [&](int i) {
    SampleResult& s = samples[i];
    try {
      s.residual = WscResidual(obj, *s.x, params.a, params.mu);
      const double gap = obj.Value(*s.x) - f_star;
      s.scale = std::max({1.0, std::abs(gap), s.dist * s.dist});
    } catch (const Error& e) {
      s.error = std::string(ErrorCodeName(e.code()));
    }
  });
  for (int i = 0; i < n_samples; ++i) {
    if (samples[i].error.empty()) continue;
    cert.flags.push_back("residual-error:" + samples[i].error);
    cert.witness = samples[i].x;
    cert.verdict = Verdict::kInconclusive;
    return cert;
  }

  std::vector<double> residuals(n_samples);
  int argmin = 0;
  cert.residual_min = std::numeric_limits<double>::infinity();
  cert.residual_min_scaled = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    residuals[i] = samples[i].residual;
    cert.residual_min = std::min(cert.residual_min, samples[i].residual);
    const double scaled = samples[i].residual / samples[i].scale;
    if (scaled < cert.residual_min_scaled) {
      cert.residual_min_scaled = scaled;
      argmin = i;
    }
  }
  cert.residual_mean = PairwiseSum(residuals) / n_samples;

  if (cert.residual_min_scaled >= -options.tol_residual) {
    cert.verdict = Verdict::kCertified;
  } else {
    cert.verdict = Verdict::kRefuted;
    cert.witness = samples[argmin].x;
  }
  return cert;
}

double WeakerSmoothnessResidual(const Objective& obj, const Point& x,
                                double gamma) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  const double g = Norm(obj.Gradient(x));
  return (obj.Value(x) - obj.MinValue()) - g * g / (2.0 * gamma);
}

double DistanceGrowthResidual(const Objective& obj, const Point& x,
                              double gamma) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  const double d = Dist(x, obj.minimizer());
  return d * d - (2.0 / gamma) * (obj.Value(x) - obj.MinValue());
}

double DescentLemmaResidual(const Objective& obj, const Point& x,
                            const Point& y, double gamma) {
  const Tangent xy = Log(x, y);
  const double d = Norm(xy);
  return obj.Value(x) + Inner(x, obj.Gradient(x), xy) + 0.5 * gamma * d * d -
         obj.Value(y);
}

namespace {

// Returns (lambda_min, lambda_max); throws unless A is symmetric positive
// definite.
std::pair<double, double> SpdSpectrum(const MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() == 0 || !A.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                "A must be a finite non-empty square matrix");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidArgument, "A is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (A + A.transpose()),
                                             Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (!(lo > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "A is not positive definite");
  }
  return {lo, es.eigenvalues().maxCoeff()};
}

}  // namespace

double PreconditionedEquivalence(const QuadraticObjective& obj,
                                 const MatrixXd& A, const Point& x,
                                 double eta) {
  SpdSpectrum(A);
  if (obj.manifold().kind() != ManifoldKind::kEuclidean) {
    throw Error(ErrorCode::kInvalidArgument,
                "preconditioned equivalence needs a Euclidean objective");
  }
  const VectorXd explicit_step =
      x.coords() - eta * A.partialPivLu().solve(obj.EuclideanGradient(x.coords()));

  const Manifold flat = Manifold::FlatMetric(A);
  const QuadraticObjective lifted(flat, obj.q(), obj.minimizer().coords());
  const Point riemannian = RgdStep(lifted, Point(flat, x.coords()), eta);
  return (explicit_step - riemannian.coords()).cwiseAbs().maxCoeff();
}

TranslatedConstants TranslateConstants(const MatrixXd& A,
                                       double gamma_euclidean,
                                       double mu_euclidean) {
  const auto [lo, hi] = SpdSpectrum(A);
  return {gamma_euclidean / lo, mu_euclidean / hi, lo, hi};
}

}  // namespace wsc
