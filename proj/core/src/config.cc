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

#include "wsc/config.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "wsc/curvature.h"
#include "wsc/error.h"
#include "wsc/serialization.h"

namespace wsc {

using Json = nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kConfig, field + ": " + what);
}

double PositiveNumber(const Json& j, const std::string& field) {
  if (!j.is_number() || !(j.get<double>() > 0.0) ||
      !std::isfinite(j.get<double>())) {
    Fail(field, "must be a positive finite number");
  }
  return j.get<double>();
}

int PositiveInt(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1 ||
      j.get<long long>() > std::numeric_limits<int>::max()) {
    Fail(field, "must be a positive integer");
  }
  return j.get<int>();
}

}  // namespace

ExperimentConfig ParseConfig(const Json& j) {
  if (!j.is_object()) Fail("config", "top level must be a JSON object");
  static const std::set<std::string> kKnown = {
      "manifold", "objective", "region",     "eta",     "gamma",
      "n_samples", "n_steps",  "seed",       "workers", "x0",
      "tolerances", "output"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.count(key)) Fail(key, "unknown field");
  }

  ExperimentConfig c;
  if (!j.contains("manifold")) Fail("manifold", "required field is missing");
  c.manifold = ManifoldFromJson(j["manifold"]);

  if (!j.contains("objective") || !j["objective"].is_object()) {
    Fail("objective", "required object is missing");
  }
  const Json& obj = j["objective"];
  if (!obj.contains("id") || !obj["id"].is_string()) {
    Fail("objective.id", "required string field");
  }
  c.objective_id = obj["id"].get<std::string>();
  if (obj.contains("params")) {
    if (!obj["params"].is_object()) Fail("objective.params", "must be an object");
    c.objective_params = obj["params"];
  }

  if (!j.contains("region") || !j["region"].is_object() ||
      !j["region"].contains("radius")) {
    Fail("region.radius", "required field is missing");
  }
  const Json& r = j["region"]["radius"];
  if (!r.is_number() || !(r.get<double>() >= 0.0) ||
      !std::isfinite(r.get<double>())) {
    Fail("region.radius", "must be a finite number >= 0");
  }
  c.radius = r.get<double>();

  if (j.contains("eta") && !j["eta"].is_null()) {
    const Json& e = j["eta"];
    if (e.is_string()) {
      if (e.get<std::string>() != "auto") Fail("eta", "must be a number or \"auto\"");
    } else {
      c.eta = PositiveNumber(e, "eta");
    }
  }
  if (j.contains("gamma") && !j["gamma"].is_null()) {
    const Json& g = j["gamma"];
    if (g.is_string()) {
      if (g.get<std::string>() != "estimate") {
        Fail("gamma", "must be a number, null or \"estimate\"");
      }
      c.estimate_gamma = true;
    } else {
      c.gamma = PositiveNumber(g, "gamma");
    }
  }
  if (j.contains("n_samples")) c.n_samples = PositiveInt(j["n_samples"], "n_samples");
  if (j.contains("n_steps")) c.n_steps = PositiveInt(j["n_steps"], "n_steps");
  if (j.contains("workers")) c.workers = PositiveInt(j["workers"], "workers");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) Fail("seed", "must be an unsigned 64-bit integer");
    c.seed = j["seed"].get<uint64_t>();
  }
  if (j.contains("x0") && !j["x0"].is_null()) {
    try {
      c.x0 = VectorFromJson(j["x0"]);
    } catch (const Error& e) {
      Fail("x0", e.what());
    }
  }
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (!t.is_object()) Fail("tolerances", "must be an object");
    for (const auto& [key, value] : t.items()) {
      if (key != "residual") Fail("tolerances." + key, "unknown tolerance");
      c.tol_residual = PositiveNumber(value, "tolerances.residual");
    }
  }
  if (j.contains("output")) {
    const Json& o = j["output"];
    if (!o.is_object()) Fail("output", "must be an object");
    for (const auto& [key, value] : o.items()) {
      if (key != "dir") Fail("output." + key, "unknown field");
      if (!value.is_string() || value.get<std::string>().empty()) {
        Fail("output.dir", "must be a non-empty string");
      }
      c.output_dir = value.get<std::string>();
    }
  }
  return c;
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("--config", "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    Fail("--config", std::string("invalid JSON: ") + e.what());
  }
  return ParseConfig(j);
}

Json ConfigToJson(const ExperimentConfig& c) {
  Json j;
  j["manifold"] = ManifoldToJson(c.manifold);
  j["objective"] = {{"id", c.objective_id}, {"params", c.objective_params}};
  j["region"] = {{"radius", c.radius}};
  j["eta"] = c.eta ? Json(*c.eta) : Json("auto");
  j["gamma"] = c.estimate_gamma ? Json("estimate")
               : c.gamma        ? Json(*c.gamma)
                                : Json(nullptr);
  j["n_samples"] = c.n_samples;
  j["n_steps"] = c.n_steps;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["x0"] = c.x0 ? VectorToJson(*c.x0) : Json(nullptr);
  j["tolerances"] = {{"residual", c.tol_residual}};
  j["output"] = {{"dir", c.output_dir}};
  return j;
}

Experiment BuildExperiment(const ExperimentConfig& c) {
  std::shared_ptr<const Objective> obj =
      MakeObjective(c.objective_id, c.manifold, c.objective_params);

  const CurvatureProfile curv = c.manifold.curvature();
  if (c.radius >= MaxRegionRadius(curv.k_max)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "radius " << c.radius
        << " violates the positive-curvature domain restriction "
           "radius < pi/(4 sqrt(k_max)) = "
        << MaxRegionRadius(curv.k_max) + 1e-9;
    Fail("region.radius", msg.str());
  }
  Region region(obj->minimizer(), c.radius);

  double gamma = obj->metadata().gamma;
  std::string source = "analytic";
  if (c.gamma) {
    gamma = *c.gamma;
    source = "override";
  } else if (c.estimate_gamma) {
    std::mt19937_64 rng(c.seed);
    gamma = EstimateGamma(*obj, region, c.n_samples, rng);
    source = "estimated";
  }
  if (!(gamma > 0.0)) {
    Fail("gamma", "smoothness constant is zero; supply a positive gamma");
  }

  const double a = obj->metadata().analytic_a.value_or(1.0);
  const double zeta = Zeta(curv.k_min, c.radius);
  StepSizePolicy policy;
  if (c.eta) {
    policy = StepSizePolicy::Fixed(*c.eta);
    if (curv.k_max > 0.0 && *c.eta > 2.0 / gamma) {
      Fail("eta", "must not exceed 2/gamma on a positively curved manifold");
    }
  } else if (curv.k_max > 0.0) {
    policy = StepSizePolicy::Thm2Guard(a, gamma, zeta);
  } else {
    policy = StepSizePolicy::Prop2(a, gamma, zeta);
  }
  return Experiment{obj, region, policy, policy.Resolve(), gamma, source};
}

}  // namespace wsc
