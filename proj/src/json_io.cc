/*
 * Copyright 2026 The PPTree Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pptree/json_io.h"

#include <string>

#include "pptree/error.h"

namespace pptree {

using nlohmann::json;

SimSpec SimSpecFromJson(const json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "simulation spec must be an object");
  }
  SimSpec spec;
  try {
    if (doc.contains("scenario")) {
      spec.scenario = ParseScenario(doc.at("scenario").get<std::string>());
    }
    if (doc.contains("n")) spec.n = doc.at("n").get<int>();
    if (doc.contains("k")) spec.k = doc.at("k").get<int>();
    if (doc.contains("separation")) spec.separation = doc.at("separation").get<double>();
    if (doc.contains("correlation")) spec.correlation = doc.at("correlation").get<double>();
    if (doc.contains("outlier_fraction")) {
      spec.outlier_fraction = doc.at("outlier_fraction").get<double>();
    }
    if (doc.contains("overlap")) spec.overlap = doc.at("overlap").get<double>();
    if (doc.contains("max_overlap") && !doc.at("max_overlap").is_null()) {
      spec.max_overlap = doc.at("max_overlap").get<double>();
    }
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("invalid simulation spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

json SimSpecToJson(const SimSpec& spec) {
  json out;
  out["scenario"] = ScenarioName(spec.scenario);
  out["n"] = spec.n;
  out["k"] = spec.k;
  out["separation"] = spec.separation;
  out["correlation"] = spec.correlation;
  out["outlier_fraction"] = spec.outlier_fraction;
  out["overlap"] = spec.overlap;
  out["max_overlap"] = spec.max_overlap ? json(*spec.max_overlap) : json(nullptr);
  out["seed"] = spec.seed;
  return out;
}

json DatasetToJson(const Dataset& data) {
  json out;
  out["n"] = data.rows();
  out["p"] = data.cols();
  out["classes"] = data.class_names;
  out["feature_names"] = data.feature_names;
  json points = json::array();
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    json point = json::array();
    for (Eigen::Index j = 0; j < data.cols(); ++j) point.push_back(data.features(i, j));
    point.push_back(data.labels[static_cast<std::size_t>(i)]);
    points.push_back(std::move(point));
  }
  out["points"] = std::move(points);
  return out;
}

}  // namespace pptree
