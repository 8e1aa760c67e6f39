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

#include "pptree/service/api.h"

#include <httplib.h>

#include "pptree/bench.h"
#include "pptree/error.h"
#include "pptree/json_io.h"
#include "pptree/model_io.h"
#include "pptree/simulate.h"

namespace pptree::service {
namespace {

using nlohmann::json;

ApiResponse Ok(json body) {
  body["schema_version"] = kApiSchemaVersion;
  return {200, std::move(body)};
}

ApiResponse Fail(int status, std::string_view code, const std::string& message) {
  json body;
  body["schema_version"] = kApiSchemaVersion;
  body["error"] = {{"code", code}, {"message", message}};
  return {status, std::move(body)};
}

std::string RequireString(const json& request, const char* key) {
  const auto it = request.find(key);
  if (it == request.end() || !it->is_string()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

json BoxToJson(const BoundingBox& box) {
  json out = json::array();
  for (const auto& [lo, hi] : box) out.push_back({lo, hi});
  return out;
}

json TreeSummary(const FittedTree& tree, double training_error) {
  json out;
  out["variant"] = VariantName(tree.variant);
  out["n_internal"] = tree.num_internal();
  out["n_leaves"] = tree.num_leaves();
  out["depth"] = tree.depth();
  out["training_error"] = training_error;
  out["warnings"] = tree.warnings;
  if (!tree.root().is_leaf) {
    out["root_split"] = {{"alpha", tree.root().alpha}, {"c", tree.root().c}};
  }
  return out;
}

}  // namespace

ApiResponse Api::Handle(std::string_view method, std::string_view path,
                        std::string_view body) {
  try {
    const bool is_get_route = path == "/health" || path.starts_with("/models/");
    const bool is_post_route = path == "/simulate" || path == "/fit" ||
                               path == "/boundary" || path == "/bench";
    if (!is_get_route && !is_post_route) {
      return Fail(404, "not_found", "unknown route " + std::string(path));
    }
    const std::string_view expected = is_get_route ? "GET" : "POST";
    if (method != expected) {
      return Fail(405, "method_not_allowed",
                  std::string(path) + " expects " + std::string(expected));
    }
    if (path == "/health") return Health();
    if (is_get_route) return GetModel(std::string(path.substr(8)));
    json request;
    try {
      request = json::parse(body);
    } catch (const json::parse_error& e) {
      return Fail(400, "bad_request", std::string("invalid JSON: ") + e.what());
    }
    if (!request.is_object()) {
      return Fail(400, "bad_request", "request body must be a JSON object");
    }
    if (path == "/simulate") return Simulate(request);
    if (path == "/fit") return Fit(request);
    if (path == "/boundary") return Boundary(request);
    return Bench(request);
  } catch (const Error& e) {
    return Fail(400, ErrorCodeName(e.code()), e.what());
  } catch (const json::exception& e) {
    return Fail(400, "bad_request", e.what());
  }
}

ApiResponse Api::Health() {
  return Ok({{"status", "ok"}, {"session_id", store_.session_id()}});
}

ApiResponse Api::Simulate(const json& request) {
  const SimSpec spec = SimSpecFromJson(request);
  if (spec.n > kMaxPoints) {
    return Fail(400, "invalid_argument",
                "n must be <= " + std::to_string(kMaxPoints));
  }
  Dataset data = pptree::Simulate(spec);
  json body;
  body["dataset"] = DatasetToJson(data);
  body["spec"] = SimSpecToJson(spec);
  body["warnings"] = SimWarnings(spec);
  body["dataset_id"] = store_.PutDataset(std::move(data));
  return Ok(std::move(body));
}

ApiResponse Api::Fit(const json& request) {
  const std::string dataset_id = RequireString(request, "dataset_id");
  const Variant variant = ParseVariant(RequireString(request, "variant"));
  json config_doc = request;
  config_doc.erase("dataset_id");
  config_doc.erase("variant");
  const FitConfig config = FitConfigFromJson(config_doc);

  const std::shared_ptr<const Dataset> data = store_.GetDataset(dataset_id);
  if (!data) return Fail(404, "not_found", "unknown dataset id '" + dataset_id + "'");

  StoredModel stored;
  try {
    stored.tree = pptree::Fit(*data, variant, config);
  } catch (const Error& e) {
    return Fail(422, ErrorCodeName(e.code()), e.what());
  }
  stored.dataset_id = dataset_id;
  stored.bbox = DataBoundingBox(data->features);
  stored.training_error = ErrorRate(PredictAll(stored.tree, data->features), data->labels);

  json body;
  body["dataset_id"] = dataset_id;
  body["summary"] = TreeSummary(stored.tree, stored.training_error);
  body["model"] = ModelToJson(stored.tree);
  body["model_id"] = store_.PutModel(std::move(stored));
  return Ok(std::move(body));
}

ApiResponse Api::Boundary(const json& request) {
  const std::string model_id = RequireString(request, "model_id");
  const int resolution = request.value("resolution", kDefaultResolution);
  if (resolution < 2 || resolution > kMaxResolution) {
    return Fail(400, "invalid_argument",
                "resolution must lie in 2.." + std::to_string(kMaxResolution));
  }
  const std::shared_ptr<const StoredModel> model = store_.GetModel(model_id);
  if (!model) return Fail(404, "not_found", "unknown model id '" + model_id + "'");

  BoundingBox bbox = model->bbox;
  if (const auto it = request.find("bbox"); it != request.end()) {
    bbox.clear();
    for (const json& range : *it) bbox.emplace_back(range.at(0).get<double>(), range.at(1).get<double>());
  }
  BoundaryGrid grid;
  try {
    grid = ComputeBoundaryGrid(model->tree, bbox, resolution);
  } catch (const Error& e) {
    return Fail(422, ErrorCodeName(e.code()), e.what());
  }
  json mask = json::array();
  for (bool b : grid.border_mask) mask.push_back(b ? 1 : 0);
  json body;
  body["model_id"] = model_id;
  body["dataset_id"] = model->dataset_id;
  body["bbox"] = BoxToJson(grid.bbox);
  body["resolution"] = grid.resolution;
  body["labels"] = grid.labels;
  body["border_mask"] = std::move(mask);
  body["training_error"] = model->training_error;
  return Ok(std::move(body));
}

ApiResponse Api::Bench(const json& request) {
  if (request.contains("datasets")) {
    for (const json& d : request.at("datasets")) {
      if (!d.contains("simulate")) {
        return Fail(400, "invalid_argument",
                    "the API only benchmarks simulated datasets");
      }
      if (d.at("simulate").value("n", 0) > kMaxPoints) {
        return Fail(400, "invalid_argument",
                    "n must be <= " + std::to_string(kMaxPoints));
      }
    }
  }
  const BenchSpec spec = BenchSpecFromJson(request);
  if (spec.repetitions > kMaxBenchRepetitions) {
    return Fail(400, "invalid_argument",
                "repetitions must be <= " + std::to_string(kMaxBenchRepetitions));
  }
  return Ok(ReportToJson(RunBenchmark(spec)));
}

ApiResponse Api::GetModel(const std::string& id) {
  const std::shared_ptr<const StoredModel> model = store_.GetModel(id);
  if (!model) return Fail(404, "not_found", "unknown model id '" + id + "'");
  json body;
  body["model_id"] = id;
  body["dataset_id"] = model->dataset_id;
  body["model"] = ModelToJson(model->tree);
  return Ok(std::move(body));
}

HttpServer::HttpServer(Api& api) : server_(std::make_unique<httplib::Server>()) {
  server_->set_payload_max_length(64u << 20);
  const auto route = [&api](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse out = api.Handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  const std::string any = ".*";
  server_->Get(any, route);
  server_->Post(any, route);
  server_->Put(any, route);
  server_->Patch(any, route);
  server_->Delete(any, route);
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::Run() { return server_->listen_after_bind(); }

void HttpServer::Stop() {
  if (server_->is_running()) server_->stop();
}

}  // namespace pptree::service
