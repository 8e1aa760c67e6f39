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

#ifndef PPTREE_SERVICE_API_H_
#define PPTREE_SERVICE_API_H_

#include <memory>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pptree/service/session_store.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace pptree::service {

inline constexpr int kApiSchemaVersion = 1;
inline constexpr int kMaxPoints = 50000;
inline constexpr int kMaxResolution = 501;
inline constexpr int kMaxBenchRepetitions = 200;

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// JSON API behind the HTTP server. Routes:
//
//   GET  /health
//   POST /simulate   SimSpec                     -> dataset id + points
//   POST /fit        {dataset_id, variant, ...}  -> model id + summary + model
//   POST /boundary   {model_id, resolution}      -> lattice labels + border mask
//   POST /bench      BenchSpec (simulated data)  -> report
//   GET  /models/<id>                            -> model document
//
// Every body carries "schema_version". Failures return
// {"schema_version", "error": {"code", "message"}} with status 400 (bad
// request), 404 (unknown id or route), 405 (wrong method) or 422 (fit or
// boundary failure).
class Api {
 public:
  explicit Api(SessionStore& store) : store_(store) {}

  ApiResponse Handle(std::string_view method, std::string_view path,
                     std::string_view body);

  ApiResponse Health();
  ApiResponse Simulate(const nlohmann::json& request);
  ApiResponse Fit(const nlohmann::json& request);
  ApiResponse Boundary(const nlohmann::json& request);
  ApiResponse Bench(const nlohmann::json& request);
  ApiResponse GetModel(const std::string& id);

 private:
  SessionStore& store_;
};

// HTTP front end for an Api. Every method and path is handed to
// Api::Handle, so unknown routes also answer with a JSON error.
class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds host:port; port 0 picks a free port. Returns the bound port or -1.
  int Bind(const std::string& host, int port);
  // Serves until Stop(). Returns false if the server failed.
  bool Run();
  void Stop();

 private:
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace pptree::service

#endif  // PPTREE_SERVICE_API_H_
