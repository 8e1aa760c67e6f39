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

#ifndef PPTREE_SERVICE_SESSION_STORE_H_
#define PPTREE_SERVICE_SESSION_STORE_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "pptree/boundary.h"
#include "pptree/dataset.h"
#include "pptree/tree.h"

namespace pptree::service {

struct StoredModel {
  FittedTree tree;
  std::string dataset_id;
  // Box of the training data, shared by every model fitted on that dataset.
  BoundingBox bbox;
  double training_error = 0.0;
};

// In-memory datasets and models keyed by id, evicted `ttl` after creation.
// All members are safe to call concurrently; values are immutable once
// stored and handed out as shared pointers.
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionStore(std::chrono::seconds ttl = std::chrono::hours(1),
                        std::function<Clock::time_point()> now = Clock::now);

  const std::string& session_id() const { return session_id_; }

  std::string PutDataset(Dataset data);
  // nullptr for unknown or expired ids.
  std::shared_ptr<const Dataset> GetDataset(const std::string& id);

  std::string PutModel(StoredModel model);
  std::shared_ptr<const StoredModel> GetModel(const std::string& id);

  std::size_t size();

 private:
  template <typename T>
  struct Entry {
    std::shared_ptr<const T> value;
    Clock::time_point created;
  };

  // Caller holds mu_.
  void EvictExpiredLocked();
  std::string NextIdLocked(const char* prefix);

  const std::chrono::seconds ttl_;
  const std::function<Clock::time_point()> now_;
  const std::string session_id_;
  std::mutex mu_;
  std::uint64_t counter_ = 0;
  std::map<std::string, Entry<Dataset>> datasets_;
  std::map<std::string, Entry<StoredModel>> models_;
};

}  // namespace pptree::service

#endif  // PPTREE_SERVICE_SESSION_STORE_H_
