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

#include "pptree/service/session_store.h"

#include <cstdio>
#include <random>

namespace pptree::service {
namespace {

std::string RandomHex() {
  std::random_device device;
  const std::uint64_t value =
      (static_cast<std::uint64_t>(device()) << 32) ^ static_cast<std::uint64_t>(device());
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

template <typename Map, typename TimePoint, typename Duration>
void EvictFrom(Map& map, TimePoint now, Duration ttl) {
  for (auto it = map.begin(); it != map.end();) {
    it = now - it->second.created >= ttl ? map.erase(it) : std::next(it);
  }
}

}  // namespace

SessionStore::SessionStore(std::chrono::seconds ttl,
                           std::function<Clock::time_point()> now)
    : ttl_(ttl), now_(std::move(now)), session_id_(RandomHex()) {}

void SessionStore::EvictExpiredLocked() {
  const Clock::time_point now = now_();
  EvictFrom(datasets_, now, ttl_);
  EvictFrom(models_, now, ttl_);
}

std::string SessionStore::NextIdLocked(const char* prefix) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s-%06llu", prefix,
                static_cast<unsigned long long>(++counter_));
  return buffer;
}

std::string SessionStore::PutDataset(Dataset data) {
  auto value = std::make_shared<const Dataset>(std::move(data));
  std::lock_guard lock(mu_);
  EvictExpiredLocked();
  std::string id = NextIdLocked("ds");
  datasets_.emplace(id, Entry<Dataset>{std::move(value), now_()});
  return id;
}

std::shared_ptr<const Dataset> SessionStore::GetDataset(const std::string& id) {
  std::lock_guard lock(mu_);
  EvictExpiredLocked();
  const auto it = datasets_.find(id);
  return it == datasets_.end() ? nullptr : it->second.value;
}

std::string SessionStore::PutModel(StoredModel model) {
  auto value = std::make_shared<const StoredModel>(std::move(model));
  std::lock_guard lock(mu_);
  EvictExpiredLocked();
  std::string id = NextIdLocked("model");
  models_.emplace(id, Entry<StoredModel>{std::move(value), now_()});
  return id;
}

std::shared_ptr<const StoredModel> SessionStore::GetModel(const std::string& id) {
  std::lock_guard lock(mu_);
  EvictExpiredLocked();
  const auto it = models_.find(id);
  return it == models_.end() ? nullptr : it->second.value;
}

std::size_t SessionStore::size() {
  std::lock_guard lock(mu_);
  EvictExpiredLocked();
  return datasets_.size() + models_.size();
}

}  // namespace pptree::service
