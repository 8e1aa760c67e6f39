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

#ifndef PPTREE_MODEL_IO_H_
#define PPTREE_MODEL_IO_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pptree/tree.h"

namespace pptree {

inline constexpr int kModelFormatVersion = 1;

// Model document:
//
//   {"format": "pptree-model", "version": 1, "variant": "mod2",
//    "classes": [1, 2], "class_names": ["a", "b"], "n_features": 2,
//    "config": {...}, "warnings": [...],
//    "root": {"alpha": [...], "c": 0.5, "rule": 1 | "entropy",
//             "left": {...}, "right": {...}} | {"label": 2, ...}}
//
// Doubles are written in shortest round-trip form, so alpha and c survive a
// round trip bit for bit.
nlohmann::json ModelToJson(const FittedTree& tree);
std::string SerializeModel(const FittedTree& tree);

// Throws kParse on malformed, truncated or unknown-version documents. No
// partially built tree is ever returned.
FittedTree ModelFromJson(const nlohmann::json& doc);
FittedTree DeserializeModel(std::string_view text);

nlohmann::json FitConfigToJson(const FitConfig& config);
// Missing keys keep their defaults. Throws kInvalidArgument on bad values.
FitConfig FitConfigFromJson(const nlohmann::json& doc);

}  // namespace pptree

#endif  // PPTREE_MODEL_IO_H_
