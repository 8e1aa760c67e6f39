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

#ifndef PPTREE_JSON_IO_H_
#define PPTREE_JSON_IO_H_

#include <nlohmann/json.hpp>

#include "pptree/dataset.h"
#include "pptree/simulate.h"

namespace pptree {

// {"scenario": "basic", "n": 300, "k": 3, "separation": 6, "correlation": 0,
//  "outlier_fraction": 0.15, "overlap": 0.05, "max_overlap": null, "seed": 1}.
// Missing keys keep their defaults; throws kInvalidArgument on bad values.
SimSpec SimSpecFromJson(const nlohmann::json& doc);
nlohmann::json SimSpecToJson(const SimSpec& spec);

// {"n", "p", "classes": [names], "feature_names", "points": [[x.., label]]}.
nlohmann::json DatasetToJson(const Dataset& data);

}  // namespace pptree

#endif  // PPTREE_JSON_IO_H_
