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

#include "pptree/dataset.h"

#include <algorithm>
#include <string>

#include "pptree/error.h"

namespace pptree {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kDegenerateGrouping:
      return "degenerate_grouping";
    case ErrorCode::kNoVariation:
      return "no_variation";
    case ErrorCode::kSingularScatter:
      return "singular_scatter";
    case ErrorCode::kNoSeparation:
      return "no_separation";
    case ErrorCode::kEmptyGroup:
      return "empty_group";
    case ErrorCode::kEmptySubset:
      return "empty_subset";
    case ErrorCode::kNoCandidateSplits:
      return "no_candidate_splits";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kParse:
      return "parse_error";
    case ErrorCode::kIo:
      return "io_error";
    case ErrorCode::kNotFound:
      return "not_found";
  }
  return "unknown";
}

void ValidateDataset(const Dataset& data) {
  if (static_cast<Eigen::Index>(data.labels.size()) != data.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "dataset has " + std::to_string(data.rows()) + " rows but " +
                    std::to_string(data.labels.size()) + " labels");
  }
  if (!data.feature_names.empty() &&
      static_cast<Eigen::Index>(data.feature_names.size()) != data.cols()) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature_names does not match the number of columns");
  }
  const int num_classes = data.num_classes();
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    const int label = data.labels[i];
    if (label < 1 || label > num_classes) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label " + std::to_string(label) + " at row " +
                      std::to_string(i + 1) + " is outside 1.." +
                      std::to_string(num_classes));
    }
  }
  if (!data.features.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "features must be finite");
  }
}

Dataset MakeDataset(Eigen::MatrixXd features, std::vector<int> labels) {
  Dataset data;
  data.features = std::move(features);
  data.labels = std::move(labels);
  int max_label = 0;
  for (int label : data.labels) max_label = std::max(max_label, label);
  for (int g = 1; g <= max_label; ++g) {
    data.class_names.push_back(std::to_string(g));
  }
  for (Eigen::Index j = 0; j < data.features.cols(); ++j) {
    data.feature_names.push_back("x" + std::to_string(j + 1));
  }
  ValidateDataset(data);
  return data;
}

Dataset SubsetRows(const Dataset& data, std::span<const int> rows) {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), data.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = data.features.row(rows[i]);
    out.labels.push_back(data.labels[rows[i]]);
  }
  out.class_names = data.class_names;
  out.feature_names = data.feature_names;
  return out;
}

std::vector<int> DistinctLabels(std::span<const int> labels) {
  std::vector<int> out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> ClassCounts(std::span<const int> labels, int num_classes) {
  std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
  for (int label : labels) ++counts[static_cast<std::size_t>(label - 1)];
  return counts;
}

}  // namespace pptree
