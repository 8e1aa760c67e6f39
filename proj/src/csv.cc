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

#include "pptree/csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "pptree/error.h"

namespace pptree {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string Where(const std::string& source, std::size_t row,
                  const std::string& column) {
  return source + ": row " + std::to_string(row) + ", column '" + column + "'";
}

}  // namespace

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(Trim(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  out.push_back(Trim(field));
  return out;
}

static Dataset ReadCsvImpl(std::istream& in, const std::string& label_column,
                           const std::string& source, bool* has_labels) {
  std::string line;
  if (!std::getline(in, line) || Trim(line).empty()) {
    throw Error(ErrorCode::kParse, source + ": empty file (no header)");
  }
  const std::vector<std::string> header = SplitCsvLine(line);
  std::size_t label_index = header.size() - 1;
  if (has_labels != nullptr) *has_labels = true;
  if (!label_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), label_column);
    if (it == header.end() && has_labels != nullptr) {
      *has_labels = false;
      label_index = header.size();
    } else if (it == header.end()) {
      throw Error(ErrorCode::kParse,
                  source + ": label column '" + label_column + "' not in header");
    } else {
      label_index = static_cast<std::size_t>(it - header.begin());
    }
  }
  const std::size_t n_features = header.size() - (label_index < header.size() ? 1 : 0);
  if (n_features < 1) {
    throw Error(ErrorCode::kParse, source + ": need at least one feature column");
  }

  Dataset data;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j != label_index) data.feature_names.push_back(header[j]);
  }
  std::unordered_map<std::string, int> class_ids;
  std::vector<std::vector<double>> rows;
  std::size_t row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParse,
                  source + ": row " + std::to_string(row_number) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(header.size()));
    }
    std::vector<double> values;
    values.reserve(n_features);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string& cell = cells[j];
      if (j == label_index) {
        if (cell.empty()) {
          throw Error(ErrorCode::kParse,
                      Where(source, row_number, header[j]) + ": missing label");
        }
        auto [it, inserted] =
            class_ids.try_emplace(cell, static_cast<int>(class_ids.size()) + 1);
        if (inserted) data.class_names.push_back(cell);
        data.labels.push_back(it->second);
        continue;
      }
      if (cell.empty()) {
        throw Error(ErrorCode::kParse,
                    Where(source, row_number, header[j]) + ": blank feature cell");
      }
      double value = 0.0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || end != cell.data() + cell.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::kParse, Where(source, row_number, header[j]) +
                                           ": non-numeric value '" + cell + "'");
      }
      values.push_back(value);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kParse, source + ": no data rows");
  }
  data.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(n_features));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return data;
}

Dataset ReadCsv(std::istream& in, const std::string& label_column,
                const std::string& source) {
  return ReadCsvImpl(in, label_column, source, nullptr);
}

Dataset LoadCsv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return ReadCsvImpl(in, label_column, path, nullptr);
}

Dataset LoadCsvOptionalLabels(const std::string& path, const std::string& label_column,
                              bool* has_labels) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return ReadCsvImpl(in, label_column, path, has_labels);
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

void WriteCsv(const Dataset& data, std::ostream& out) {
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    out << (data.feature_names.empty() ? "x" + std::to_string(j + 1)
                                       : data.feature_names[static_cast<std::size_t>(j)])
        << ',';
  }
  out << "label\n";
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      out << FormatDouble(data.features(i, j)) << ',';
    }
    out << data.class_names[static_cast<std::size_t>(data.labels[static_cast<std::size_t>(i)] - 1)]
        << '\n';
  }
}

void SaveCsv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  WriteCsv(data, out);
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace pptree
