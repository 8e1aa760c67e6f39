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

#ifndef PPTREE_CSV_H_
#define PPTREE_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pptree/dataset.h"

namespace pptree {

// Splits one CSV record. Double-quoted fields may contain commas and "" for
// a literal quote.
std::vector<std::string> SplitCsvLine(std::string_view line);

// Reads a headed CSV file. Every column except `label_column` must be
// numeric; an empty `label_column` selects the last column. Classes are
// numbered 1..G in order of first appearance and keep their text as
// class_names. Errors name the offending row (1-based, header = row 1) and
// column.
Dataset LoadCsv(const std::string& path, const std::string& label_column = "label");
Dataset ReadCsv(std::istream& in, const std::string& label_column = "label",
                const std::string& source = "<stream>");

// As LoadCsv, but a missing label column is not an error: every column is
// then a feature, labels stay empty and *has_labels is set to false.
Dataset LoadCsvOptionalLabels(const std::string& path, const std::string& label_column,
                              bool* has_labels);

// Header `feature_names...,label`; values in round-trip precision, labels as
// class names.
void WriteCsv(const Dataset& data, std::ostream& out);
void SaveCsv(const Dataset& data, const std::string& path);

// Shortest text that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace pptree

#endif  // PPTREE_CSV_H_
