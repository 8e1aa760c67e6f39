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

#ifndef PPTREE_BENCH_H_
#define PPTREE_BENCH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pptree/dataset.h"
#include "pptree/simulate.h"
#include "pptree/tree.h"

namespace pptree {

// A benchmark dataset: simulated from a spec, or read from a CSV file.
struct DatasetSource {
  std::string name;
  std::optional<SimSpec> simulate;
  std::string csv_path;
  std::string label_column = "label";
};

struct ModelSpec {
  std::string name;
  Variant variant = Variant::kOriginal;
  FitConfig config;
};

struct BenchSpec {
  std::vector<DatasetSource> datasets;
  std::vector<ModelSpec> models;
  double train_fraction = 2.0 / 3.0;
  int repetitions = 200;
  bool stratified = false;
  std::uint64_t seed = 1;
  // Worker threads; 0 reads MAX_PARALLELISM, then falls back to the
  // hardware concurrency.
  int parallelism = 0;

  void Validate() const;
};

// Reads the bench spec file schema (see docs/interfaces.md). Relative CSV
// paths are resolved against `base_dir`.
BenchSpec BenchSpecFromJson(const nlohmann::json& doc, const std::string& base_dir = "");
BenchSpec LoadBenchSpec(const std::string& path);

struct Holdout {
  std::vector<int> train;
  std::vector<int> test;
};

// Uniform split without replacement; the training part has
// floor(fraction * n) rows. With `stratified`, each class contributes
// floor(fraction * n_g) rows (at least one) to training. Both index lists are
// ascending. Throws kInvalidArgument if either part would be empty.
Holdout HoldoutSplit(std::span<const int> labels, double fraction,
                     std::uint64_t seed, bool stratified = false);
std::pair<Dataset, Dataset> SplitDataset(const Dataset& data, double fraction,
                                         std::uint64_t seed, bool stratified = false);

// Misclassification fraction. Throws on empty input or length mismatch.
double ErrorRate(std::span<const int> predictions, std::span<const int> truth);

// Seed of repetition `rep` on dataset `dataset`: splitmix64 chained over
// seed, dataset + 1 and rep + 1.
std::uint64_t RepetitionSeed(std::uint64_t seed, std::size_t dataset, int rep);

struct BenchCell {
  std::string dataset;
  std::string model;
  int repetition = 0;
  bool ok = false;
  double error = 0.0;
  std::string message;
};

struct BenchRow {
  std::string dataset;
  std::string model;
  Variant variant = Variant::kOriginal;
  // Over successful repetitions; NaN when none succeeded.
  double mean_error = 0.0;
  double sd_error = 0.0;
  int repetitions = 0;
  int failed = 0;
  // First failure message, if any.
  std::string message;

  bool ok() const { return failed == 0; }
};

struct BenchReport {
  std::vector<BenchRow> rows;    // dataset-major, then model
  std::vector<BenchCell> cells;  // dataset, model, repetition
};

// Runs every dataset x model x repetition. Work is spread over threads but
// results are merged by (dataset, model, repetition), so the report does not
// depend on the thread count. Failed fits are recorded, not thrown.
BenchReport RunBenchmark(const BenchSpec& spec);
// As above with the datasets already materialized (one per spec.datasets).
BenchReport RunBenchmark(const BenchSpec& spec, std::span<const Dataset> datasets);

int ResolveParallelism(int requested);

void WriteReportCsv(const BenchReport& report, std::ostream& out);
void WriteCellsCsv(const BenchReport& report, std::ostream& out);
nlohmann::json ReportToJson(const BenchReport& report);

}  // namespace pptree

#endif  // PPTREE_BENCH_H_
