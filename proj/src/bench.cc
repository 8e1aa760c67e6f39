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

#include "pptree/bench.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "pptree/csv.h"
#include "pptree/error.h"
#include "pptree/json_io.h"
#include "pptree/model_io.h"

namespace pptree {
namespace {

using nlohmann::json;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void Shuffle(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(v[i - 1], v[pick(rng)]);
  }
}

std::size_t TrainCount(std::size_t n, double fraction) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string FormatStat(double v) { return std::isnan(v) ? "NA" : FormatDouble(v); }

}  // namespace

void BenchSpec::Validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train_fraction must lie in (0, 1)");
  }
  if (repetitions < 1) {
    throw Error(ErrorCode::kInvalidArgument, "repetitions must be >= 1");
  }
  if (datasets.empty() || models.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "bench spec needs at least one dataset and one model");
  }
  for (const DatasetSource& source : datasets) {
    if (!source.simulate && source.csv_path.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dataset '" + source.name + "' needs 'simulate' or 'csv'");
    }
  }
  for (const ModelSpec& model : models) model.config.Validate();
}

BenchSpec BenchSpecFromJson(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "bench spec must be an object");
  }
  BenchSpec spec;
  try {
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("train_fraction")) {
      spec.train_fraction = doc.at("train_fraction").get<double>();
    }
    if (doc.contains("repetitions")) spec.repetitions = doc.at("repetitions").get<int>();
    if (doc.contains("stratified")) spec.stratified = doc.at("stratified").get<bool>();
    if (doc.contains("parallelism")) spec.parallelism = doc.at("parallelism").get<int>();
    for (const json& d : doc.at("datasets")) {
      DatasetSource source;
      source.name = d.at("name").get<std::string>();
      if (d.contains("simulate")) {
        source.simulate = SimSpecFromJson(d.at("simulate"));
      } else {
        std::filesystem::path path = d.at("csv").get<std::string>();
        if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
        source.csv_path = path.string();
        if (d.contains("label_column")) {
          source.label_column = d.at("label_column").get<std::string>();
        }
      }
      spec.datasets.push_back(std::move(source));
    }
    for (const json& m : doc.at("models")) {
      ModelSpec model;
      model.variant = ParseVariant(m.at("variant").get<std::string>());
      model.name = m.value("name", std::string(VariantName(model.variant)));
      json config = m;
      config.erase("name");
      config.erase("variant");
      model.config = FitConfigFromJson(config);
      spec.models.push_back(std::move(model));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("invalid bench spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

BenchSpec LoadBenchSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
  return BenchSpecFromJson(doc, std::filesystem::path(path).parent_path().string());
}

Holdout HoldoutSplit(std::span<const int> labels, double fraction,
                     std::uint64_t seed, bool stratified) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train fraction must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::vector<char> in_train(labels.size(), 0);
  if (!stratified) {
    std::vector<int> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    Shuffle(order, rng);
    const std::size_t n_train = TrainCount(labels.size(), fraction);
    for (std::size_t i = 0; i < n_train; ++i) in_train[static_cast<std::size_t>(order[i])] = 1;
  } else {
    for (int label : DistinctLabels(labels)) {
      std::vector<int> members;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) members.push_back(static_cast<int>(i));
      }
      Shuffle(members, rng);
      const std::size_t n_train = std::max<std::size_t>(1, TrainCount(members.size(), fraction));
      for (std::size_t i = 0; i < n_train; ++i) in_train[static_cast<std::size_t>(members[i])] = 1;
    }
  }
  Holdout out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (in_train[i] ? out.train : out.test).push_back(static_cast<int>(i));
  }
  if (out.train.empty() || out.test.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "train fraction " + FormatDouble(fraction) + " on " +
                    std::to_string(labels.size()) + " rows leaves an empty part");
  }
  return out;
}

std::pair<Dataset, Dataset> SplitDataset(const Dataset& data, double fraction,
                                         std::uint64_t seed, bool stratified) {
  const Holdout split = HoldoutSplit(data.labels, fraction, seed, stratified);
  return {SubsetRows(data, split.train), SubsetRows(data, split.test)};
}

double ErrorRate(std::span<const int> predictions, std::span<const int> truth) {
  if (predictions.size() != truth.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "predictions and truth differ in length");
  }
  if (truth.empty()) throw Error(ErrorCode::kInvalidArgument, "no predictions");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += predictions[i] != truth[i];
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

std::uint64_t RepetitionSeed(std::uint64_t seed, std::size_t dataset, int rep) {
  std::uint64_t h = SplitMix64(seed);
  h = SplitMix64(h ^ (static_cast<std::uint64_t>(dataset) + 1));
  return SplitMix64(h ^ (static_cast<std::uint64_t>(rep) + 1));
}

int ResolveParallelism(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MAX_PARALLELISM")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BenchReport RunBenchmark(const BenchSpec& spec) {
  spec.Validate();
  std::vector<Dataset> datasets;
  std::vector<std::string> load_errors(spec.datasets.size());
  for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
    const DatasetSource& source = spec.datasets[d];
    try {
      datasets.push_back(source.simulate
                             ? Simulate(*source.simulate)
                             : LoadCsv(source.csv_path, source.label_column));
    } catch (const Error& e) {
      datasets.emplace_back();
      load_errors[d] = e.what();
    }
  }
  BenchReport report = RunBenchmark(spec, datasets);
  for (BenchCell& cell : report.cells) {
    for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
      if (cell.dataset == spec.datasets[d].name && !load_errors[d].empty()) {
        cell.message = "dataset failed to load: " + load_errors[d];
      }
    }
  }
  for (BenchRow& row : report.rows) {
    for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
      if (row.dataset == spec.datasets[d].name && !load_errors[d].empty()) {
        row.message = "dataset failed to load: " + load_errors[d];
      }
    }
  }
  return report;
}

BenchReport RunBenchmark(const BenchSpec& spec, std::span<const Dataset> datasets) {
  spec.Validate();
  if (datasets.size() != spec.datasets.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one dataset per source required");
  }
  const std::size_t n_models = spec.models.size();
  const auto reps = static_cast<std::size_t>(spec.repetitions);
  const auto cell_index = [&](std::size_t d, std::size_t m, std::size_t r) {
    return (d * n_models + m) * reps + r;
  };

  BenchReport report;
  report.cells.resize(datasets.size() * n_models * reps);
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (std::size_t m = 0; m < n_models; ++m) {
      for (std::size_t r = 0; r < reps; ++r) {
        BenchCell& cell = report.cells[cell_index(d, m, r)];
        cell.dataset = spec.datasets[d].name;
        cell.model = spec.models[m].name;
        cell.repetition = static_cast<int>(r);
      }
    }
  }

  // One task per (dataset, repetition): the split is shared by all models.
  const std::size_t n_tasks = datasets.size() * reps;
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t task = next++; task < n_tasks; task = next++) {
      const std::size_t d = task / reps;
      const std::size_t r = task % reps;
      const Dataset& data = datasets[d];
      try {
        if (data.rows() == 0) {
          throw Error(ErrorCode::kInvalidArgument, "dataset failed to load");
        }
        const auto [train, test] =
            SplitDataset(data, spec.train_fraction,
                         RepetitionSeed(spec.seed, d, static_cast<int>(r)), spec.stratified);
        for (std::size_t m = 0; m < n_models; ++m) {
          BenchCell& cell = report.cells[cell_index(d, m, r)];
          try {
            const FittedTree tree = Fit(train, spec.models[m].variant, spec.models[m].config);
            cell.error = ErrorRate(PredictAll(tree, test.features), test.labels);
            cell.ok = true;
          } catch (const Error& e) {
            cell.message = e.what();
          }
        }
      } catch (const Error& e) {
        for (std::size_t m = 0; m < n_models; ++m) {
          report.cells[cell_index(d, m, r)].message = e.what();
        }
      }
    }
  };
  const int threads = std::min<int>(ResolveParallelism(spec.parallelism),
                                    static_cast<int>(std::max<std::size_t>(1, n_tasks)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (std::size_t m = 0; m < n_models; ++m) {
      BenchRow row;
      row.dataset = spec.datasets[d].name;
      row.model = spec.models[m].name;
      row.variant = spec.models[m].variant;
      std::vector<double> errors;
      for (std::size_t r = 0; r < reps; ++r) {
        const BenchCell& cell = report.cells[cell_index(d, m, r)];
        if (cell.ok) {
          errors.push_back(cell.error);
        } else {
          ++row.failed;
          if (row.message.empty()) row.message = cell.message;
        }
      }
      row.repetitions = static_cast<int>(errors.size());
      if (errors.empty()) {
        row.mean_error = std::numeric_limits<double>::quiet_NaN();
        row.sd_error = std::numeric_limits<double>::quiet_NaN();
      } else {
        double sum = 0.0;
        for (double e : errors) sum += e;
        row.mean_error = sum / static_cast<double>(errors.size());
        double ss = 0.0;
        for (double e : errors) ss += (e - row.mean_error) * (e - row.mean_error);
        row.sd_error = errors.size() > 1
                           ? std::sqrt(ss / static_cast<double>(errors.size() - 1))
                           : 0.0;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void WriteReportCsv(const BenchReport& report, std::ostream& out) {
  out << "dataset,model,variant,mean_error,sd_error,repetitions,failed,status,message\n";
  for (const BenchRow& row : report.rows) {
    out << CsvField(row.dataset) << ',' << CsvField(row.model) << ','
        << VariantName(row.variant) << ',' << FormatStat(row.mean_error) << ','
        << FormatStat(row.sd_error) << ',' << row.repetitions << ',' << row.failed
        << ',' << (row.ok() ? "ok" : "failed") << ',' << CsvField(row.message) << '\n';
  }
}

void WriteCellsCsv(const BenchReport& report, std::ostream& out) {
  out << "dataset,model,repetition,status,error,message\n";
  for (const BenchCell& cell : report.cells) {
    out << CsvField(cell.dataset) << ',' << CsvField(cell.model) << ','
        << cell.repetition << ',' << (cell.ok ? "ok" : "failed") << ','
        << (cell.ok ? FormatDouble(cell.error) : "NA") << ',' << CsvField(cell.message)
        << '\n';
  }
}

json ReportToJson(const BenchReport& report) {
  json rows = json::array();
  for (const BenchRow& row : report.rows) {
    json r;
    r["dataset"] = row.dataset;
    r["model"] = row.model;
    r["variant"] = VariantName(row.variant);
    r["mean_error"] = std::isnan(row.mean_error) ? json(nullptr) : json(row.mean_error);
    r["sd_error"] = std::isnan(row.sd_error) ? json(nullptr) : json(row.sd_error);
    r["repetitions"] = row.repetitions;
    r["failed"] = row.failed;
    r["status"] = row.ok() ? "ok" : "failed";
    r["message"] = row.message;
    rows.push_back(std::move(r));
  }
  json cells = json::array();
  for (const BenchCell& cell : report.cells) {
    json c;
    c["dataset"] = cell.dataset;
    c["model"] = cell.model;
    c["repetition"] = cell.repetition;
    c["status"] = cell.ok ? "ok" : "failed";
    c["error"] = cell.ok ? json(cell.error) : json(nullptr);
    if (!cell.ok) c["message"] = cell.message;
    cells.push_back(std::move(c));
  }
  json out;
  out["schema_version"] = 1;
  out["rows"] = std::move(rows);
  out["cells"] = std::move(cells);
  return out;
}

}  // namespace pptree
