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

#include "pptree/service/cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pptree/bench.h"
#include "pptree/boundary.h"
#include "pptree/csv.h"
#include "pptree/error.h"
#include "pptree/model_io.h"
#include "pptree/service/api.h"
#include "pptree/simulate.h"

namespace pptree::service {
namespace {

// Writes to `path`, or to `fallback` when the path is empty.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
    stream_ = file_.get();
  }

  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

CLI::Validator RuleRange() {
  return CLI::Validator(
      [](std::string& value) -> std::string {
        try {
          std::size_t used = 0;
          const int rule = std::stoi(value, &used);
          if (used == value.size() && rule >= 1 && rule <= 8) return {};
        } catch (const std::exception&) {
        }
        return "split rule '" + value + "' is outside the valid range 1-8";
      },
      "1-8");
}

struct SimulateOptions {
  std::string scenario = "basic";
  SimSpec spec;
  std::optional<double> max_overlap;
  std::string out;
};

struct FitOptions {
  std::string data;
  std::string label_column = "label";
  std::string variant = "original";
  int rule = 1;
  std::string index = "lda";
  std::optional<double> lambda;
  FitConfig config;
  std::string out;
};

struct PredictOptions {
  std::string model;
  std::string data;
  std::string label_column = "label";
  std::string out;
};

struct BenchOptions {
  std::string spec;
  std::string out;
  std::string json_out;
  std::string cells_out;
  int parallelism = 0;
  std::optional<int> repetitions;
};

struct BoundaryOptions {
  std::string model;
  std::string data;
  std::string label_column = "label";
  int resolution = kDefaultResolution;
  int samples = 2000;
  std::uint64_t seed = 1;
  bool border_only = false;
  std::string pca_out;
  std::string out;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  int ttl_seconds = 3600;
};

int RunSimulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  SimSpec spec = opt.spec;
  spec.scenario = ParseScenario(opt.scenario);
  spec.max_overlap = opt.max_overlap;
  for (const std::string& warning : SimWarnings(spec)) err << "warning: " << warning << '\n';
  const Dataset data = Simulate(spec);
  Output sink(opt.out, out);
  WriteCsv(data, sink.stream());
  return kExitOk;
}

int RunFit(const FitOptions& opt, std::ostream& out, std::ostream& err) {
  FitConfig config = opt.config;
  config.rule = SplitRule(opt.rule);
  if (opt.index == "pda") {
    config.index = IndexConfig::Pda(opt.lambda.value_or(0.1));
  } else {
    config.index = IndexConfig::Lda();
    if (opt.lambda && *opt.lambda != 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "--lambda requires --index pda");
    }
  }
  const Dataset data = LoadCsv(opt.data, opt.label_column);
  const FittedTree tree = Fit(data, ParseVariant(opt.variant), config);
  for (const std::string& warning : tree.warnings) err << "warning: " << warning << '\n';
  const double training_error = ErrorRate(PredictAll(tree, data.features), data.labels);
  Output sink(opt.out, out);
  sink.stream() << SerializeModel(tree) << '\n';
  if (!opt.out.empty()) {
    out << "fitted " << VariantName(tree.variant) << " tree: " << tree.num_internal()
        << " splits, " << tree.num_leaves() << " leaves, training error "
        << FormatDouble(training_error) << '\n';
  }
  return kExitOk;
}

int RunPredict(const PredictOptions& opt, std::ostream& out, std::ostream& err) {
  const FittedTree tree = DeserializeModel(ReadFile(opt.model));
  bool has_labels = false;
  const Dataset data = LoadCsvOptionalLabels(opt.data, opt.label_column, &has_labels);
  const std::vector<int> predictions = PredictAll(tree, data.features);
  Output sink(opt.out, out);
  sink.stream() << "row,prediction" << (has_labels ? ",label" : "") << '\n';
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const std::string& predicted =
        tree.class_names[static_cast<std::size_t>(predictions[i] - 1)];
    sink.stream() << i + 1 << ',' << predicted;
    if (has_labels) {
      const std::string& actual = data.class_names[static_cast<std::size_t>(data.labels[i] - 1)];
      sink.stream() << ',' << actual;
      wrong += predicted != actual;
    }
    sink.stream() << '\n';
  }
  if (has_labels) {
    err << "error_rate=" << FormatDouble(static_cast<double>(wrong) / predictions.size())
        << '\n';
  }
  return kExitOk;
}

int RunBench(const BenchOptions& opt, std::ostream& out, std::ostream&) {
  BenchSpec spec = LoadBenchSpec(opt.spec);
  if (opt.parallelism > 0) spec.parallelism = opt.parallelism;
  if (opt.repetitions) spec.repetitions = *opt.repetitions;
  const BenchReport report = RunBenchmark(spec);
  {
    Output sink(opt.out, out);
    WriteReportCsv(report, sink.stream());
  }
  if (!opt.json_out.empty()) {
    Output sink(opt.json_out, out);
    sink.stream() << ReportToJson(report).dump(1) << '\n';
  }
  if (!opt.cells_out.empty()) {
    Output sink(opt.cells_out, out);
    WriteCellsCsv(report, sink.stream());
  }
  return kExitOk;
}

int RunBoundary(const BoundaryOptions& opt, std::ostream& out, std::ostream&) {
  const FittedTree tree = DeserializeModel(ReadFile(opt.model));
  bool has_labels = false;
  const Dataset data = LoadCsvOptionalLabels(opt.data, opt.label_column, &has_labels);
  if (data.cols() != tree.n_features) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model expects " + std::to_string(tree.n_features) + " features, data has " +
                    std::to_string(data.cols()));
  }
  const BoundingBox bbox = DataBoundingBox(data.features);
  Output sink(opt.out, out);
  Eigen::MatrixXd exported;
  if (tree.n_features == 2) {
    const BoundaryGrid grid = ComputeBoundaryGrid(tree, bbox, opt.resolution);
    if (opt.border_only) {
      sink.stream() << "x1,x2,label,is_border\n";
      std::vector<Eigen::Vector2d> points;
      for (std::size_t k = 0; k < grid.labels.size(); ++k) {
        if (!grid.border_mask[k]) continue;
        const Eigen::Vector2d p = grid.PointAt(k);
        points.push_back(p);
        sink.stream() << FormatDouble(p(0)) << ',' << FormatDouble(p(1)) << ','
                      << tree.class_names[static_cast<std::size_t>(grid.labels[k] - 1)]
                      << ",1\n";
      }
      exported.resize(static_cast<Eigen::Index>(points.size()), 2);
      for (std::size_t k = 0; k < points.size(); ++k) {
        exported.row(static_cast<Eigen::Index>(k)) = points[k].transpose();
      }
    } else {
      WriteGridCsv(grid, tree, sink.stream());
    }
  } else {
    const SampledBoundary sample = SampleBoundary(tree, bbox, opt.samples, opt.seed);
    if (opt.border_only) {
      SampledBoundary border;
      std::vector<int> keep;
      for (std::size_t i = 0; i < sample.border.size(); ++i) {
        if (sample.border[i]) keep.push_back(static_cast<int>(i));
      }
      border.points.resize(static_cast<Eigen::Index>(keep.size()), sample.points.cols());
      for (std::size_t k = 0; k < keep.size(); ++k) {
        border.points.row(static_cast<Eigen::Index>(k)) = sample.points.row(keep[k]);
        border.labels.push_back(sample.labels[static_cast<std::size_t>(keep[k])]);
        border.border.push_back(true);
      }
      WriteSampledCsv(border, tree, sink.stream());
      exported = border.points;
    } else {
      WriteSampledCsv(sample, tree, sink.stream());
      exported = sample.points;
    }
  }
  if (!opt.pca_out.empty()) {
    if (exported.rows() == 0) exported = data.features;
    // Principal axes of the training-domain data, applied to the exported points.
    const PcaResult pca = PcaReduce(data.features, std::min<int>(2, static_cast<int>(data.cols())));
    const Eigen::MatrixXd scores =
        (exported.rowwise() - data.features.colwise().mean()) * pca.components;
    Output pcs(opt.pca_out, out);
    for (Eigen::Index c = 0; c < scores.cols(); ++c) {
      pcs.stream() << (c ? "," : "") << "pc" << c + 1;
    }
    pcs.stream() << '\n';
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
      for (Eigen::Index c = 0; c < scores.cols(); ++c) {
        pcs.stream() << (c ? "," : "") << FormatDouble(scores(i, c));
      }
      pcs.stream() << '\n';
    }
  }
  return kExitOk;
}

int RunServe(const ServeOptions& opt, std::ostream& out, std::ostream&) {
  SessionStore store{std::chrono::seconds(opt.ttl_seconds)};
  Api api(store);
  HttpServer server(api);
  const int port = server.Bind(opt.host, opt.port);
  if (port < 0) {
    throw Error(ErrorCode::kIo, "cannot listen on " + opt.host + ":" + std::to_string(opt.port));
  }
  out << "serving on http://" << opt.host << ':' << port << std::endl;
  if (!server.Run()) throw Error(ErrorCode::kIo, "server stopped unexpectedly");
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projection pursuit classification trees"};
  app.name("pptree");
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Simulate a 2D scenario to CSV");
  simulate->add_option("--scenario", sim.scenario, "basic, outlier or mixsim")
      ->check(CLI::IsMember({"basic", "outlier", "mixsim"}));
  simulate->add_option("--n", sim.spec.n, "Number of rows")->capture_default_str();
  simulate->add_option("--k", sim.spec.k, "Number of classes")->capture_default_str();
  simulate->add_option("--seed", sim.spec.seed, "Random seed")->capture_default_str();
  simulate->add_option("--separation", sim.spec.separation, "Spacing of class means")
      ->capture_default_str();
  simulate->add_option("--correlation", sim.spec.correlation, "Within-class correlation")
      ->capture_default_str();
  simulate->add_option("--outlier-fraction", sim.spec.outlier_fraction,
                       "Share of class 2 in the outlier cluster")
      ->capture_default_str();
  simulate->add_option("--overlap", sim.spec.overlap, "Mixture overlap in [0, 1)")
      ->capture_default_str();
  simulate->add_option("--max-overlap", sim.max_overlap, "Accepted; no effect");
  simulate->add_option("--out", sim.out, "Output CSV (default stdout)");

  FitOptions fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a tree and write the model JSON");
  fit_cmd->add_option("--data", fit.data, "Training CSV")->required();
  fit_cmd->add_option("--label-column", fit.label_column)->capture_default_str();
  fit_cmd->add_option("--variant", fit.variant, "original, mod1, mod2 or axis")
      ->check(CLI::IsMember({"original", "mod1", "mod2", "axis"}))
      ->capture_default_str();
  fit_cmd->add_option("--rule", fit.rule, "Split rule 1-8")->check(RuleRange())
      ->capture_default_str();
  fit_cmd->add_option("--index", fit.index, "lda or pda")
      ->check(CLI::IsMember({"lda", "pda"}))
      ->capture_default_str();
  fit_cmd->add_option("--lambda", fit.lambda, "PDA penalty in [0, 1) (default 0.1)");
  fit_cmd->add_option("--min-node-size", fit.config.min_node_size)->capture_default_str();
  fit_cmd->add_option("--entropy-threshold", fit.config.entropy_threshold)
      ->capture_default_str();
  fit_cmd->add_option("--max-depth", fit.config.max_depth)->capture_default_str();
  fit_cmd->add_option("--seed", fit.config.seed)->capture_default_str();
  fit_cmd->add_option("--out", fit.out, "Model JSON (default stdout)");

  PredictOptions predict;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Predict CSV rows with a model");
  predict_cmd->add_option("--model", predict.model, "Model JSON")->required();
  predict_cmd->add_option("--data", predict.data, "CSV to predict")->required();
  predict_cmd->add_option("--label-column", predict.label_column)->capture_default_str();
  predict_cmd->add_option("--out", predict.out, "Predictions CSV (default stdout)");

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a repeated-holdout benchmark");
  bench_cmd->add_option("--spec", bench.spec, "Bench spec JSON")->required();
  bench_cmd->add_option("--out", bench.out, "Report CSV (default stdout)");
  bench_cmd->add_option("--json", bench.json_out, "Report JSON");
  bench_cmd->add_option("--cells", bench.cells_out, "Per-repetition CSV");
  bench_cmd->add_option("--parallelism", bench.parallelism,
                        "Worker threads (default MAX_PARALLELISM or all cores)");
  bench_cmd->add_option("--repetitions", bench.repetitions, "Override the spec's repetitions")
      ->check(CLI::PositiveNumber);

  BoundaryOptions boundary;
  CLI::App* boundary_cmd = app.add_subcommand("boundary", "Predict a decision-boundary grid");
  boundary_cmd->add_option("--model", boundary.model, "Model JSON")->required();
  boundary_cmd->add_option("--data", boundary.data, "CSV giving the data domain")->required();
  boundary_cmd->add_option("--label-column", boundary.label_column)->capture_default_str();
  boundary_cmd->add_option("--resolution", boundary.resolution, "Points per axis (2D)")
      ->check(CLI::Range(2, 5001))
      ->capture_default_str();
  boundary_cmd->add_option("--samples", boundary.samples, "Random points (p > 2)")
      ->check(CLI::Range(2, 200000))
      ->capture_default_str();
  boundary_cmd->add_option("--seed", boundary.seed)->capture_default_str();
  boundary_cmd->add_flag("--border-only", boundary.border_only, "Write border points only");
  boundary_cmd->add_option("--pca-out", boundary.pca_out,
                           "Also write PCA scores of the exported points");
  boundary_cmd->add_option("--out", boundary.out, "Grid CSV (default stdout)");

  ServeOptions serve;
  if (const char* port = std::getenv("PORT")) serve.port = std::atoi(port);
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve the HTTP JSON API");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Port (default $PORT or 8080)")
      ->capture_default_str();
  serve_cmd->add_option("--ttl", serve.ttl_seconds, "Session entry lifetime in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help("", CLI::AppFormatMode::Normal);
    return kExitUsage;
  }

  try {
    if (*simulate) return RunSimulate(sim, out, err);
    if (*fit_cmd) return RunFit(fit, out, err);
    if (*predict_cmd) return RunPredict(predict, out, err);
    if (*bench_cmd) return RunBench(bench, out, err);
    if (*boundary_cmd) return RunBoundary(boundary, out, err);
    if (*serve_cmd) return RunServe(serve, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pptree::service
