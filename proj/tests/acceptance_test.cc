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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "pptree/bench.h"
#include "pptree/boundary.h"
#include "pptree/entropy.h"
#include "pptree/error.h"
#include "pptree/model_io.h"
#include "pptree/projection.h"
#include "pptree/simulate.h"
#include "pptree/split_rules.h"
#include "pptree/tree.h"
#include "test_util.h"

namespace pptree {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string Format(const char* fmt, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

GroupStats RandomStats(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> loc(-100.0, 100.0);
  std::uniform_real_distribution<double> spread(0.0, 20.0);
  std::uniform_int_distribution<int> count(1, 500);
  std::bernoulli_distribution zero(0.05);
  GroupStats g;
  g.mean = loc(rng);
  g.median = g.mean + spread(rng) - 10.0;
  g.sd = zero(rng) ? 0.0 : spread(rng);
  g.iqr = zero(rng) ? 0.0 : spread(rng);
  g.count = count(rng);
  return g;
}

Outcome A1() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    GroupStats a = RandomStats(rng);
    GroupStats b = RandomStats(rng);
    if (a.mean > b.mean) std::swap(a, b);
    const oracle::Stats oa{a.mean, a.median, a.sd, a.iqr, a.count};
    const oracle::Stats ob{b.mean, b.median, b.sd, b.iqr, b.count};
    for (int rule = 1; rule <= 8; ++rule) {
      const double got = SplitValue(SplitRule(rule), a, b).c;
      const double want = oracle::RuleFormula(rule, oa, ob);
      worst = std::max(worst, std::abs(got - want));
      if (!(std::abs(got - want) <= 1e-12)) {
        return {false, Format("rule %.0f differs by %.3g", rule, std::abs(got - want))};
      }
    }
  }
  return {true, Format("8000 evaluations, max |diff| %.3g", worst)};
}

Outcome A2() {
  std::mt19937_64 rng(202);
  int with_ties = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 200)(rng);
    const int groups = std::uniform_int_distribution<int>(2, 5)(rng);
    // A third of the nodes draw from a handful of integer values, so that
    // duplicates and equal-entropy candidates are common.
    const bool coarse = trial % 3 == 0;
    std::vector<double> z(static_cast<std::size_t>(n));
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      z[static_cast<std::size_t>(i)] = coarse ? std::uniform_int_distribution<int>(0, 6)(rng)
                                              : std::normal_distribution<double>()(rng);
      labels[static_cast<std::size_t>(i)] = std::uniform_int_distribution<int>(0, groups - 1)(rng);
    }
    const auto want = oracle::BruteForceEntropySplit(z, labels);
    if (!want) {
      bool threw = false;
      try {
        BestEntropySplit(z, labels, groups);
      } catch (const Error&) {
        threw = true;
      }
      if (!threw) return {false, "expected an error when all values are equal"};
      continue;
    }
    const EntropySplit got = BestEntropySplit(z, labels, groups);
    if (got.c != want->c || std::abs(got.combined - want->combined) > 1e-12) {
      return {false, Format("node %.0f: c %.17g", trial, got.c) + Format(" vs %.17g", want->c)};
    }
    // Count nodes whose optimum is shared by more than one candidate.
    std::vector<double> values = z;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    int optimal = 0;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      const double c = Midpoint(values[k], values[k + 1]);
      std::vector<int> left(static_cast<std::size_t>(groups));
      std::vector<int> right(static_cast<std::size_t>(groups));
      for (std::size_t i = 0; i < z.size(); ++i) {
        ++(z[i] < c ? left : right)[static_cast<std::size_t>(labels[i])];
      }
      if (CombinedEntropy(left, right) <= want->combined + 1e-12) ++optimal;
    }
    if (optimal > 1) ++with_ties;
  }
  if (with_ties == 0) return {false, "no tied instances were generated"};
  return {true, Format("500 nodes, %.0f with tied optima", with_ties)};
}

Outcome A3() {
  std::mt19937_64 rng(303);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const int p = trial % 2 == 0 ? 2 : 3;
    const int groups = std::uniform_int_distribution<int>(2, 4)(rng);
    const int n = std::uniform_int_distribution<int>(20, 120)(rng);
    Dataset d = testing::RandomDataset(n, p, groups, rng());
    // Shift class means so the optimum is well away from the trivial index.
    std::normal_distribution<double> shift(0.0, 2.0);
    std::vector<Eigen::VectorXd> offsets;
    for (int g = 0; g < groups; ++g) {
      Eigen::VectorXd o(p);
      for (int j = 0; j < p; ++j) o(j) = shift(rng);
      offsets.push_back(o);
    }
    Eigen::MatrixXd x = d.features;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      x.row(i) += offsets[static_cast<std::size_t>(d.labels[static_cast<std::size_t>(i)] - 1)].transpose();
    }
    std::vector<int> groups_of(d.labels.begin(), d.labels.end());
    const Projection proj = OptimalProjection(x, groups_of, IndexConfig::Lda());
    const oracle::Scatter s = oracle::ScatterByLoops(x, groups_of);
    const double achieved = oracle::LdaIndex(proj.alpha, s);
    const double grid = oracle::GridMaxIndex(s);
    if (std::abs(achieved - proj.index_value) > 1e-9) {
      return {false, Format("reported index %.12g, recomputed %.12g", proj.index_value, achieved)};
    }
    worst = std::min(worst, achieved - grid);
    if (achieved < grid - 1e-6) {
      return {false, Format("index %.12g below grid maximum %.12g", achieved, grid)};
    }
  }
  return {true, Format("100 instances, min(index - grid max) %.3g", worst)};
}

Outcome A4() {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int groups = std::uniform_int_distribution<int>(2, 6)(rng);
    const int p = std::uniform_int_distribution<int>(2, 5)(rng);
    const int per_class = std::uniform_int_distribution<int>(10, 40)(rng);
    const Dataset d = testing::SeparableDataset(groups, p, per_class, rng());
    for (const Variant v : {Variant::kOriginal, Variant::kMod1}) {
      const FittedTree tree = Fit(d, v, FitConfig{});
      std::set<int> labels;
      for (const TreeNode& node : tree.nodes) {
        if (node.is_leaf) labels.insert(node.label);
      }
      if (tree.num_internal() > groups - 1 || tree.num_leaves() != groups ||
          static_cast<int>(labels.size()) != groups) {
        return {false, std::string(VariantName(v)) + Format(" on instance %.0f: %.0f leaves", trial,
                                                            tree.num_leaves())};
      }
    }
  }
  return {true, "100 instances, G in 2..6, p in 2..5"};
}

double HoldoutError(const Dataset& d, Variant v, const FitConfig& config, std::uint64_t seed) {
  const auto [train, test] = SplitDataset(d, 2.0 / 3.0, seed);
  return ErrorRate(PredictAll(Fit(train, v, config), test.features), test.labels);
}

Outcome A5() {
  double original = 0.0;
  double axis = 0.0;
  constexpr int kSeeds = 50;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    SimSpec spec;
    spec.k = 2;
    spec.n = 400;
    spec.separation = 3.0;
    spec.correlation = -0.8;
    spec.seed = seed;
    const Dataset d = Simulate(spec);
    FitConfig config;
    config.max_depth = 1;
    original += HoldoutError(d, Variant::kOriginal, config, seed);
    axis += HoldoutError(d, Variant::kAxisBaseline, config, seed);
  }
  original /= kSeeds;
  axis /= kSeeds;
  return {original <= 0.02 && axis >= 0.10,
          Format("original %.4f (<= 0.02), axis %.4f (>= 0.10)", original, axis)};
}

Outcome A6() {
  double original = 0.0;
  double mod2 = 0.0;
  constexpr int kSeeds = 50;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    SimSpec spec;
    spec.scenario = Scenario::kOutlier;
    spec.k = 2;
    spec.n = 600;
    spec.outlier_fraction = 0.15;
    spec.seed = seed;
    const Dataset d = Simulate(spec);
    original += HoldoutError(d, Variant::kOriginal, FitConfig{}, seed);
    mod2 += HoldoutError(d, Variant::kMod2, FitConfig{}, seed);
  }
  original /= kSeeds;
  mod2 /= kSeeds;
  return {mod2 <= original - 0.05, Format("mod2 %.4f, original %.4f", mod2, original)};
}

Outcome A7() {
  double original = 0.0;
  double mod1 = 0.0;
  constexpr int kSeeds = 50;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    SimSpec spec;
    spec.k = 3;
    spec.n = 300;
    spec.separation = 4.0;
    spec.seed = seed;
    const Dataset d = Simulate(spec);
    const Eigen::Vector2d diagonal = Eigen::Vector2d(1, 1) / std::numbers::sqrt2;
    for (const Variant v : {Variant::kOriginal, Variant::kMod1}) {
      const FittedTree tree = Fit(d, v, FitConfig{});
      const TreeNode& root = tree.root();
      const Eigen::Vector2d alpha(root.alpha[0], root.alpha[1]);
      // True means sit at -sep, 0 and +sep along the diagonal. The first split
      // cuts either the 1|2 gap or the 2|3 gap; take whichever the split
      // actually separates.
      const bool first_alone = tree.nodes[static_cast<std::size_t>(root.left)].is_leaf;
      const Eigen::Vector2d mid = (first_alone ? -0.5 : 0.5) * spec.separation * diagonal;
      (v == Variant::kMod1 ? mod1 : original) += std::abs(root.c - alpha.dot(mid));
    }
  }
  original /= kSeeds;
  mod1 /= kSeeds;
  return {mod1 <= original, Format("mean |c - mid-gap|: mod1 %.4f, original %.4f", mod1, original)};
}

std::string ReportBytes(const BenchReport& report) {
  std::ostringstream out;
  WriteReportCsv(report, out);
  WriteCellsCsv(report, out);
  out << ReportToJson(report).dump();
  return out.str();
}

Outcome A8() {
  BenchSpec spec;
  spec.repetitions = 20;
  spec.seed = 2026;
  for (const Scenario s : {Scenario::kBasic, Scenario::kOutlier, Scenario::kMixture}) {
    SimSpec sim;
    sim.scenario = s;
    sim.k = 3;
    sim.n = 300;
    sim.seed = 9;
    spec.datasets.push_back({std::string(ScenarioName(s)), sim, "", "label"});
  }
  for (const Variant v : {Variant::kOriginal, Variant::kMod1, Variant::kMod2, Variant::kAxisBaseline}) {
    spec.models.push_back({std::string(VariantName(v)), v, FitConfig{}});
  }
  spec.parallelism = 1;
  const std::string first = ReportBytes(RunBenchmark(spec));
  const std::string second = ReportBytes(RunBenchmark(spec));
  spec.parallelism = 4;
  const std::string parallel = ReportBytes(RunBenchmark(spec));
  if (first != second) return {false, "two serial runs differ"};
  if (first != parallel) return {false, "parallelism 1 and 4 differ"};
  return {true, Format("3 datasets x 4 models x 20 reps, %.0f bytes identical", first.size())};
}

Outcome A9() {
  SimSpec spec;
  spec.scenario = Scenario::kMixture;
  spec.k = 3;
  spec.n = 300;
  spec.overlap = 0.05;
  spec.seed = 5;
  const Dataset d = Simulate(spec);
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> probe(-8.0, 8.0);
  Eigen::MatrixXd points(1000, 2);
  for (Eigen::Index i = 0; i < points.rows(); ++i) points.row(i) << probe(rng), probe(rng);
  for (const Variant v : {Variant::kOriginal, Variant::kMod1, Variant::kMod2, Variant::kAxisBaseline}) {
    const FittedTree tree = Fit(d, v, FitConfig{});
    const FittedTree restored = DeserializeModel(SerializeModel(tree));
    if (PredictAll(tree, points) != PredictAll(restored, points)) {
      return {false, std::string(VariantName(v)) + " predictions changed after round trip"};
    }
    const BoundaryGrid grid = ComputeBoundaryGrid(tree, d, 51);
    for (std::size_t k = 0; k < grid.labels.size(); ++k) {
      const Eigen::Vector2d x = grid.PointAt(k);
      if (grid.labels[k] != Predict(tree, std::span<const double>(x.data(), 2))) {
        return {false, std::string(VariantName(v)) + Format(" grid cell %.0f disagrees", k)};
      }
    }
  }
  return {true, "4 variants: 1000 probes round-trip, 51x51 grid matches predict"};
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Outcome()> run;
  double budget_seconds;
};

}  // namespace
}  // namespace pptree

int main() {
  using namespace pptree;
  const std::vector<Criterion> criteria = {
      {"A1", "split rule formulas", A1, 1.0},
      {"A2", "entropy split oracle", A2, 10.0},
      {"A3", "projection optimality", A3, 30.0},
      {"A4", "structural invariant", A4, 60.0},
      {"A5", "oblique advantage", A5, 60.0},
      {"A6", "multi-cluster advantage", A6, 120.0},
      {"A7", "boundary centering", A7, 60.0},
      {"A8", "benchmark determinism", A8, 120.0},
      {"A9", "serialization and grid", A9, 60.0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += Format("; took %.1fs, budget %.0fs", seconds, c.budget_seconds);
    }
    std::printf("%s %s: %s (%s, %.2fs)\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
