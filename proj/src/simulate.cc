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

#include "pptree/simulate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "pptree/error.h"

namespace pptree {
namespace {

using Rng = std::mt19937_64;

std::vector<int> EqualSizes(int n, int k) {
  std::vector<int> sizes(static_cast<std::size_t>(k), n / k);
  for (int g = 0; g < n % k; ++g) ++sizes[static_cast<std::size_t>(g)];
  return sizes;
}

Eigen::Vector2d Diagonal() {
  return Eigen::Vector2d(1.0, 1.0) / std::numbers::sqrt2;
}

Eigen::Vector2d ChainMean(const SimSpec& spec, int g) {
  const double offset = (static_cast<double>(g) - (spec.k - 1) / 2.0) * spec.separation;
  return offset * Diagonal();
}

class Sampler {
 public:
  explicit Sampler(const SimSpec& spec)
      : spec_(spec),
        features_(spec.n, 2),
        names_{"x1", "x2"} {}

  void Draw(Rng& rng, const Eigen::Vector2d& mean, const Eigen::Matrix2d& chol,
            int count, int label) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      Eigen::Vector2d e;
      e(0) = normal(rng);
      e(1) = normal(rng);
      features_.row(row_++) = (mean + chol * e).transpose();
      labels_.push_back(label);
    }
  }

  Dataset Finish() {
    Dataset data;
    data.features = std::move(features_);
    data.labels = std::move(labels_);
    for (int g = 1; g <= spec_.k; ++g) data.class_names.push_back(std::to_string(g));
    data.feature_names = names_;
    return data;
  }

 private:
  const SimSpec& spec_;
  Eigen::MatrixXd features_;
  std::vector<int> labels_;
  std::vector<std::string> names_;
  Eigen::Index row_ = 0;
};

Eigen::Matrix2d ChainCholesky(const SimSpec& spec) {
  Eigen::Matrix2d cov;
  cov << 1.0, spec.correlation, spec.correlation, 1.0;
  return cov.llt().matrixL();
}

MixtureModel DrawMixture(const SimSpec& spec, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MixtureModel model;
  model.sizes = EqualSizes(spec.n, spec.k);

  const double min_gap = 0.35 / std::sqrt(static_cast<double>(spec.k));
  for (int g = 0; g < spec.k; ++g) {
    Eigen::Vector2d candidate;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      candidate = Eigen::Vector2d(unit(rng), unit(rng));
      const bool clear = std::all_of(
          model.means.begin(), model.means.end(),
          [&](const Eigen::Vector2d& m) { return (m - candidate).norm() >= min_gap; });
      if (clear) break;
    }
    model.means.push_back(candidate);
  }
  for (int g = 0; g < spec.k; ++g) {
    const double angle = unit(rng) * std::numbers::pi;
    Eigen::Matrix2d rotation;
    rotation << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    const Eigen::Vector2d eig(0.5 + unit(rng), 0.5 + unit(rng));
    model.covariances.push_back(rotation * eig.asDiagonal() * rotation.transpose());
  }

  double closest = std::numeric_limits<double>::infinity();
  for (int a = 0; a < spec.k; ++a) {
    for (int b = a + 1; b < spec.k; ++b) {
      closest = std::min(closest, (model.means[a] - model.means[b]).norm());
    }
  }
  const double w = std::max(spec.overlap, 1e-4);
  const boost::math::normal standard;
  const double target = 2.0 * boost::math::quantile(standard, 1.0 - w / 2.0);
  const double scale = target / closest;
  for (Eigen::Vector2d& m : model.means) m *= scale;
  return model;
}

}  // namespace

std::string_view ScenarioName(Scenario scenario) {
  switch (scenario) {
    case Scenario::kBasic:
      return "basic";
    case Scenario::kOutlier:
      return "outlier";
    case Scenario::kMixture:
      return "mixsim";
  }
  return "unknown";
}

Scenario ParseScenario(std::string_view name) {
  if (name == "basic") return Scenario::kBasic;
  if (name == "outlier") return Scenario::kOutlier;
  if (name == "mixsim" || name == "mixture") return Scenario::kMixture;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scenario '" + std::string(name) +
                  "' (expected basic, outlier or mixsim)");
}

void SimSpec::Validate() const {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be >= 2");
  if (n < k) throw Error(ErrorCode::kInvalidArgument, "n must be >= k");
  if (!(separation > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "separation must be > 0");
  }
  if (!(correlation > -1.0 && correlation < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "correlation must lie in (-1, 1)");
  }
  if (scenario == Scenario::kOutlier &&
      !(outlier_fraction > 0.0 && outlier_fraction < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument,
                "outlier_fraction must lie in (0, 0.5)");
  }
  if (!(overlap >= 0.0 && overlap < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "overlap must lie in [0, 1)");
  }
  if (max_overlap && !(*max_overlap >= 0.0 && *max_overlap < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "max_overlap must lie in [0, 1)");
  }
}

std::vector<std::string> SimWarnings(const SimSpec& spec) {
  std::vector<std::string> out;
  if (spec.max_overlap) {
    out.push_back("max_overlap is accepted but has no effect on the simulation");
  }
  return out;
}

Dataset SimBasic(const SimSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  const Eigen::Matrix2d chol = ChainCholesky(spec);
  const std::vector<int> sizes = EqualSizes(spec.n, spec.k);
  Sampler sampler(spec);
  for (int g = 0; g < spec.k; ++g) {
    sampler.Draw(rng, ChainMean(spec, g), chol, sizes[static_cast<std::size_t>(g)], g + 1);
  }
  return sampler.Finish();
}

Dataset SimOutlier(const SimSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  const Eigen::Matrix2d chol = ChainCholesky(spec);
  const std::vector<int> sizes = EqualSizes(spec.n, spec.k);
  const int outliers = static_cast<int>(std::lround(spec.outlier_fraction * sizes[1]));
  const Eigen::Vector2d outlier_center = ChainMean(spec, 0) - spec.separation * Diagonal();
  Sampler sampler(spec);
  for (int g = 0; g < spec.k; ++g) {
    const int size = sizes[static_cast<std::size_t>(g)];
    if (g == 1) {
      sampler.Draw(rng, ChainMean(spec, g), chol, size - outliers, g + 1);
      sampler.Draw(rng, outlier_center, chol, outliers, g + 1);
    } else {
      sampler.Draw(rng, ChainMean(spec, g), chol, size, g + 1);
    }
  }
  return sampler.Finish();
}

MixtureModel MixtureComponents(const SimSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  return DrawMixture(spec, rng);
}

Dataset SimMixture(const SimSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  const MixtureModel model = DrawMixture(spec, rng);
  Sampler sampler(spec);
  for (int g = 0; g < spec.k; ++g) {
    const Eigen::Matrix2d chol = model.covariances[static_cast<std::size_t>(g)].llt().matrixL();
    sampler.Draw(rng, model.means[static_cast<std::size_t>(g)], chol,
                 model.sizes[static_cast<std::size_t>(g)], g + 1);
  }
  return sampler.Finish();
}

Dataset Simulate(const SimSpec& spec) {
  switch (spec.scenario) {
    case Scenario::kBasic:
      return SimBasic(spec);
    case Scenario::kOutlier:
      return SimOutlier(spec);
    case Scenario::kMixture:
      return SimMixture(spec);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scenario");
}

}  // namespace pptree
