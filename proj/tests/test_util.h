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

#ifndef PPTREE_TESTS_TEST_UTIL_H_
#define PPTREE_TESTS_TEST_UTIL_H_

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Dense>

#include "pptree/dataset.h"

namespace pptree::testing {

// Gaussian classes with unit noise around the given means.
inline Dataset GaussianClasses(const std::vector<Eigen::VectorXd>& means, int per_class,
                               std::uint64_t seed, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sd);
  const auto p = means.front().size();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(means.size()) * per_class, p);
  std::vector<int> labels;
  Eigen::Index row = 0;
  for (std::size_t g = 0; g < means.size(); ++g) {
    for (int i = 0; i < per_class; ++i, ++row) {
      for (Eigen::Index j = 0; j < p; ++j) x(row, j) = means[g](j) + noise(rng);
      labels.push_back(static_cast<int>(g) + 1);
    }
  }
  return MakeDataset(std::move(x), std::move(labels));
}

// n points with standard normal features and labels drawn uniformly from
// 1..groups, every group present at least twice.
inline Dataset RandomDataset(int n, int p, int groups, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> pick(1, groups);
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) x(i, j) = normal(rng);
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i < 2 * groups ? i / 2 + 1 : pick(rng);
  return MakeDataset(std::move(x), std::move(labels));
}

// Separable classes: means spread on a random well-spaced layout.
inline Dataset SeparableDataset(int groups, int p, int per_class, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> means;
  for (int g = 0; g < groups; ++g) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(p);
    m(g % p) = 40.0 * (1 + g / p);
    for (int j = 0; j < p; ++j) m(j) += normal(rng);
    means.push_back(m);
  }
  return GaussianClasses(means, per_class, seed + 1);
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("pptree-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void WriteText(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace pptree::testing

#endif  // PPTREE_TESTS_TEST_UTIL_H_
