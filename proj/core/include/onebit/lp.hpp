// Copyright 2026 The onebit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace onebit::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

const char* to_string(Status s);

struct Options {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-10;
  int max_iterations = 200000;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak_for_bland = 50;
};

struct Result {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  /// Primal value of every column in insertion order (generated ones too).
  Eigen::VectorXd x;
  /// Row duals y with reduced costs c_j - y . A_j.
  Eigen::VectorXd duals;
  /// Phase-one residual: sum of artificial variables at the end of phase one.
  double infeasibility = 0.0;
  int iterations = 0;
  std::size_t generated_columns = 0;
};

/// min c.x subject to A x = b, x >= 0, solved by a two-phase revised simplex
/// over a dense basis. Columns can be supplied up front or generated on
/// demand by a pricing callback.
///
/// The pricer receives the current duals y and returns a zero-cost column a
/// maximizing y . a, or nothing if no column has y . a > 0. It is consulted in
/// both phases, so generated columns must have zero cost.
class ColumnGenerationLp {
 public:
  using Pricer =
      std::function<std::optional<Eigen::VectorXd>(const Eigen::VectorXd& duals)>;

  explicit ColumnGenerationLp(Eigen::VectorXd rhs);

  std::size_t rows() const { return static_cast<std::size_t>(rhs_.size()); }
  std::size_t columns() const { return columns_.size(); }

  /// Returns the column's index.
  std::size_t add_column(Eigen::VectorXd column, double cost);
  const Eigen::VectorXd& column(std::size_t j) const { return columns_[j]; }

  /// Throws NonConvergence if the iteration cap is hit.
  Result solve(const Pricer& pricer = {}, const Options& options = {});

 private:
  Eigen::VectorXd rhs_;
  std::vector<Eigen::VectorXd> columns_;
  std::vector<double> costs_;
};

}  // namespace onebit::lp
