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

#include "onebit/lp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "onebit/error.hpp"

namespace onebit::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "unknown";
}

ColumnGenerationLp::ColumnGenerationLp(Eigen::VectorXd rhs) : rhs_(std::move(rhs)) {
  if (rhs_.size() == 0) throw InvalidArgument("LP needs at least one row");
}

std::size_t ColumnGenerationLp::add_column(Eigen::VectorXd column, double cost) {
  if (column.size() != rhs_.size()) {
    throw InvalidArgument("LP column has " + std::to_string(column.size()) +
                          " rows, expected " + std::to_string(rhs_.size()));
  }
  columns_.push_back(std::move(column));
  costs_.push_back(cost);
  return columns_.size() - 1;
}

Result ColumnGenerationLp::solve(const Pricer& pricer, const Options& opt) {
  const Eigen::Index m = rhs_.size();
  // Rows are sign-flipped so that b >= 0 and the artificial basis is feasible.
  const Eigen::VectorXd sign =
      rhs_.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
  const Eigen::VectorXd b = sign.cwiseProduct(rhs_);

  std::vector<Eigen::VectorXd> scaled;
  scaled.reserve(columns_.size());
  for (const auto& c : columns_) scaled.push_back(sign.cwiseProduct(c));

  // Basis entries: j >= 0 is a structural column, -1 - i is artificial i.
  std::vector<long> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = -1 - static_cast<long>(i);
  std::vector<char> in_basis(columns_.size(), 0);

  Result result;
  int phase = 1;
  int degenerate = 0;
  Eigen::MatrixXd bmat(m, m);
  Eigen::VectorXd cb(m);

  for (;;) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[i] >= 0) {
        bmat.col(i) = scaled[basis[i]];
        cb(i) = phase == 1 ? 0.0 : costs_[basis[i]];
      } else {
        bmat.col(i) = Eigen::VectorXd::Unit(m, -1 - basis[i]);
        cb(i) = phase == 1 ? 1.0 : 0.0;
      }
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
    const Eigen::VectorXd xb = lu.solve(b);
    const Eigen::VectorXd y = lu.transpose().solve(cb);

    const bool bland = degenerate >= opt.degenerate_streak_for_bland;
    long enter = -1;
    double best = -opt.optimality_tolerance;
    for (std::size_t j = 0; j < scaled.size(); ++j) {
      if (in_basis[j]) continue;
      const double cj = phase == 1 ? 0.0 : costs_[j];
      const double d = cj - y.dot(scaled[j]);
      if (d < best) {
        enter = static_cast<long>(j);
        if (bland) break;
        best = d;
      }
    }
    if (enter < 0 && pricer) {
      if (auto col = pricer(sign.cwiseProduct(y))) {
        if (col->size() != m) throw InvalidArgument("pricer returned a column of wrong size");
        Eigen::VectorXd sc = sign.cwiseProduct(*col);
        if (-y.dot(sc) < -opt.optimality_tolerance) {
          columns_.push_back(std::move(*col));
          costs_.push_back(0.0);
          scaled.push_back(std::move(sc));
          in_basis.push_back(0);
          enter = static_cast<long>(scaled.size() - 1);
          ++result.generated_columns;
        }
      }
    }

    if (enter < 0) {
      if (phase == 1) {
        double infeasibility = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
          if (basis[i] < 0) infeasibility += std::max(0.0, xb(i));
        }
        result.infeasibility = infeasibility;
        if (infeasibility > opt.feasibility_tolerance * (1.0 + b.lpNorm<Eigen::Infinity>())) {
          result.status = Status::kInfeasible;
          result.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(columns_.size()));
          for (Eigen::Index i = 0; i < m; ++i) {
            if (basis[i] >= 0) result.x(basis[i]) = xb(i);
          }
          return result;
        }
        phase = 2;
        degenerate = 0;
        continue;
      }
      result.status = Status::kOptimal;
      result.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(columns_.size()));
      result.objective = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (basis[i] >= 0) {
          result.x(basis[i]) = std::max(0.0, xb(i));
          result.objective += costs_[basis[i]] * result.x(basis[i]);
        }
      }
      result.duals = sign.cwiseProduct(y);
      return result;
    }

    const Eigen::VectorXd dir = lu.solve(scaled[enter]);
    long leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    bool leave_artificial = false;
    for (Eigen::Index i = 0; i < m; ++i) {
      const bool artificial = basis[i] < 0;
      double ratio;
      // In phase two a basic artificial sits at zero and must leave as soon as
      // the entering column touches its row, whatever the sign.
      if (phase == 2 && artificial && std::abs(dir(i)) > opt.pivot_tolerance) {
        ratio = 0.0;
      } else if (dir(i) > opt.pivot_tolerance) {
        ratio = std::max(0.0, xb(i)) / dir(i);
      } else {
        continue;
      }
      const bool better =
          ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 &&
           ((artificial && !leave_artificial) ||
            (artificial == leave_artificial &&
             (bland ? basis[i] < basis[leave]
                    : std::abs(dir(i)) > best_pivot))));
      if (leave < 0 || better) {
        leave = static_cast<long>(i);
        best_ratio = ratio;
        best_pivot = std::abs(dir(i));
        leave_artificial = artificial;
      }
    }
    if (leave < 0) {
      result.status = Status::kUnbounded;
      return result;
    }
    degenerate = best_ratio <= 1e-12 ? degenerate + 1 : 0;
    if (basis[leave] >= 0) in_basis[basis[leave]] = 0;
    basis[leave] = enter;
    in_basis[enter] = 1;
    if (++result.iterations > opt.max_iterations) {
      throw NonConvergence("simplex exceeded " +
                           std::to_string(opt.max_iterations) + " iterations");
    }
  }
}

}  // namespace onebit::lp
