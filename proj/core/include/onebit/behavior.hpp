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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace onebit {

/// Bell scenario cardinalities (|X|, |Y|, |A|, |B|).
struct Scenario {
  int nx = 1;
  int ny = 1;
  int na = 2;
  int nb = 2;

  /// Number of entries in a P(a,b|x,y) table.
  std::size_t size() const {
    return static_cast<std::size_t>(nx) * ny * na * nb;
  }
  std::size_t block_size() const { return static_cast<std::size_t>(na) * nb; }

  /// Row-major offset of (x, y, a, b).
  std::size_t index(int x, int y, int a, int b) const {
    return ((static_cast<std::size_t>(x) * ny + y) * na + a) * nb + b;
  }

  /// Throws InvalidArgument unless every cardinality is >= 1.
  void validate() const;

  /// "nx,ny,na,nb"
  std::string to_string() const;
  static Scenario parse(std::string_view text);

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// A real-valued table shaped like a behavior but without probability
/// constraints. Used for Bell functionals and oracle directions.
struct Functional {
  Scenario scenario;
  std::vector<double> table;

  Functional() = default;
  Functional(Scenario s, std::vector<double> t);
  static Functional zeros(Scenario s);

  double& at(int x, int y, int a, int b) { return table[scenario.index(x, y, a, b)]; }
  double at(int x, int y, int a, int b) const {
    return table[scenario.index(x, y, a, b)];
  }
};

/// Conditional probability table P(a,b|x,y).
///
/// Entries are non-negative and every (x, y) block sums to one within
/// kNormalizationTolerance; the constructor checks both and throws
/// InvalidArgument otherwise. Nothing is ever renormalized.
class Behavior {
 public:
  static constexpr double kNormalizationTolerance = 1e-10;

  Behavior(Scenario scenario, std::vector<double> table,
           double tolerance = kNormalizationTolerance);

  const Scenario& scenario() const { return scenario_; }
  std::span<const double> table() const { return table_; }
  double at(int x, int y, int a, int b) const {
    return table_[scenario_.index(x, y, a, b)];
  }
  /// The na*nb outcome block for inputs (x, y).
  std::span<const double> block(int x, int y) const;

  double marginal_a(int x, int y, int a) const;
  double marginal_b(int x, int y, int b) const;

  /// Largest deviation of Alice's marginals across y and Bob's across x.
  double signalling_gap() const;
  bool is_no_signalling(double tolerance) const {
    return signalling_gap() <= tolerance;
  }

  /// w * p + (1 - w) * q for w in [0, 1].
  static Behavior mix(double w, const Behavior& p, const Behavior& q);

  /// Uniform outcome distribution 1/(na*nb) for every (x, y).
  static Behavior uniform(Scenario s);

  nlohmann::json to_json() const;
  static Behavior from_json(const nlohmann::json& j);

  friend bool operator==(const Behavior&, const Behavior&) = default;

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

nlohmann::json functional_to_json(const Functional& f);
Functional functional_from_json(const nlohmann::json& j);

/// Reads a JSON document from disk; throws InvalidArgument on I/O or parse
/// failure.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace onebit
