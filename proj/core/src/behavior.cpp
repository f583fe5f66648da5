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

#include "onebit/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "onebit/error.hpp"

namespace onebit {

void Scenario::validate() const {
  if (nx < 1 || ny < 1 || na < 1 || nb < 1) {
    throw InvalidArgument("scenario cardinalities must be >= 1, got " +
                          to_string());
  }
}

std::string Scenario::to_string() const {
  std::ostringstream os;
  os << nx << ',' << ny << ',' << na << ',' << nb;
  return os.str();
}

Scenario Scenario::parse(std::string_view text) {
  std::vector<int> parts;
  std::string token;
  std::istringstream is{std::string(text)};
  while (std::getline(is, token, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      parts.push_back(v);
    } catch (const std::exception&) {
      throw InvalidArgument("bad scenario '" + std::string(text) +
                            "', expected nx,ny,na,nb");
    }
  }
  if (parts.size() != 4) {
    throw InvalidArgument("bad scenario '" + std::string(text) +
                          "', expected nx,ny,na,nb");
  }
  Scenario s{parts[0], parts[1], parts[2], parts[3]};
  s.validate();
  return s;
}

Functional::Functional(Scenario s, std::vector<double> t)
    : scenario(s), table(std::move(t)) {
  scenario.validate();
  if (table.size() != scenario.size()) {
    throw InvalidArgument("functional table has " + std::to_string(table.size()) +
                          " entries, scenario " + scenario.to_string() +
                          " needs " + std::to_string(scenario.size()));
  }
}

Functional Functional::zeros(Scenario s) {
  return Functional(s, std::vector<double>(s.size(), 0.0));
}

Behavior::Behavior(Scenario scenario, std::vector<double> table,
                   double tolerance)
    : scenario_(scenario), table_(std::move(table)) {
  scenario_.validate();
  if (table_.size() != scenario_.size()) {
    throw InvalidArgument("behavior table has " + std::to_string(table_.size()) +
                          " entries, scenario " + scenario_.to_string() +
                          " needs " + std::to_string(scenario_.size()));
  }
  for (double v : table_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("behavior entries must be finite and >= 0");
    }
  }
  for (int x = 0; x < scenario_.nx; ++x) {
    for (int y = 0; y < scenario_.ny; ++y) {
      auto blk = block(x, y);
      double sum = 0.0;
      for (double v : blk) sum += v;
      if (std::abs(sum - 1.0) > tolerance) {
        std::ostringstream os;
        os << "behavior block (x=" << x << ", y=" << y << ") sums to "
           << sum << ", not 1";
        throw InvalidArgument(os.str());
      }
    }
  }
}

std::span<const double> Behavior::block(int x, int y) const {
  return std::span<const double>(table_).subspan(scenario_.index(x, y, 0, 0),
                                                 scenario_.block_size());
}

double Behavior::marginal_a(int x, int y, int a) const {
  double s = 0.0;
  for (int b = 0; b < scenario_.nb; ++b) s += at(x, y, a, b);
  return s;
}

double Behavior::marginal_b(int x, int y, int b) const {
  double s = 0.0;
  for (int a = 0; a < scenario_.na; ++a) s += at(x, y, a, b);
  return s;
}

double Behavior::signalling_gap() const {
  double gap = 0.0;
  for (int x = 0; x < scenario_.nx; ++x) {
    for (int a = 0; a < scenario_.na; ++a) {
      const double ref = marginal_a(x, 0, a);
      for (int y = 1; y < scenario_.ny; ++y) {
        gap = std::max(gap, std::abs(marginal_a(x, y, a) - ref));
      }
    }
  }
  for (int y = 0; y < scenario_.ny; ++y) {
    for (int b = 0; b < scenario_.nb; ++b) {
      const double ref = marginal_b(0, y, b);
      for (int x = 1; x < scenario_.nx; ++x) {
        gap = std::max(gap, std::abs(marginal_b(x, y, b) - ref));
      }
    }
  }
  return gap;
}

Behavior Behavior::mix(double w, const Behavior& p, const Behavior& q) {
  if (p.scenario() != q.scenario()) {
    throw InvalidArgument("cannot mix behaviors of scenarios " +
                          p.scenario().to_string() + " and " +
                          q.scenario().to_string());
  }
  if (!(w >= 0.0 && w <= 1.0)) {
    throw InvalidArgument("mixing weight must lie in [0, 1]");
  }
  std::vector<double> t(p.table_.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = w * p.table_[i] + (1.0 - w) * q.table_[i];
  }
  return Behavior(p.scenario(), std::move(t));
}

Behavior Behavior::uniform(Scenario s) {
  s.validate();
  return Behavior(s, std::vector<double>(s.size(), 1.0 / static_cast<double>(
                                                       s.block_size())));
}

namespace {

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.contains("scenario") || !j.at("scenario").is_array() ||
      j.at("scenario").size() != 4) {
    throw InvalidArgument("missing or malformed \"scenario\" field");
  }
  const auto& s = j.at("scenario");
  Scenario out{s[0].get<int>(), s[1].get<int>(), s[2].get<int>(),
               s[3].get<int>()};
  out.validate();
  return out;
}

std::vector<double> table_from_json(const nlohmann::json& j) {
  if (!j.contains("table") || !j.at("table").is_array()) {
    throw InvalidArgument("missing or malformed \"table\" field");
  }
  return j.at("table").get<std::vector<double>>();
}

}  // namespace

nlohmann::json Behavior::to_json() const {
  return {{"scenario",
           {scenario_.nx, scenario_.ny, scenario_.na, scenario_.nb}},
          {"table", table_}};
}

Behavior Behavior::from_json(const nlohmann::json& j) {
  try {
    return Behavior(scenario_from_json(j), table_from_json(j));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed behavior document: ") +
                          e.what());
  }
}

nlohmann::json functional_to_json(const Functional& f) {
  return {{"scenario",
           {f.scenario.nx, f.scenario.ny, f.scenario.na, f.scenario.nb}},
          {"table", f.table}};
}

Functional functional_from_json(const nlohmann::json& j) {
  try {
    return Functional(scenario_from_json(j), table_from_json(j));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed functional document: ") +
                          e.what());
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("cannot parse '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace onebit
