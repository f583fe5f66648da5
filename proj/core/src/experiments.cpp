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

#include "onebit/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <thread>

#include "onebit/error.hpp"

#ifndef ONEBIT_VERSION
#define ONEBIT_VERSION "unknown"
#endif

namespace onebit {

const char* version() { return ONEBIT_VERSION; }

Behavior haar_point(const Scenario& s, int d, std::uint64_t seed, std::uint64_t index,
                    BobConvention convention) {
  if (s.na != d || s.nb != d) {
    throw InvalidArgument("Haar scan needs na = nb = d (scenario " + s.to_string() +
                          ", d = " + std::to_string(d) + ")");
  }
  CounterRng rng = CounterRng::stream(seed, index);
  std::vector<QuditBasis> alice, bob;
  for (int x = 0; x < s.nx; ++x) alice.push_back(haar_random_basis(d, rng));
  for (int y = 0; y < s.ny; ++y) bob.push_back(haar_random_basis(d, rng));
  return max_entangled_qudit_behavior(d, alice, bob, convention);
}

ScanReport haar_scan(const Scenario& s, int d, std::size_t n_points,
                     const ScanOptions& options) {
  if (n_points == 0) throw InvalidArgument("scan needs at least one point");
  check_oracle_guard(s);
  ScanReport report;
  report.scenario = s;
  report.dimension = d;
  report.n_points = n_points;
  report.seed = options.seed;
  report.convention = options.convention;
  report.points.resize(n_points);

  auto run = [&](std::size_t i) {
    const Behavior p = haar_point(s, d, options.seed, i, options.convention);
    ScanPoint& pt = report.points[i];
    const MembershipResult local = membership(p, SetTag::kLocal, options.membership);
    pt.in_local = local.inside;
    pt.local_distance = local.distance;
    if (local.inside) {
      pt.in_comm = true;
    } else {
      const MembershipResult comm = membership(p, SetTag::kComm, options.membership);
      pt.in_comm = comm.inside;
      pt.comm_distance = comm.distance;
    }
  };

  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(n_points)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n_points; ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n_points; i += workers) run(i);
      });
    }
  }

  for (const auto& pt : report.points) {
    if (pt.in_local) ++report.in_local;
    if (!pt.in_comm) ++report.outside_comm;
    if (!pt.in_local && pt.local_distance <= options.borderline_distance) {
      ++report.borderline_local;
    }
  }
  report.fraction_in_local = static_cast<double>(report.in_local) / n_points;
  report.fraction_outside_comm = static_cast<double>(report.outside_comm) / n_points;
  return report;
}

nlohmann::json ScanReport::to_json() const {
  return {{"scenario", {scenario.nx, scenario.ny, scenario.na, scenario.nb}},
          {"dimension", dimension},
          {"n_points", n_points},
          {"in_local", in_local},
          {"outside_comm", outside_comm},
          {"borderline_local", borderline_local},
          {"fraction_in_local", fraction_in_local},
          {"fraction_outside_comm", fraction_outside_comm},
          {"seed", seed},
          {"bob_convention", to_string(convention)}};
}

std::string ScanReport::csv() const {
  std::string out = "index,in_local,in_comm,local_distance,comm_distance\n";
  char buf[160];
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.comm_distance) {
      std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.17g,%.17g\n", i, p.in_local ? 1 : 0,
                    p.in_comm ? 1 : 0, p.local_distance, *p.comm_distance);
    } else {
      std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.17g,\n", i, p.in_local ? 1 : 0,
                    p.in_comm ? 1 : 0, p.local_distance);
    }
    out += buf;
  }
  return out;
}

double parse_angle(const std::string& text) {
  const auto pos = text.find("pi");
  if (pos == std::string::npos) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse angle '" + text + "'");
    }
  }
  std::string coeff = text.substr(0, pos);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  std::string rest = text.substr(pos + 2);
  double num = 1.0, den = 1.0;
  try {
    if (!coeff.empty()) {
      std::size_t used = 0;
      num = std::stod(coeff, &used);
      if (used != coeff.size()) throw std::invalid_argument(coeff);
    }
    if (!rest.empty()) {
      if (rest[0] != '/') throw std::invalid_argument(rest);
      rest = rest.substr(1);
      std::size_t used = 0;
      den = std::stod(rest, &used);
      if (used != rest.size() || den == 0.0) throw std::invalid_argument(rest);
    }
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse angle '" + text + "'");
  }
  return num * std::numbers::pi / den;
}

std::vector<ThetaSweepEntry> theta_sweep(const std::vector<std::string>& labels,
                                         const ThetaSweepOptions& options) {
  if (labels.empty()) throw InvalidArgument("theta sweep needs at least one theta");
  const auto settings = random_settings(options.settings, options.seed);
  SweepOptions sopt;
  sopt.samples = options.samples;
  sopt.seed = options.seed;
  sopt.workers = options.workers;
  sopt.smoothing = options.smoothing;

  std::vector<ThetaSweepEntry> out;
  for (const auto& label : labels) {
    const ProtocolCoefficients coeffs = builtin_preset(label);
    const TwoQubitState state(coeffs.theta);
    const bool exact = options.exact_at_max_entangled &&
                       std::abs(coeffs.theta - std::numbers::pi / 4) < 1e-12;
    const Protocol protocol = exact ? Protocol::max_entangled()
                                    : Protocol::semianalytical(coeffs);
    out.push_back({label, sweep(protocol, state, settings, sopt)});
  }
  return out;
}

VisibilityStudy visibility_study(const Behavior& point, const Behavior& noise,
                                 std::optional<double> reference_wq, SetTag tag,
                                 const VisibilityOptions& options,
                                 double reference_precision) {
  VisibilityStudy st;
  st.scenario = point.scenario();
  st.result = visibility(point, noise, tag, options);
  st.result.reference_wq = reference_wq;
  st.reference_wq = reference_wq;
  st.no_candidate = st.result.w_star >= 1.0;
  if (reference_wq) {
    // Prefer the LP value, which is exact up to solver tolerance.
    const double wc = 1.0 - st.result.w_direct.value_or(st.result.w_star);
    st.gap = *reference_wq - wc;
    // Noise weights below 1 - w_out are certified outside the set.
    const double w_out = st.result.w_bisection_upper.value_or(
        st.result.w_direct ? *st.result.w_direct + 1e-7 : 1.0);
    st.violation = !st.no_candidate && *reference_wq < 1.0 - w_out - reference_precision;
  }
  return st;
}

nlohmann::json VisibilityStudy::to_json() const {
  nlohmann::json j = {{"scenario", {scenario.nx, scenario.ny, scenario.na, scenario.nb}},
                      {"visibility", result.to_json(scenario)},
                      {"no_candidate", no_candidate},
                      {"violation", violation}};
  if (reference_wq) j["external_reference_wq"] = *reference_wq;
  if (gap) j["gap"] = *gap;
  return j;
}

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

std::string write_run_directory(const std::string& root, const std::string& experiment,
                                std::uint64_t seed, const nlohmann::json& config,
                                const std::map<std::string, std::string>& files) {
  namespace fs = std::filesystem;
  const std::string stamp = utc_timestamp();
  fs::path dir = fs::path(root) / (experiment + "_seed" + std::to_string(seed) + "_" + stamp);
  for (int k = 1; fs::exists(dir); ++k) {
    dir = fs::path(root) /
          (experiment + "_seed" + std::to_string(seed) + "_" + stamp + "_" + std::to_string(k));
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create run directory " + dir.string() + ": " + ec.message());

  nlohmann::json listing = nlohmann::json::array();
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + (dir / name).string());
    out << content;
    listing.push_back(name);
  }
  const nlohmann::json manifest = {{"experiment", experiment},
                                   {"seed", seed},
                                   {"timestamp_utc", stamp},
                                   {"code_version", version()},
                                   {"config", config},
                                   {"files", listing}};
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  return dir.string();
}

}  // namespace onebit
