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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "onebit/polytope.hpp"
#include "onebit/qstate.hpp"
#include "onebit/stats.hpp"

namespace onebit {

/// Library version string.
const char* version();

// ---------------------------------------------------------------------------
// Haar scans of maximally entangled qudit behaviors.

struct ScanOptions {
  std::uint64_t seed = 0;
  int workers = 1;
  BobConvention convention = BobConvention::kUnconjugated;
  MembershipOptions membership;
  /// Outside-L points closer than this are counted as borderline.
  double borderline_distance = 1e-5;
};

struct ScanPoint {
  bool in_local = false;
  bool in_comm = false;
  double local_distance = 0.0;
  /// Only computed for points outside L (L is contained in C).
  std::optional<double> comm_distance;
};

struct ScanReport {
  Scenario scenario;
  int dimension = 0;
  std::size_t n_points = 0;
  std::size_t in_local = 0;
  std::size_t outside_comm = 0;
  std::size_t borderline_local = 0;
  double fraction_in_local = 0.0;
  double fraction_outside_comm = 0.0;
  std::uint64_t seed = 0;
  BobConvention convention = BobConvention::kUnconjugated;
  std::vector<ScanPoint> points;

  nlohmann::json to_json() const;
  /// index,in_local,in_comm,local_distance,comm_distance
  std::string csv() const;
};

/// Point i of a scan: Haar bases for every input, drawn from stream (seed, i).
Behavior haar_point(const Scenario& s, int d, std::uint64_t seed, std::uint64_t index,
                    BobConvention convention);

/// Samples n_points behaviors and tests each against L and C.
ScanReport haar_scan(const Scenario& s, int d, std::size_t n_points,
                     const ScanOptions& options);

// ---------------------------------------------------------------------------
// Protocol error sweeps across states.

struct ThetaSweepOptions {
  std::size_t settings = 500;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
  /// At theta = pi/4 use the exact max-entangled protocol instead of the
  /// fitted coefficients.
  bool exact_at_max_entangled = false;
  Smoothing smoothing = Smoothing::kNone;
};

struct ThetaSweepEntry {
  std::string label;
  SweepSummary summary;
};

/// One sweep per preset label (e.g. "5pi/32"), all over the same settings.
std::vector<ThetaSweepEntry> theta_sweep(const std::vector<std::string>& labels,
                                         const ThetaSweepOptions& options);

/// Parses "pi/4", "5pi/32", "3*pi/16", "0.5" etc. into radians.
double parse_angle(const std::string& text);

// ---------------------------------------------------------------------------
// Noise-threshold studies.

struct VisibilityStudy {
  Scenario scenario;
  VisibilityResult result;
  /// Quantum threshold as a noise weight: the mixture with noise weight
  /// reference_wq or more is quantum.
  std::optional<double> reference_wq;
  /// reference_wq - w_C with w_C = 1 - w* the noise weight for the set.
  std::optional<double> gap;
  /// The point is already in the set (w* = 1): no candidate for a violation.
  bool no_candidate = false;
  /// Some noise weight at or above reference_wq is certified outside the set.
  bool violation = false;

  nlohmann::json to_json() const;
};

/// A violation needs reference_wq below the certified outside noise weight by
/// more than reference_precision (tabulated thresholds carry 4 decimals).
VisibilityStudy visibility_study(const Behavior& point, const Behavior& noise,
                                 std::optional<double> reference_wq,
                                 SetTag tag = SetTag::kComm,
                                 const VisibilityOptions& options = {},
                                 double reference_precision = 5e-5);

// ---------------------------------------------------------------------------
// Run directories.

/// Writes each file into <root>/<experiment>_seed<seed>_<timestamp>/ together
/// with manifest.json (config, code version, timestamp, file list). Returns
/// the directory path. File contents never include the timestamp.
std::string write_run_directory(const std::string& root, const std::string& experiment,
                                std::uint64_t seed, const nlohmann::json& config,
                                const std::map<std::string, std::string>& files);

}  // namespace onebit
