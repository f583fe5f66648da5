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
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "onebit/lhv.hpp"
#include "onebit/qstate.hpp"

namespace onebit {

/// Inputs must sum to one within this before any divergence is computed.
inline constexpr double kDistributionTolerance = 1e-9;

/// D_KL(target || model) in nats with 0 ln(0/q) := 0. Returns +infinity when
/// the model puts zero mass where the target does not.
double kl_divergence(std::span<const double> target,
                     std::span<const double> model);

/// Total variational distance, half the L1 distance.
double tvd(std::span<const double> target, std::span<const double> model);

/// -ln(0.05) / kl: samples needed to reject the model at 95% confidence.
/// +infinity at kl = 0; throws InvalidArgument for negative kl.
double n95(double kl);

/// n95 rounded up to a whole sample count, never below 1.
std::uint64_t n95_sample_count(double kl);

/// Floors every entry at epsilon and renormalizes. Only applied when a report
/// is explicitly requested with smoothing.
std::vector<double> smooth_distribution(std::span<const double> p,
                                        double epsilon = 1e-9);

enum class Smoothing { kNone, kFloor };

struct DivergenceReport {
  double kl = 0.0;
  double tvd = 0.0;
  double n95 = 0.0;
  /// Model had zero mass where the target had some (kl is +infinity).
  bool support_violation = false;
  /// The model was floored and renormalized before computing kl.
  bool smoothed = false;

  /// tvd <= sqrt(kl / 2).
  bool satisfies_pinsker() const;
  nlohmann::json to_json() const;
};

DivergenceReport divergence_report(std::span<const double> target,
                                   std::span<const double> model,
                                   Smoothing smoothing = Smoothing::kNone,
                                   double epsilon = 1e-9);

struct Quantiles {
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;

  nlohmann::json to_json() const;
};

/// Linear-interpolation quantiles of a non-empty sample.
Quantiles quantiles(std::vector<double> values);

struct SettingPair {
  BlochVector a;
  BlochVector b;
};

/// Independent uniform (a, b) direction pairs from stream (seed, i).
std::vector<SettingPair> random_settings(std::size_t count, std::uint64_t seed);

/// Stream id derived from the bit patterns of a setting, so results follow
/// the setting and not its position in a list.
std::uint64_t setting_stream_id(const SettingPair& s);

struct SweepOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  int workers = 1;
  Smoothing smoothing = Smoothing::kNone;
};

struct SweepSummary {
  std::string protocol;
  double theta = 0.0;
  std::vector<SettingPair> settings;
  std::vector<DivergenceReport> per_setting;
  Quantiles kl;
  Quantiles tvd;
  Quantiles n95;
  std::size_t support_violations = 0;
};

/// Monte Carlo estimate vs Born rule for every setting.
SweepSummary sweep(const Protocol& protocol, const TwoQubitState& state,
                   const std::vector<SettingPair>& settings,
                   const SweepOptions& options);

/// Header plus one row per setting: ax,ay,az,bx,by,bz,kl,tvd,n95.
std::string sweep_csv(const SweepSummary& summary);
nlohmann::json sweep_summary_json(const SweepSummary& summary);

}  // namespace onebit
