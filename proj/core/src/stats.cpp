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

#include "onebit/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "onebit/error.hpp"

namespace onebit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(std::span<const double> target, std::span<const double> model) {
  if (target.size() != model.size() || target.empty()) {
    throw InvalidArgument("distribution shape mismatch (" +
                          std::to_string(target.size()) + " vs " +
                          std::to_string(model.size()) + ")");
  }
}

void check_normalized(std::span<const double> p, const char* which) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {
      throw InvalidArgument(std::string(which) + " distribution has a negative entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    std::ostringstream os;
    os << which << " distribution sums to " << sum << ", not 1";
    throw InvalidArgument(os.str());
  }
}

// JSON has no infinity; encode it as the string "inf".
nlohmann::json number_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

double kl_divergence(std::span<const double> target,
                     std::span<const double> model) {
  check_pair(target, model);
  check_normalized(target, "target");
  check_normalized(model, "model");
  double kl = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target[i] == 0.0) continue;
    if (model[i] == 0.0) return kInf;
    kl += target[i] * std::log(target[i] / model[i]);
  }
  // Rounding can leave a tiny negative value for near-identical inputs.
  return std::max(kl, 0.0);
}

double tvd(std::span<const double> target, std::span<const double> model) {
  check_pair(target, model);
  double s = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) s += std::abs(target[i] - model[i]);
  return std::min(0.5 * s, 1.0);
}

double n95(double kl) {
  if (!(kl >= 0.0)) throw InvalidArgument("kl divergence must be >= 0");
  if (kl == 0.0) return kInf;
  return -std::log(0.05) / kl;
}

std::uint64_t n95_sample_count(double kl) {
  const double n = n95(kl);
  if (std::isinf(n)) return std::numeric_limits<std::uint64_t>::max();
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n)));
}

std::vector<double> smooth_distribution(std::span<const double> p,
                                        double epsilon) {
  std::vector<double> out(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : out) {
    v = std::max(v, epsilon);
    sum += v;
  }
  for (double& v : out) v /= sum;
  return out;
}

bool DivergenceReport::satisfies_pinsker() const {
  if (std::isinf(kl)) return true;
  // Small slack for rounding in the two sums.
  return tvd <= std::sqrt(kl / 2.0) + 1e-12;
}

nlohmann::json DivergenceReport::to_json() const {
  return {{"kl", number_or_inf(kl)},
          {"tvd", tvd},
          {"n95", number_or_inf(n95)},
          {"support_violation", support_violation},
          {"smoothed", smoothed}};
}

DivergenceReport divergence_report(std::span<const double> target,
                                   std::span<const double> model,
                                   Smoothing smoothing, double epsilon) {
  DivergenceReport r;
  r.tvd = tvd(target, model);
  const double raw = kl_divergence(target, model);
  r.support_violation = std::isinf(raw);
  if (smoothing == Smoothing::kFloor) {
    const auto smoothed = smooth_distribution(model, epsilon);
    r.kl = kl_divergence(target, smoothed);
    r.smoothed = true;
  } else {
    r.kl = raw;
  }
  r.n95 = std::isinf(r.kl) ? 0.0 : n95(r.kl);
  return r;
}

nlohmann::json Quantiles::to_json() const {
  return {{"min", number_or_inf(min)},
          {"q25", number_or_inf(q25)},
          {"median", number_or_inf(median)},
          {"q75", number_or_inf(q75)},
          {"max", number_or_inf(max)}};
}

Quantiles quantiles(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("quantiles of an empty sample");
  std::sort(values.begin(), values.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double f = pos - static_cast<double>(lo);
    if (f == 0.0 || values[lo] == values[hi]) return values[lo];
    return values[lo] + f * (values[hi] - values[lo]);
  };
  return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

std::vector<SettingPair> random_settings(std::size_t count, std::uint64_t seed) {
  std::vector<SettingPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng = CounterRng::stream(seed, i);
    BlochVector a = random_unit_vector(rng);
    BlochVector b = random_unit_vector(rng);
    out.push_back({a, b});
  }
  return out;
}

std::uint64_t setting_stream_id(const SettingPair& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : {s.a.x(), s.a.y(), s.a.z(), s.b.x(), s.b.y(), s.b.z()}) {
    h ^= std::bit_cast<std::uint64_t>(v);
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

SweepSummary sweep(const Protocol& protocol, const TwoQubitState& state,
                   const std::vector<SettingPair>& settings,
                   const SweepOptions& options) {
  if (settings.empty()) throw InvalidArgument("sweep needs at least one setting");
  SweepSummary out;
  out.protocol = protocol.name();
  out.theta = state.theta();
  out.settings = settings;
  out.per_setting.resize(settings.size());

  auto run = [&](std::size_t i) {
    const SettingPair& s = settings[i];
    const Behavior target = born_behavior(state, s.a, s.b);
    const OutcomeTable model = estimate_behavior(
        protocol, s.a, s.b, options.samples, options.seed, setting_stream_id(s));
    out.per_setting[i] =
        divergence_report(target.table(), model, options.smoothing);
  };

  const int workers = std::max(
      1, std::min<int>(options.workers, static_cast<int>(settings.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < settings.size(); ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < settings.size(); i += workers) run(i);
      });
    }
  }

  std::vector<double> kl, tv, n;
  for (const auto& r : out.per_setting) {
    kl.push_back(r.kl);
    tv.push_back(r.tvd);
    n.push_back(r.n95);
    if (r.support_violation) ++out.support_violations;
  }
  out.kl = quantiles(std::move(kl));
  out.tvd = quantiles(std::move(tv));
  out.n95 = quantiles(std::move(n));
  return out;
}

std::string sweep_csv(const SweepSummary& summary) {
  std::string csv = "ax,ay,az,bx,by,bz,kl,tvd,n95\n";
  char buf[512];
  for (std::size_t i = 0; i < summary.settings.size(); ++i) {
    const auto& s = summary.settings[i];
    const auto& r = summary.per_setting[i];
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.a.x(), s.a.y(), s.a.z(), s.b.x(), s.b.y(), s.b.z(), r.kl,
                  r.tvd, r.n95);
    csv += buf;
  }
  return csv;
}

nlohmann::json sweep_summary_json(const SweepSummary& summary) {
  return {{"protocol", summary.protocol},
          {"theta", summary.theta},
          {"settings", summary.settings.size()},
          {"support_violations", summary.support_violations},
          {"kl", summary.kl.to_json()},
          {"tvd", summary.tvd.to_json()},
          {"n95", summary.n95.to_json()}};
}

}  // namespace onebit
