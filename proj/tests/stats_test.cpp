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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "onebit/error.hpp"
#include "onebit/stats.hpp"

namespace onebit {
namespace {

using V = std::vector<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Kl, Identity) {
  const V p = {0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(kl_divergence(p, p), 0.0);
  EXPECT_EQ(tvd(p, p), 0.0);
}

TEST(Kl, ClosedForms) {
  EXPECT_NEAR(kl_divergence(V{1, 0}, V{0.5, 0.5}), std::log(2.0), 1e-15);
  EXPECT_NEAR(kl_divergence(V{0.7, 0.3}, V{0.5, 0.5}),
              0.7 * std::log(1.4) + 0.3 * std::log(0.6), 1e-15);
  EXPECT_NEAR(kl_divergence(V{0.7, 0.3}, V{0.5, 0.5}), 0.08228, 5e-6);
}

TEST(Kl, SupportViolationIsInfinite) {
  EXPECT_EQ(kl_divergence(V{0.5, 0.5}, V{1, 0}), kInf);
  const DivergenceReport r = divergence_report(V{0.5, 0.5}, V{1, 0});
  EXPECT_TRUE(r.support_violation);
  EXPECT_EQ(r.kl, kInf);
  EXPECT_EQ(r.n95, 0.0);
  EXPECT_FALSE(r.smoothed);
}

TEST(Kl, SmoothingIsLabelled) {
  const DivergenceReport r = divergence_report(V{0.5, 0.5}, V{1, 0}, Smoothing::kFloor);
  EXPECT_TRUE(r.smoothed);
  EXPECT_TRUE(std::isfinite(r.kl));
  EXPECT_GT(r.kl, 5.0);
  const auto s = smooth_distribution(V{1, 0}, 1e-9);
  EXPECT_NEAR(s[0] + s[1], 1.0, 1e-15);
  EXPECT_GT(s[1], 0.0);
}

TEST(Kl, RejectsBadInputs) {
  EXPECT_THROW(kl_divergence(V{0.5, 0.5}, V{1.0}), InvalidArgument);
  EXPECT_THROW(kl_divergence(V{0.5, 0.6}, V{0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(tvd(V{0.5, 0.5}, V{1.0}), InvalidArgument);
}

TEST(Tvd, Examples) {
  EXPECT_DOUBLE_EQ(tvd(V{1, 0}, V{0, 1}), 1.0);
  EXPECT_NEAR(tvd(V{0.7, 0.3}, V{0.5, 0.5}), 0.2, 1e-15);
}

TEST(N95, Examples) {
  EXPECT_NEAR(n95(2.9957e-2), 100.0, 1e-2);
  EXPECT_NEAR(n95(2.9957e-4), 1e4, 1.0);
  EXPECT_EQ(n95(0.0), kInf);
  EXPECT_THROW(n95(-1e-3), InvalidArgument);
  EXPECT_EQ(n95(kInf), 0.0);
  EXPECT_EQ(n95_sample_count(kInf), 1u);
  EXPECT_EQ(n95_sample_count(2.9957e-2), 101u);
}

TEST(N95, MonotoneDecreasing) {
  double prev = kInf;
  for (double kl = 1e-8; kl < 10; kl *= 1.5) {
    const double v = n95(kl);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Pinsker, HoldsOnRandomPairs) {
  std::mt19937_64 rng(1);
  std::gamma_distribution<double> g(0.5);
  for (int k = 0; k < 2000; ++k) {
    V p(4), q(4);
    double sp = 0, sq = 0;
    for (int i = 0; i < 4; ++i) {
      sp += p[i] = g(rng) + 1e-300;
      sq += q[i] = g(rng) + 1e-300;
    }
    for (int i = 0; i < 4; ++i) {
      p[i] /= sp;
      q[i] /= sq;
    }
    const DivergenceReport r = divergence_report(p, q);
    EXPECT_TRUE(r.satisfies_pinsker());
    EXPECT_LE(r.tvd, std::sqrt(r.kl / 2) + 1e-12);
  }
}

TEST(Quantiles, LinearInterpolation) {
  const Quantiles q = quantiles({4, 1, 3, 2, 5});
  EXPECT_EQ(q.min, 1);
  EXPECT_EQ(q.q25, 2);
  EXPECT_EQ(q.median, 3);
  EXPECT_EQ(q.q75, 4);
  EXPECT_EQ(q.max, 5);
  const Quantiles r = quantiles({1, 2});
  EXPECT_DOUBLE_EQ(r.median, 1.5);
  EXPECT_DOUBLE_EQ(r.q25, 1.25);
  EXPECT_THROW(quantiles({}), InvalidArgument);
}

TEST(Sweep, SingleSettingQuantilesCollapse) {
  const auto settings = random_settings(1, 3);
  SweepOptions opt;
  opt.samples = 2000;
  opt.seed = 3;
  const SweepSummary s = sweep(Protocol::max_entangled(), TwoQubitState(std::numbers::pi / 4),
                               settings, opt);
  ASSERT_EQ(s.per_setting.size(), 1u);
  const double kl = s.per_setting[0].kl;
  for (double v : {s.kl.min, s.kl.q25, s.kl.median, s.kl.q75, s.kl.max}) EXPECT_EQ(v, kl);
}

TEST(Sweep, PermutationInvariant) {
  auto settings = random_settings(30, 4);
  SweepOptions opt;
  opt.samples = 3000;
  opt.seed = 4;
  const Protocol p = Protocol::semianalytical(builtin_preset("3pi/16"));
  const TwoQubitState st(3 * std::numbers::pi / 16);
  const SweepSummary a = sweep(p, st, settings, opt);
  std::vector<std::size_t> perm(settings.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::mt19937_64 rng(9);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<SettingPair> shuffled;
  for (std::size_t i : perm) shuffled.push_back(settings[i]);
  const SweepSummary b = sweep(p, st, shuffled, opt);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    EXPECT_EQ(b.per_setting[k].kl, a.per_setting[perm[k]].kl);
    EXPECT_EQ(b.per_setting[k].tvd, a.per_setting[perm[k]].tvd);
  }
  EXPECT_EQ(a.kl.median, b.kl.median);
  EXPECT_EQ(a.tvd.q75, b.tvd.q75);
  EXPECT_EQ(a.n95.min, b.n95.min);
}

TEST(Sweep, WorkerCountDoesNotChangeResults) {
  const auto settings = random_settings(12, 5);
  SweepOptions one;
  one.samples = 5000;
  one.seed = 5;
  SweepOptions three = one;
  three.workers = 3;
  const Protocol p = Protocol::semianalytical(builtin_preset("5pi/32"));
  const TwoQubitState st(5 * std::numbers::pi / 32);
  EXPECT_EQ(sweep_csv(sweep(p, st, settings, one)), sweep_csv(sweep(p, st, settings, three)));
}

TEST(Sweep, MaxEntangledKlAtNoiseFloor) {
  SweepOptions opt;
  opt.samples = 1000000;
  opt.seed = 6;
  const SweepSummary s = sweep(Protocol::max_entangled(), TwoQubitState(std::numbers::pi / 4),
                               random_settings(500, 6), opt);
  EXPECT_LE(s.kl.median, 1e-4);
  for (const auto& r : s.per_setting) EXPECT_TRUE(r.satisfies_pinsker());
}

TEST(Sweep, CsvAndSummarySchema) {
  SweepOptions opt;
  opt.samples = 1000;
  const SweepSummary s = sweep(Protocol::toner_bacon(), TwoQubitState(std::numbers::pi / 4),
                               random_settings(3, 7), opt);
  const std::string csv = sweep_csv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "ax,ay,az,bx,by,bz,kl,tvd,n95");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const auto j = sweep_summary_json(s);
  for (const char* key : {"kl", "tvd", "n95"}) {
    ASSERT_TRUE(j.contains(key)) << key;
    for (const char* q : {"min", "q25", "median", "q75", "max"}) EXPECT_TRUE(j[key].contains(q));
  }
}

TEST(RandomSettings, DeterministicAndUnit) {
  const auto a = random_settings(10, 8), b = random_settings(10, 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].a, b[i].a);
    EXPECT_NEAR(a[i].b.vec().norm(), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace onebit
