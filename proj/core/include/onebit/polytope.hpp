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

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "onebit/behavior.hpp"

namespace onebit {

/// Upper bound on |X| and |Y| for stored strategies.
inline constexpr int kMaxInputs = 16;
inline constexpr int kMaxAliceInputs = 8;
inline constexpr std::uint64_t kMaxBobPairs = 1'000'000;
inline constexpr std::uint64_t kMaxOracleWork = 10'000'000;

/// Which polytope: local deterministic points (L) or deterministic one-bit
/// strategies (C).
enum class SetTag { kLocal, kComm };

const char* to_string(SetTag tag);
SetTag parse_set_tag(std::string_view text);

/// Deterministic one-bit strategy: Alice sends msg[x], outputs alice_out[x];
/// Bob outputs bob_out[m * ny + y] on message m.
///
/// Canonical form: msg[0] == 0, and when msg is constant Bob's row 1 repeats
/// row 0. Distinct canonical strategies give distinct behaviors. Entries past
/// the scenario's sizes are zero, so the defaulted ordering is lexicographic.
struct CommStrategy {
  std::array<std::uint8_t, kMaxInputs> msg{};
  std::array<std::uint8_t, kMaxInputs> alice_out{};
  std::array<std::uint8_t, 2 * kMaxInputs> bob_out{};

  int bob(int m, int y, int ny) const { return bob_out[m * ny + y]; }
  /// True when the message does not depend on x.
  bool is_local(const Scenario& s) const;

  friend auto operator<=>(const CommStrategy&, const CommStrategy&) = default;
  friend bool operator==(const CommStrategy&, const CommStrategy&) = default;

  nlohmann::json to_json(const Scenario& s) const;
  static CommStrategy from_json(const nlohmann::json& j, const Scenario& s);
};

/// Rewrites a strategy into canonical form without changing its behavior.
CommStrategy canonicalize(CommStrategy strat, const Scenario& s);

/// Throws GuardExceeded when nx > 8, ny > 16, or nb^(2 ny) > 10^6.
void check_enumeration_guard(const Scenario& s);
/// Throws GuardExceeded when nb^(2 ny) * 2^(nx - 1) > 10^7 (or the
/// enumeration guard fails).
void check_oracle_guard(const Scenario& s);

/// |A|^|X| |B|^(2|Y|) 2^|X|, before deduplication.
std::uint64_t naive_comm_count(const Scenario& s);
/// |A|^|X| (|B|^|Y| + (2^(|X|-1) - 1)(|B|^(2|Y|) - |B|^|Y|)).
std::uint64_t comm_vertex_count(const Scenario& s);
/// Same expression with a leading |A| instead of |A|^|X|, as it is often
/// quoted. Reported alongside the exact count when the two differ.
std::uint64_t quoted_comm_vertex_count(const Scenario& s);
std::uint64_t local_vertex_count(const Scenario& s);

/// Every canonical deterministic one-bit strategy, each behavior once.
std::vector<CommStrategy> enumerate_comm_vertices(const Scenario& s);
/// The |A|^|X| |B|^|Y| local deterministic strategies (constant message).
std::vector<CommStrategy> enumerate_local_vertices(const Scenario& s);
std::vector<CommStrategy> enumerate_vertices(const Scenario& s, SetTag tag);

/// table[x][y][a][b] = 1 iff a = alice_out[x] and b = bob_out[msg[x]][y].
Behavior strategy_to_behavior(const CommStrategy& strat, const Scenario& s);

/// <f, V> for the vertex of a strategy, without materializing V.
double strategy_value(const Functional& f, const CommStrategy& strat);
/// <f, P>.
double evaluate(const Functional& f, const Behavior& p);

struct OracleResult {
  CommStrategy strategy;
  double value = 0.0;
};

/// argmax of <direction, V> over every vertex of C, exactly. Works per Bob
/// row pair: with both rows fixed, Alice's message and output decouple over
/// x. Ties go to the first pair in row order, message 0, then smallest a.
OracleResult comm_oracle(const Functional& direction);
/// argmax over the local vertices.
OracleResult local_oracle(const Functional& direction);
OracleResult vertex_oracle(const Functional& direction, SetTag tag);

/// Max of the functional over the chosen set; divided by nx*ny when
/// game_normalized.
double bell_value(const Functional& functional, SetTag tag,
                  bool game_normalized = false);

/// Uniform 1/(na nb) in every block.
Behavior white_noise(const Scenario& s);

/// The (4,2,4,4) locally unbiased, maximally correlated point: block (x, y)
/// is a permutation matrix / 4 with b = a for y = 0 and b = a xor k_x for
/// y = 1, k = (0, 2, 3, 1).
Behavior table2_point();
/// The same marked cells with coefficient 1, read as a Bell functional.
Functional table2_functional();

/// Locally unbiased, maximally correlated point with b = perm(x, y, a) in
/// block (x, y). Requires na == nb and perm(x, y, .) a bijection.
Behavior correlated_point(const Scenario& s,
                          const std::function<int(int x, int y, int a)>& perm);
/// correlated_point with b = (a + x y) mod d.
Behavior cyclic_correlated_point(const Scenario& s);

/// E_00 + E_01 + E_10 - E_11 on (2,2,2,2) with E_xy = sum (-1)^(a+b) P.
Functional chsh_functional();

struct MembershipOptions {
  /// Euclidean distance at or below which a point counts as inside.
  double tolerance = 1e-7;
  int max_iterations = 100000;
  /// Outside is declared once the duality gap is below this fraction of the
  /// squared distance.
  double relative_gap = 1e-6;
};

struct MembershipResult {
  bool inside = false;
  /// Distance from the point to the nearest point found in the polytope.
  double distance = 0.0;
  /// Inside: convex weights over support that reconstruct the point.
  std::vector<CommStrategy> support;
  std::vector<double> weights;
  double reconstruction_error = 0.0;
  /// Outside: f with <f, P> - max_V <f, V> = margin > 0.
  std::optional<Functional> functional;
  double margin = 0.0;
  int iterations = 0;

  nlohmann::json to_json(const Scenario& s) const;
};

/// Decides P in conv(vertices) by minimum-norm-point iterations (Wolfe)
/// driven by the exact vertex oracle; an inside verdict is finished with an
/// exact LP feasibility solve over the active vertices. Throws
/// NonConvergence at the iteration cap.
MembershipResult membership(const Behavior& p, SetTag tag,
                            const MembershipOptions& options = {});

enum class VisibilityMethod { kBisection, kDirect, kBoth };

VisibilityMethod parse_visibility_method(std::string_view text);

struct VisibilityOptions {
  VisibilityMethod method = VisibilityMethod::kBoth;
  /// Final bracket width of the bisection.
  double bisection_tolerance = 5e-5;
  /// Required agreement between the two routes when both run.
  double agreement_tolerance = 1e-4;
  MembershipOptions membership;
};

struct VisibilityResult {
  /// Largest w found with w P + (1 - w) noise inside the set.
  double w_star = 0.0;
  SetTag set_tag = SetTag::kComm;
  /// External threshold, in the noise-weight convention of noise_weight().
  std::optional<double> reference_wq;
  std::optional<double> w_bisection;
  /// Bisection bracket upper end, a certified outside weight (or 1).
  std::optional<double> w_bisection_upper;
  std::optional<double> w_direct;
  bool routes_agree = true;
  /// Membership certificates at the two ends of the final bracket.
  std::optional<MembershipResult> inside_certificate;
  std::optional<MembershipResult> outside_certificate;

  /// Smallest noise weight 1 - w* that brings the mixture into the set. This
  /// is the form in which quantum thresholds are usually tabulated.
  double noise_weight() const { return 1.0 - w_star; }

  nlohmann::json to_json(const Scenario& s) const;
};

/// w* = max{w in [0,1] : w P + (1 - w) noise in set}, by bisection over
/// membership and/or by a weight-maximizing LP with oracle column generation.
/// Throws InvalidArgument if the noise itself is outside the set.
VisibilityResult visibility(const Behavior& p, const Behavior& noise,
                            SetTag tag, const VisibilityOptions& options = {});

/// The LP route alone.
double visibility_direct(const Behavior& p, const Behavior& noise, SetTag tag);

}  // namespace onebit
