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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "onebit/qstate.hpp"
#include "onebit/rng.hpp"

namespace onebit {

/// Shared randomness: two independent uniform directions.
struct LhvSample {
  BlochVector lambda1;
  BlochVector lambda2;
};

LhvSample sample_lhv(CounterRng& rng);

/// sgn with sgn(0) := +1.
inline int sign_of(double v) { return v >= 0.0 ? +1 : -1; }
/// Heaviside step with step(0) := 0.
inline double step(double v) { return v > 0.0 ? 1.0 : 0.0; }

/// Hemisphere-rule coefficients for one party and one strategy.
struct PartyCoefficients {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PartyCoefficients&, const PartyCoefficients&) = default;
};

/// Fitted parameters of the semianalytical protocol for one state.
struct ProtocolCoefficients {
  double theta = 0.0;
  PartyCoefficients alice1;
  PartyCoefficients alice2;
  PartyCoefficients bob1;
  PartyCoefficients bob2;
  double comm_u = 0.0;
  double comm_v = 0.0;

  friend bool operator==(const ProtocolCoefficients&,
                         const ProtocolCoefficients&) = default;

  /// {theta, alice1:{u,v,w,x,y}, ..., comm:{u,v}}; no checksum.
  nlohmann::json to_json() const;
  /// Parses the preset schema. If the document carries a "checksum" field it
  /// must match preset_checksum() of the parsed values.
  static ProtocolCoefficients from_json(const nlohmann::json& j);
};

/// FNV-1a 64 over the canonical (sorted-key, compact) dump of to_json(),
/// rendered as 16 hex digits.
std::string preset_checksum(const ProtocolCoefficients& c);

/// Names of the shipped presets: "pi/4", "7pi/32", "3pi/16", "5pi/32", "pi/8".
std::vector<std::string> preset_names();
/// Looks up a shipped preset by name; throws InvalidArgument if unknown.
ProtocolCoefficients builtin_preset(std::string_view name);
/// Shipped preset name if the argument names one, else reads a JSON file.
ProtocolCoefficients load_coefficients(const std::string& name_or_path);

enum class PartyTag { kAlice1, kAlice2, kBob1, kBob2 };

PartyTag parse_party_tag(std::string_view name);

/// One realized round: outcomes and the communicated bit, all +-1.
struct ProtocolRound {
  int a_out = +1;
  int b_out = +1;
  int comm_bit = +1;

  friend bool operator==(const ProtocolRound&, const ProtocolRound&) = default;
};

/// c = sgn(a.l1) sgn(a.l2); A = -sgn(a.(l1 + c l2)); B = sgn(b.(l1 + c l2)).
ProtocolRound max_entangled_round(const BlochVector& a_hat,
                                  const BlochVector& b_hat,
                                  const LhvSample& lhv);

/// As max_entangled_round but with A = -sgn(a.l1).
ProtocolRound toner_bacon_round(const BlochVector& a_hat,
                                const BlochVector& b_hat, const LhvSample& lhv);

/// P(output = +1) of the hemisphere rule for one party/strategy; 0 or 1.
double semianalytical_local_prob(PartyTag tag, const BlochVector& m_hat,
                                 const LhvSample& lhv,
                                 const ProtocolCoefficients& coeffs);

/// P(c = +1) of the simplified communication rule; one of {0, 1/2, 1}.
double semianalytical_comm_prob(const BlochVector& a_hat, const LhvSample& lhv,
                                const ProtocolCoefficients& coeffs);

/// Everything Alice computes from (a, lambda): the probability of sending
/// c = +1 and her P(A = +1) under strategy 1 (c = +1) and 2 (c = -1).
struct AliceResponse {
  double p_comm_plus = 1.0;
  std::array<double, 2> p_plus{1.0, 1.0};
};

/// Bob's P(B = +1) under strategy 1 and 2, from (b, lambda) only.
struct BobResponse {
  std::array<double, 2> p_plus{1.0, 1.0};
};

/// 2x2 outcome table indexed [a * 2 + b], +1 -> 0 and -1 -> 1.
using OutcomeTable = std::array<double, 4>;

/// An LHV+1 protocol. Alice's side never sees b and Bob's side never sees a;
/// the split into alice() and bob() makes that structural.
class Protocol {
 public:
  enum class Kind { kMaxEntangled, kTonerBacon, kSemianalytical };

  static Protocol max_entangled();
  static Protocol toner_bacon();
  static Protocol semianalytical(ProtocolCoefficients coeffs);
  /// "max-entangled", "toner-bacon", or "semianalytical:<preset or path>".
  static Protocol parse(const std::string& text);

  Kind kind() const { return kind_; }
  const std::optional<ProtocolCoefficients>& coefficients() const {
    return coeffs_;
  }
  std::string name() const;

  AliceResponse alice(const BlochVector& a_hat, const LhvSample& lhv) const;
  BobResponse bob(const BlochVector& b_hat, const LhvSample& lhv) const;

 private:
  Protocol(Kind kind, std::optional<ProtocolCoefficients> coeffs)
      : kind_(kind), coeffs_(std::move(coeffs)) {}

  Kind kind_;
  std::optional<ProtocolCoefficients> coeffs_;
};

/// P(A,B|a,b,lambda) = P(c=+1) P1(A) P1(B) + P(c=-1) P2(A) P2(B).
OutcomeTable lhv1_single_lambda(const Protocol& protocol,
                                const BlochVector& a_hat,
                                const BlochVector& b_hat, const LhvSample& lhv);

struct EstimateOptions {
  /// Samples per RNG stream; part of the result's identity, not a tuning knob.
  std::uint64_t chunk_size = 4096;
  /// Worker threads; the result does not depend on this.
  int workers = 1;
};

/// Monte Carlo average of lhv1_single_lambda over n draws. Draw i uses stream
/// (seed, stream_id, i / chunk_size).
OutcomeTable estimate_behavior(const Protocol& protocol,
                               const BlochVector& a_hat,
                               const BlochVector& b_hat, std::uint64_t n,
                               std::uint64_t seed, std::uint64_t stream_id = 0,
                               const EstimateOptions& options = {});

/// Wraps a 2x2 table as a (1,1,2,2) Behavior.
Behavior to_behavior(const OutcomeTable& t);

}  // namespace onebit
