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

#include "onebit/lhv.hpp"

#include <algorithm>
#include <thread>

#include "onebit/error.hpp"

namespace onebit {

LhvSample sample_lhv(CounterRng& rng) {
  BlochVector l1 = random_unit_vector(rng);
  BlochVector l2 = random_unit_vector(rng);
  return {l1, l2};
}

PartyTag parse_party_tag(std::string_view name) {
  if (name == "alice1") return PartyTag::kAlice1;
  if (name == "alice2") return PartyTag::kAlice2;
  if (name == "bob1") return PartyTag::kBob1;
  if (name == "bob2") return PartyTag::kBob2;
  throw InvalidArgument("unknown party tag '" + std::string(name) + "'");
}

ProtocolRound max_entangled_round(const BlochVector& a_hat,
                                  const BlochVector& b_hat,
                                  const LhvSample& lhv) {
  const Vec3& l1 = lhv.lambda1.vec();
  const Vec3& l2 = lhv.lambda2.vec();
  ProtocolRound r;
  r.comm_bit = sign_of(a_hat.dot(l1)) * sign_of(a_hat.dot(l2));
  const Vec3 shared = l1 + static_cast<double>(r.comm_bit) * l2;
  r.a_out = -sign_of(a_hat.dot(shared));
  r.b_out = sign_of(b_hat.dot(shared));
  return r;
}

ProtocolRound toner_bacon_round(const BlochVector& a_hat,
                                const BlochVector& b_hat,
                                const LhvSample& lhv) {
  const Vec3& l1 = lhv.lambda1.vec();
  const Vec3& l2 = lhv.lambda2.vec();
  ProtocolRound r;
  r.comm_bit = sign_of(a_hat.dot(l1)) * sign_of(a_hat.dot(l2));
  r.a_out = -sign_of(a_hat.dot(l1));
  r.b_out = sign_of(b_hat.dot(l1 + static_cast<double>(r.comm_bit) * l2));
  return r;
}

namespace {

const PartyCoefficients& party(PartyTag tag, const ProtocolCoefficients& c) {
  switch (tag) {
    case PartyTag::kAlice1: return c.alice1;
    case PartyTag::kAlice2: return c.alice2;
    case PartyTag::kBob1: return c.bob1;
    case PartyTag::kBob2: return c.bob2;
  }
  throw InvalidArgument("unknown party tag");
}

// alice1 and bob2 output +1 on the negative side of the hemisphere.
int hemisphere_orientation(PartyTag tag) {
  switch (tag) {
    case PartyTag::kAlice1: return -1;
    case PartyTag::kAlice2: return +1;
    case PartyTag::kBob1: return +1;
    case PartyTag::kBob2: return -1;
  }
  throw InvalidArgument("unknown party tag");
}

double clip(double v, double lo, double hi) { return std::clamp(v, lo, hi); }

}  // namespace

double semianalytical_local_prob(PartyTag tag, const BlochVector& m_hat,
                                 const LhvSample& lhv,
                                 const ProtocolCoefficients& coeffs) {
  const PartyCoefficients& p = party(tag, coeffs);
  const Vec3& l1 = lhv.lambda1.vec();
  const Vec3& l2 = lhv.lambda2.vec();
  // Hemisphere direction, deliberately left unnormalized.
  const Vec3 dir = p.u * l1 + l2 + p.v * Vec3{0.0, 0.0, 1.0};
  const double bias = p.w + p.x * l1.z + p.y * l2.z;
  const int s = sign_of(m_hat.dot(dir) + bias);
  return 0.5 * (1.0 + hemisphere_orientation(tag) * s);
}

double semianalytical_comm_prob(const BlochVector& a_hat, const LhvSample& lhv,
                                const ProtocolCoefficients& coeffs) {
  const Vec3& l1 = lhv.lambda1.vec();
  const Vec3& l2 = lhv.lambda2.vec();
  const double bc = coeffs.comm_u + coeffs.comm_v * l2.z * (1.0 - l1.z);
  const double d1 = a_hat.dot(l1);
  const double d2 = a_hat.dot(l2);
  const double f = step(d1 + bc) * step(d2 + bc) +
                   step(-d1 + bc) * step(-d2 + bc) -
                   step(-d1 - bc) * step(d2 - bc) -
                   step(d1 - bc) * step(-d2 - bc);
  return 0.5 * (1.0 - clip(f, -1.0, 1.0));
}

Protocol Protocol::max_entangled() { return Protocol(Kind::kMaxEntangled, {}); }

Protocol Protocol::toner_bacon() { return Protocol(Kind::kTonerBacon, {}); }

Protocol Protocol::semianalytical(ProtocolCoefficients coeffs) {
  return Protocol(Kind::kSemianalytical, std::move(coeffs));
}

Protocol Protocol::parse(const std::string& text) {
  if (text == "max-entangled") return max_entangled();
  if (text == "toner-bacon") return toner_bacon();
  constexpr std::string_view prefix = "semianalytical:";
  if (text.starts_with(prefix)) {
    return semianalytical(load_coefficients(text.substr(prefix.size())));
  }
  throw InvalidArgument("unknown protocol '" + text +
                        "' (expected max-entangled, toner-bacon or "
                        "semianalytical:<preset|path>)");
}

std::string Protocol::name() const {
  switch (kind_) {
    case Kind::kMaxEntangled: return "max-entangled";
    case Kind::kTonerBacon: return "toner-bacon";
    case Kind::kSemianalytical: return "semianalytical";
  }
  return "unknown";
}

namespace {

double indicator(int sign) { return sign > 0 ? 1.0 : 0.0; }

}  // namespace

AliceResponse Protocol::alice(const BlochVector& a_hat,
                              const LhvSample& lhv) const {
  AliceResponse r;
  if (kind_ == Kind::kSemianalytical) {
    r.p_comm_plus = semianalytical_comm_prob(a_hat, lhv, *coeffs_);
    r.p_plus[0] = semianalytical_local_prob(PartyTag::kAlice1, a_hat, lhv, *coeffs_);
    r.p_plus[1] = semianalytical_local_prob(PartyTag::kAlice2, a_hat, lhv, *coeffs_);
    return r;
  }
  const Vec3& l1 = lhv.lambda1.vec();
  const Vec3& l2 = lhv.lambda2.vec();
  const int c = sign_of(a_hat.dot(l1)) * sign_of(a_hat.dot(l2));
  r.p_comm_plus = indicator(c);
  if (kind_ == Kind::kMaxEntangled) {
    r.p_plus[0] = indicator(-sign_of(a_hat.dot(l1 + l2)));
    r.p_plus[1] = indicator(-sign_of(a_hat.dot(l1 - l2)));
  } else {
    r.p_plus[0] = r.p_plus[1] = indicator(-sign_of(a_hat.dot(l1)));
  }
  return r;
}

BobResponse Protocol::bob(const BlochVector& b_hat, const LhvSample& lhv) const {
  BobResponse r;
  if (kind_ == Kind::kSemianalytical) {
    r.p_plus[0] = semianalytical_local_prob(PartyTag::kBob1, b_hat, lhv, *coeffs_);
    r.p_plus[1] = semianalytical_local_prob(PartyTag::kBob2, b_hat, lhv, *coeffs_);
    return r;
  }
  const Vec3& l1 = lhv.lambda1.vec();
  const Vec3& l2 = lhv.lambda2.vec();
  r.p_plus[0] = indicator(sign_of(b_hat.dot(l1 + l2)));
  r.p_plus[1] = indicator(sign_of(b_hat.dot(l1 - l2)));
  return r;
}

OutcomeTable lhv1_single_lambda(const Protocol& protocol,
                                const BlochVector& a_hat,
                                const BlochVector& b_hat,
                                const LhvSample& lhv) {
  const AliceResponse alice = protocol.alice(a_hat, lhv);
  const BobResponse bob = protocol.bob(b_hat, lhv);
  const double weight[2] = {alice.p_comm_plus, 1.0 - alice.p_comm_plus};
  OutcomeTable t{};
  for (int k = 0; k < 2; ++k) {
    if (weight[k] == 0.0) continue;
    const double pa[2] = {alice.p_plus[k], 1.0 - alice.p_plus[k]};
    const double pb[2] = {bob.p_plus[k], 1.0 - bob.p_plus[k]};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) t[a * 2 + b] += weight[k] * pa[a] * pb[b];
    }
  }
  return t;
}

OutcomeTable estimate_behavior(const Protocol& protocol,
                               const BlochVector& a_hat,
                               const BlochVector& b_hat, std::uint64_t n,
                               std::uint64_t seed, std::uint64_t stream_id,
                               const EstimateOptions& options) {
  if (n == 0) throw InvalidArgument("sample count must be >= 1");
  if (options.chunk_size == 0) throw InvalidArgument("chunk size must be >= 1");
  const std::uint64_t chunks = (n + options.chunk_size - 1) / options.chunk_size;
  std::vector<OutcomeTable> partial(chunks, OutcomeTable{});

  auto run_chunk = [&](std::uint64_t chunk) {
    CounterRng rng = CounterRng::stream(seed, stream_id, chunk);
    const std::uint64_t begin = chunk * options.chunk_size;
    const std::uint64_t end = std::min(n, begin + options.chunk_size);
    OutcomeTable acc{};
    for (std::uint64_t i = begin; i < end; ++i) {
      const OutcomeTable t =
          lhv1_single_lambda(protocol, a_hat, b_hat, sample_lhv(rng));
      for (int k = 0; k < 4; ++k) acc[k] += t[k];
    }
    partial[chunk] = acc;
  };

  const int workers = std::max(1, std::min<int>(options.workers,
                                                static_cast<int>(chunks)));
  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
  }

  OutcomeTable total{};
  for (const auto& p : partial) {
    for (int k = 0; k < 4; ++k) total[k] += p[k];
  }
  for (auto& v : total) v /= static_cast<double>(n);
  return total;
}

Behavior to_behavior(const OutcomeTable& t) {
  return Behavior(Scenario{1, 1, 2, 2}, std::vector<double>(t.begin(), t.end()));
}

}  // namespace onebit
