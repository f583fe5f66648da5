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

#include "onebit/polytope.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "onebit/error.hpp"

namespace onebit {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t pow_sat(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = mul_sat(r, base);
  return r;
}

// Bob's deterministic responses for one message: row r has digit
// b_y = (r / nb^(ny-1-y)) % nb, so increasing r is lexicographic in y.
std::vector<std::array<std::uint8_t, kMaxInputs>> bob_rows(const Scenario& s) {
  const std::uint64_t n = pow_sat(s.nb, s.ny);
  std::vector<std::array<std::uint8_t, kMaxInputs>> rows(n);
  for (std::uint64_t r = 0; r < n; ++r) {
    std::uint64_t v = r;
    for (int y = s.ny - 1; y >= 0; --y) {
      rows[r][y] = static_cast<std::uint8_t>(v % s.nb);
      v /= s.nb;
    }
  }
  return rows;
}

// Advances a base-`radix` counter over `len` digits; false on wrap-around.
template <std::size_t N>
bool next_digits(std::array<std::uint8_t, N>& digits, int len, int radix) {
  for (int i = len - 1; i >= 0; --i) {
    if (++digits[i] < radix) return true;
    digits[i] = 0;
  }
  return false;
}

void set_row(CommStrategy& st, int m, const std::array<std::uint8_t, kMaxInputs>& row,
             int ny) {
  for (int y = 0; y < ny; ++y) st.bob_out[m * ny + y] = row[y];
}

void check_functional(const Functional& f) {
  f.scenario.validate();
  if (f.table.size() != f.scenario.size()) {
    throw InvalidArgument("functional size does not match its scenario");
  }
}

}  // namespace

const char* to_string(SetTag tag) {
  return tag == SetTag::kLocal ? "local" : "comm";
}

SetTag parse_set_tag(std::string_view text) {
  if (text == "local" || text == "L") return SetTag::kLocal;
  if (text == "comm" || text == "C") return SetTag::kComm;
  throw InvalidArgument("unknown set '" + std::string(text) +
                        "' (expected local or comm)");
}

bool CommStrategy::is_local(const Scenario& s) const {
  for (int x = 1; x < s.nx; ++x) {
    if (msg[x] != msg[0]) return false;
  }
  return true;
}

nlohmann::json CommStrategy::to_json(const Scenario& s) const {
  std::vector<int> m(msg.begin(), msg.begin() + s.nx);
  std::vector<int> a(alice_out.begin(), alice_out.begin() + s.nx);
  std::vector<int> b0(bob_out.begin(), bob_out.begin() + s.ny);
  std::vector<int> b1(bob_out.begin() + s.ny, bob_out.begin() + 2 * s.ny);
  return {{"msg", m}, {"alice_out", a}, {"bob_out", {b0, b1}}};
}

CommStrategy CommStrategy::from_json(const nlohmann::json& j, const Scenario& s) {
  CommStrategy st;
  try {
    const auto m = j.at("msg").get<std::vector<int>>();
    const auto a = j.at("alice_out").get<std::vector<int>>();
    const auto b = j.at("bob_out").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(m.size()) != s.nx || static_cast<int>(a.size()) != s.nx ||
        b.size() != 2 || static_cast<int>(b[0].size()) != s.ny ||
        static_cast<int>(b[1].size()) != s.ny) {
      throw InvalidArgument("strategy arrays do not match scenario " + s.to_string());
    }
    for (int x = 0; x < s.nx; ++x) {
      if (m[x] < 0 || m[x] > 1 || a[x] < 0 || a[x] >= s.na) {
        throw InvalidArgument("strategy entry out of range");
      }
      st.msg[x] = static_cast<std::uint8_t>(m[x]);
      st.alice_out[x] = static_cast<std::uint8_t>(a[x]);
    }
    for (int k = 0; k < 2; ++k) {
      for (int y = 0; y < s.ny; ++y) {
        if (b[k][y] < 0 || b[k][y] >= s.nb) {
          throw InvalidArgument("strategy entry out of range");
        }
        st.bob_out[k * s.ny + y] = static_cast<std::uint8_t>(b[k][y]);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed strategy: ") + e.what());
  }
  return st;
}

CommStrategy canonicalize(CommStrategy st, const Scenario& s) {
  if (st.is_local(s)) {
    const int used = st.msg[0];
    for (int y = 0; y < s.ny; ++y) {
      const auto b = st.bob_out[used * s.ny + y];
      st.bob_out[y] = b;
      st.bob_out[s.ny + y] = b;
    }
    for (int x = 0; x < s.nx; ++x) st.msg[x] = 0;
    return st;
  }
  if (st.msg[0] == 1) {
    for (int x = 0; x < s.nx; ++x) st.msg[x] ^= 1;
    for (int y = 0; y < s.ny; ++y) std::swap(st.bob_out[y], st.bob_out[s.ny + y]);
  }
  return st;
}

void check_enumeration_guard(const Scenario& s) {
  s.validate();
  if (s.nx > kMaxAliceInputs || s.ny > kMaxInputs || s.na > 255 || s.nb > 255) {
    throw GuardExceeded("scenario " + s.to_string() +
                        " exceeds input/output limits (nx <= 8, ny <= 16)");
  }
  if (pow_sat(s.nb, 2 * s.ny) > kMaxBobPairs) {
    throw GuardExceeded("scenario " + s.to_string() +
                        ": nb^(2 ny) exceeds 10^6 Bob row pairs");
  }
}

void check_oracle_guard(const Scenario& s) {
  check_enumeration_guard(s);
  if (mul_sat(pow_sat(s.nb, 2 * s.ny), pow_sat(2, s.nx - 1)) > kMaxOracleWork) {
    throw GuardExceeded("scenario " + s.to_string() +
                        ": nb^(2 ny) 2^(nx-1) exceeds 10^7");
  }
}

std::uint64_t naive_comm_count(const Scenario& s) {
  return mul_sat(mul_sat(pow_sat(s.na, s.nx), pow_sat(s.nb, 2 * s.ny)),
                 pow_sat(2, s.nx));
}

std::uint64_t comm_vertex_count(const Scenario& s) {
  const std::uint64_t rows = pow_sat(s.nb, s.ny);
  const std::uint64_t pairs = pow_sat(s.nb, 2 * s.ny);
  const std::uint64_t msgs = pow_sat(2, s.nx - 1) - 1;
  return mul_sat(pow_sat(s.na, s.nx), rows + mul_sat(msgs, pairs - rows));
}

std::uint64_t quoted_comm_vertex_count(const Scenario& s) {
  const std::uint64_t rows = pow_sat(s.nb, s.ny);
  const std::uint64_t pairs = pow_sat(s.nb, 2 * s.ny);
  const std::uint64_t msgs = pow_sat(2, s.nx - 1) - 1;
  return mul_sat(static_cast<std::uint64_t>(s.na), rows + mul_sat(msgs, pairs - rows));
}

std::uint64_t local_vertex_count(const Scenario& s) {
  return mul_sat(pow_sat(s.na, s.nx), pow_sat(s.nb, s.ny));
}

std::vector<CommStrategy> enumerate_comm_vertices(const Scenario& s) {
  check_enumeration_guard(s);
  const auto rows = bob_rows(s);
  std::vector<CommStrategy> out;
  out.reserve(comm_vertex_count(s));
  std::array<std::uint8_t, kMaxInputs> alice{};
  do {
    CommStrategy st;
    st.alice_out = alice;
    // Constant message: Bob's second row mirrors the first.
    for (const auto& r : rows) {
      set_row(st, 0, r, s.ny);
      set_row(st, 1, r, s.ny);
      out.push_back(st);
    }
    // Non-constant messages with msg[0] = 0 and distinct rows.
    std::array<std::uint8_t, kMaxInputs> msg{};
    while (next_digits(msg, s.nx, 2)) {
      if (msg[0] != 0) break;
      st.msg = msg;
      for (std::size_t r0 = 0; r0 < rows.size(); ++r0) {
        set_row(st, 0, rows[r0], s.ny);
        for (std::size_t r1 = 0; r1 < rows.size(); ++r1) {
          if (r1 == r0) continue;
          set_row(st, 1, rows[r1], s.ny);
          out.push_back(st);
        }
      }
    }
  } while (next_digits(alice, s.nx, s.na));
  return out;
}

std::vector<CommStrategy> enumerate_local_vertices(const Scenario& s) {
  check_enumeration_guard(s);
  const auto rows = bob_rows(s);
  std::vector<CommStrategy> out;
  out.reserve(local_vertex_count(s));
  std::array<std::uint8_t, kMaxInputs> alice{};
  do {
    CommStrategy st;
    st.alice_out = alice;
    for (const auto& r : rows) {
      set_row(st, 0, r, s.ny);
      set_row(st, 1, r, s.ny);
      out.push_back(st);
    }
  } while (next_digits(alice, s.nx, s.na));
  return out;
}

std::vector<CommStrategy> enumerate_vertices(const Scenario& s, SetTag tag) {
  return tag == SetTag::kLocal ? enumerate_local_vertices(s)
                               : enumerate_comm_vertices(s);
}

Behavior strategy_to_behavior(const CommStrategy& st, const Scenario& s) {
  std::vector<double> t(s.size(), 0.0);
  for (int x = 0; x < s.nx; ++x) {
    for (int y = 0; y < s.ny; ++y) {
      t[s.index(x, y, st.alice_out[x], st.bob(st.msg[x], y, s.ny))] = 1.0;
    }
  }
  return Behavior(s, std::move(t));
}

double strategy_value(const Functional& f, const CommStrategy& st) {
  const Scenario& s = f.scenario;
  double v = 0.0;
  for (int x = 0; x < s.nx; ++x) {
    for (int y = 0; y < s.ny; ++y) {
      v += f.at(x, y, st.alice_out[x], st.bob(st.msg[x], y, s.ny));
    }
  }
  return v;
}

double evaluate(const Functional& f, const Behavior& p) {
  if (f.scenario != p.scenario()) {
    throw InvalidArgument("functional and behavior scenarios differ");
  }
  double v = 0.0;
  const auto t = p.table();
  for (std::size_t i = 0; i < t.size(); ++i) v += f.table[i] * t[i];
  return v;
}

namespace {

// best[x][r] = max_a sum_y f[x][y][a][row_r[y]] and the smallest maximizing a.
struct RowScores {
  std::vector<double> best;
  std::vector<std::uint8_t> arg;
  std::size_t rows = 0;

  double value(int x, std::size_t r) const { return best[x * rows + r]; }
  std::uint8_t alice(int x, std::size_t r) const { return arg[x * rows + r]; }
};

RowScores score_rows(const Functional& f,
                     const std::vector<std::array<std::uint8_t, kMaxInputs>>& rows) {
  const Scenario& s = f.scenario;
  RowScores sc;
  sc.rows = rows.size();
  sc.best.assign(static_cast<std::size_t>(s.nx) * rows.size(), 0.0);
  sc.arg.assign(sc.best.size(), 0);
  for (int x = 0; x < s.nx; ++x) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double best = -std::numeric_limits<double>::infinity();
      std::uint8_t arg = 0;
      for (int a = 0; a < s.na; ++a) {
        double v = 0.0;
        for (int y = 0; y < s.ny; ++y) v += f.at(x, y, a, rows[r][y]);
        if (v > best) {
          best = v;
          arg = static_cast<std::uint8_t>(a);
        }
      }
      sc.best[x * rows.size() + r] = best;
      sc.arg[x * rows.size() + r] = arg;
    }
  }
  return sc;
}

}  // namespace

OracleResult comm_oracle(const Functional& direction) {
  check_functional(direction);
  const Scenario& s = direction.scenario;
  check_oracle_guard(s);
  const auto rows = bob_rows(s);
  const RowScores sc = score_rows(direction, rows);

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_r0 = 0, best_r1 = 0;
  for (std::size_t r0 = 0; r0 < rows.size(); ++r0) {
    for (std::size_t r1 = 0; r1 < rows.size(); ++r1) {
      double v = 0.0;
      for (int x = 0; x < s.nx; ++x) v += std::max(sc.value(x, r0), sc.value(x, r1));
      if (v > best) {
        best = v;
        best_r0 = r0;
        best_r1 = r1;
      }
    }
  }

  CommStrategy st;
  set_row(st, 0, rows[best_r0], s.ny);
  set_row(st, 1, rows[best_r1], s.ny);
  for (int x = 0; x < s.nx; ++x) {
    const bool use_second = sc.value(x, best_r1) > sc.value(x, best_r0);
    st.msg[x] = use_second ? 1 : 0;
    st.alice_out[x] = sc.alice(x, use_second ? best_r1 : best_r0);
  }
  st = canonicalize(st, s);
  return {st, strategy_value(direction, st)};
}

OracleResult local_oracle(const Functional& direction) {
  check_functional(direction);
  const Scenario& s = direction.scenario;
  check_enumeration_guard(s);
  const auto rows = bob_rows(s);
  const RowScores sc = score_rows(direction, rows);

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_r = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double v = 0.0;
    for (int x = 0; x < s.nx; ++x) v += sc.value(x, r);
    if (v > best) {
      best = v;
      best_r = r;
    }
  }
  CommStrategy st;
  set_row(st, 0, rows[best_r], s.ny);
  set_row(st, 1, rows[best_r], s.ny);
  for (int x = 0; x < s.nx; ++x) st.alice_out[x] = sc.alice(x, best_r);
  return {st, strategy_value(direction, st)};
}

OracleResult vertex_oracle(const Functional& direction, SetTag tag) {
  return tag == SetTag::kLocal ? local_oracle(direction) : comm_oracle(direction);
}

double bell_value(const Functional& functional, SetTag tag, bool game_normalized) {
  const double v = vertex_oracle(functional, tag).value;
  if (!game_normalized) return v;
  return v / (static_cast<double>(functional.scenario.nx) * functional.scenario.ny);
}

Behavior white_noise(const Scenario& s) { return Behavior::uniform(s); }

Behavior correlated_point(const Scenario& s,
                          const std::function<int(int, int, int)>& perm) {
  s.validate();
  if (s.na != s.nb) {
    throw InvalidArgument("maximally correlated points need na == nb");
  }
  std::vector<double> t(s.size(), 0.0);
  const double mass = 1.0 / s.na;
  for (int x = 0; x < s.nx; ++x) {
    for (int y = 0; y < s.ny; ++y) {
      std::vector<char> hit(s.nb, 0);
      for (int a = 0; a < s.na; ++a) {
        const int b = perm(x, y, a);
        if (b < 0 || b >= s.nb || hit[b]) {
          throw InvalidArgument("correlation map is not a permutation");
        }
        hit[b] = 1;
        t[s.index(x, y, a, b)] = mass;
      }
    }
  }
  return Behavior(s, std::move(t));
}

Behavior cyclic_correlated_point(const Scenario& s) {
  return correlated_point(s, [&](int x, int y, int a) { return (a + x * y) % s.nb; });
}

namespace {

constexpr int kTable2Xor[4] = {0, 2, 3, 1};
constexpr Scenario kTable2Scenario{4, 2, 4, 4};

int table2_partner(int x, int y, int a) { return y == 0 ? a : a ^ kTable2Xor[x]; }

}  // namespace

Behavior table2_point() { return correlated_point(kTable2Scenario, table2_partner); }

Functional table2_functional() {
  Functional f = Functional::zeros(kTable2Scenario);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 4; ++a) f.at(x, y, a, table2_partner(x, y, a)) = 1.0;
    }
  }
  return f;
}

Functional chsh_functional() {
  Functional f = Functional::zeros(Scenario{2, 2, 2, 2});
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double coeff = (x == 1 && y == 1) ? -1.0 : 1.0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) f.at(x, y, a, b) = coeff * (a == b ? 1.0 : -1.0);
      }
    }
  }
  return f;
}

}  // namespace onebit
