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

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the library's numerical code paths.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "onebit/behavior.hpp"
#include "onebit/qstate.hpp"

namespace onebit::oracle {

using cd = std::complex<double>;

/// P(A,B) from tr(rho (Pa (x) Pb)) with rho = |psi><psi| built as a dense
/// 4x4 matrix and explicit Kronecker products.
inline std::array<double, 4> dense_born(double theta, const std::array<double, 3>& a,
                                        const std::array<double, 3>& b) {
  const cd i(0.0, 1.0);
  Eigen::Matrix2cd sx, sy, sz, id;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  id = Eigen::Matrix2cd::Identity();
  Eigen::Vector4cd psi;
  psi << 0.0, std::cos(theta), -std::sin(theta), 0.0;
  const Eigen::Matrix4cd rho = psi * psi.adjoint();
  auto proj = [&](const std::array<double, 3>& n, double s) -> Eigen::Matrix2cd {
    return 0.5 * (id + s * (n[0] * sx + n[1] * sy + n[2] * sz));
  };
  std::array<double, 4> out{};
  const double signs[2] = {+1.0, -1.0};
  for (int ka = 0; ka < 2; ++ka) {
    for (int kb = 0; kb < 2; ++kb) {
      const Eigen::Matrix2cd pa = proj(a, signs[ka]);
      const Eigen::Matrix2cd pb = proj(b, signs[kb]);
      Eigen::Matrix4cd k;
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) k.block<2, 2>(2 * r, 2 * c) = pa(r, c) * pb;
      }
      out[ka * 2 + kb] = (rho * k).trace().real();
    }
  }
  return out;
}

/// |(<a| (x) <b|) Phi_d|^2 by forming the d^2-dimensional state and the
/// product bra explicitly. Bob's vectors are used as given (unconjugated).
inline double qudit_probability(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const int d = static_cast<int>(a.size());
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(d * d);
  for (int k = 0; k < d; ++k) phi(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::VectorXcd bra(d * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) bra(r * d + c) = std::conj(a(r)) * std::conj(b(c));
  }
  cd amp = 0.0;
  for (int k = 0; k < d * d; ++k) amp += bra(k) * phi(k);
  return std::norm(amp);
}

/// A raw one-bit strategy: msg[x], alice[x], bob[m][y] with no canonical form.
struct RawStrategy {
  std::vector<int> msg, alice, bob0, bob1;
};

/// Every raw strategy of the scenario, |A|^|X| |B|^(2|Y|) 2^|X| of them.
inline std::vector<RawStrategy> raw_strategies(const Scenario& s) {
  std::vector<RawStrategy> out;
  const auto pow = [](int b, int e) {
    std::int64_t r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
  };
  const std::int64_t n_msg = pow(2, s.nx), n_alice = pow(s.na, s.nx),
                     n_bob = pow(s.nb, 2 * s.ny);
  for (std::int64_t m = 0; m < n_msg; ++m) {
    for (std::int64_t al = 0; al < n_alice; ++al) {
      for (std::int64_t bo = 0; bo < n_bob; ++bo) {
        RawStrategy r;
        std::int64_t mm = m, aa = al, bb = bo;
        for (int x = 0; x < s.nx; ++x) {
          r.msg.push_back(static_cast<int>(mm % 2));
          mm /= 2;
          r.alice.push_back(static_cast<int>(aa % s.na));
          aa /= s.na;
        }
        for (int y = 0; y < s.ny; ++y) {
          r.bob0.push_back(static_cast<int>(bb % s.nb));
          bb /= s.nb;
        }
        for (int y = 0; y < s.ny; ++y) {
          r.bob1.push_back(static_cast<int>(bb % s.nb));
          bb /= s.nb;
        }
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

/// Dense 0/1 table of a raw strategy in row-major (x, y, a, b) order.
inline std::vector<std::uint8_t> raw_table(const RawStrategy& r, const Scenario& s) {
  std::vector<std::uint8_t> t(s.size(), 0);
  for (int x = 0; x < s.nx; ++x) {
    for (int y = 0; y < s.ny; ++y) {
      const int b = r.msg[x] == 0 ? r.bob0[y] : r.bob1[y];
      t[((x * s.ny + y) * s.na + r.alice[x]) * s.nb + b] = 1;
    }
  }
  return t;
}

/// Distinct behaviors among all raw strategies.
inline std::set<std::vector<std::uint8_t>> dedup_tables(const Scenario& s) {
  std::set<std::vector<std::uint8_t>> tables;
  for (const auto& r : raw_strategies(s)) tables.insert(raw_table(r, s));
  return tables;
}

/// Same, restricted to constant messages.
inline std::set<std::vector<std::uint8_t>> dedup_local_tables(const Scenario& s) {
  std::set<std::vector<std::uint8_t>> tables;
  for (const auto& r : raw_strategies(s)) {
    bool constant = true;
    for (int v : r.msg) constant = constant && v == r.msg[0];
    if (constant) tables.insert(raw_table(r, s));
  }
  return tables;
}

/// max over the given tables of <direction, table>.
inline double brute_max(const std::set<std::vector<std::uint8_t>>& tables,
                        const std::vector<double>& direction) {
  double best = -INFINITY;
  for (const auto& t : tables) {
    double v = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t[k]) v += direction[k];
    }
    best = std::max(best, v);
  }
  return best;
}

}  // namespace onebit::oracle
