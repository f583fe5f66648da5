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

#include "onebit/qstate.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

#include "onebit/error.hpp"

namespace onebit {

BlochVector::BlochVector(double x, double y, double z) : v_{x, y, z} {
  const double n = v_.norm();
  if (!std::isfinite(n) || std::abs(n * n - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "Bloch vector (" << x << ", " << y << ", " << z
       << ") is not unit norm";
    throw InvalidArgument(os.str());
  }
}

BlochVector BlochVector::normalized(Vec3 v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  }
  return BlochVector((1.0 / n) * v);
}

BlochVector random_unit_vector(CounterRng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Vec3 v{normal(rng), normal(rng), normal(rng)};
    if (v.norm() > 1e-12) return BlochVector::normalized(v);
  }
}

TwoQubitState::TwoQubitState(double theta) : theta_(theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 4)) {
    std::ostringstream os;
    os.precision(17);
    os << "theta = " << theta << " outside [0, pi/4]";
    throw InvalidArgument(os.str());
  }
}

TwoQubitState TwoQubitState::maximally_entangled() {
  return TwoQubitState(std::numbers::pi / 4);
}

Eigen::Vector4cd TwoQubitState::amplitudes() const {
  return Eigen::Vector4cd(0.0, std::cos(theta_), -std::sin(theta_), 0.0);
}

namespace {

using Mat2 = Eigen::Matrix2cd;

// (I + sign * n.sigma) / 2
Mat2 projector(const BlochVector& n, int sign_int) {
  const double sign = sign_int;
  const std::complex<double> i(0.0, 1.0);
  Mat2 m;
  m(0, 0) = 1.0 + sign * n.z();
  m(0, 1) = sign * (n.x() - i * n.y());
  m(1, 0) = sign * (n.x() + i * n.y());
  m(1, 1) = 1.0 - sign * n.z();
  return 0.5 * m;
}

constexpr int kSigns[2] = {+1, -1};

}  // namespace

Behavior born_behavior(const TwoQubitState& state, const BlochVector& a_hat,
                       const BlochVector& b_hat) {
  // Coefficient matrix C with |psi> = sum_ij C_ij |i>|j>; applying
  // Pa (x) Pb maps C to Pa C Pb^T.
  const Eigen::Vector4cd amp = state.amplitudes();
  Mat2 coeff;
  coeff << amp(0), amp(1), amp(2), amp(3);

  std::vector<double> table(4);
  for (int ia = 0; ia < 2; ++ia) {
    const Mat2 pa = projector(a_hat, kSigns[ia]);
    for (int ib = 0; ib < 2; ++ib) {
      const Mat2 pb = projector(b_hat, kSigns[ib]);
      table[ia * 2 + ib] = (pa * coeff * pb.transpose()).squaredNorm();
    }
  }
  return Behavior(Scenario{1, 1, 2, 2}, std::move(table));
}

CorrelationStats closed_form_stats(const TwoQubitState& state,
                                   const BlochVector& a_hat,
                                   const BlochVector& b_hat) {
  const double c2 = std::cos(2.0 * state.theta());
  const double s2 = std::sin(2.0 * state.theta());
  CorrelationStats out;
  out.mean_a = c2 * a_hat.z();
  out.mean_b = -c2 * b_hat.z();
  out.correlator =
      -s2 * (a_hat.x() * b_hat.x() + a_hat.y() * b_hat.y()) - a_hat.z() * b_hat.z();
  return out;
}

QuditBasis::QuditBasis(Eigen::MatrixXcd vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() < 1 || vectors_.rows() != vectors_.cols()) {
    throw InvalidArgument("qudit basis must be a non-empty square matrix");
  }
  const double r = orthonormality_residual();
  if (!(r <= kOrthonormalityTolerance)) {
    std::ostringstream os;
    os << "qudit basis is not orthonormal (residual " << r << ")";
    throw InvalidArgument(os.str());
  }
}

QuditBasis QuditBasis::computational(int d) {
  if (d < 1) throw InvalidArgument("qudit dimension must be >= 1");
  return QuditBasis(Eigen::MatrixXcd::Identity(d, d));
}

double QuditBasis::orthonormality_residual() const {
  const Eigen::MatrixXcd gram = vectors_.adjoint() * vectors_;
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(vectors_.cols(), vectors_.cols());
  return (gram - id).cwiseAbs().maxCoeff();
}

nlohmann::json QuditBasis::to_json() const {
  nlohmann::json vecs = nlohmann::json::array();
  for (int c = 0; c < vectors_.cols(); ++c) {
    std::vector<double> flat;
    flat.reserve(2 * vectors_.rows());
    for (int r = 0; r < vectors_.rows(); ++r) {
      flat.push_back(vectors_(r, c).real());
      flat.push_back(vectors_(r, c).imag());
    }
    vecs.push_back(std::move(flat));
  }
  return {{"dimension", dimension()}, {"vectors", std::move(vecs)}};
}

QuditBasis QuditBasis::from_json(const nlohmann::json& j) {
  try {
    const int d = j.at("dimension").get<int>();
    const auto& vecs = j.at("vectors");
    if (d < 1 || static_cast<int>(vecs.size()) != d) {
      throw InvalidArgument("qudit basis needs exactly d vectors");
    }
    Eigen::MatrixXcd m(d, d);
    for (int c = 0; c < d; ++c) {
      const auto flat = vecs[c].get<std::vector<double>>();
      if (static_cast<int>(flat.size()) != 2 * d) {
        throw InvalidArgument("qudit vector needs 2*d interleaved entries");
      }
      for (int r = 0; r < d; ++r) m(r, c) = {flat[2 * r], flat[2 * r + 1]};
    }
    return QuditBasis(std::move(m));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed qudit basis: ") + e.what());
  }
}

QuditBasis haar_random_basis(int d, CounterRng& rng) {
  if (d < 2) throw InvalidArgument("Haar sampling needs d >= 2");
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  Eigen::MatrixXcd z(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = {re, im};
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const std::complex<double> rkk = r(k, k);
    const double mag = std::abs(rkk);
    // Q diag(r_kk/|r_kk|) pairs with diag(conj phase) R, whose diagonal is
    // then |r_kk| > 0.
    if (mag > 0.0) q.col(k) *= rkk / mag;
  }
  return QuditBasis(std::move(q));
}

const char* to_string(BobConvention c) {
  return c == BobConvention::kConjugated ? "conjugated" : "unconjugated";
}

Behavior max_entangled_qudit_behavior(int d,
                                      const std::vector<QuditBasis>& alice_bases,
                                      const std::vector<QuditBasis>& bob_bases,
                                      BobConvention convention) {
  if (d < 1) throw InvalidArgument("qudit dimension must be >= 1");
  if (alice_bases.empty() || bob_bases.empty()) {
    throw InvalidArgument("measurement basis lists must be non-empty");
  }
  for (const auto* list : {&alice_bases, &bob_bases}) {
    for (const auto& b : *list) {
      if (b.dimension() != d) {
        throw InvalidArgument("basis dimension " + std::to_string(b.dimension()) +
                              " does not match d = " + std::to_string(d));
      }
    }
  }
  const Scenario s{static_cast<int>(alice_bases.size()),
                   static_cast<int>(bob_bases.size()), d, d};
  std::vector<double> table(s.size());
  // (<a| (x) <b|) sum_i |ii> / sqrt(d) = sum_i conj(a_i) conj(b_i) / sqrt(d),
  // so P = |a^dagger conj(b)|^2 / d. The conjugated convention replaces b by
  // conj(b), giving |<a|b>|^2 / d.
  for (int x = 0; x < s.nx; ++x) {
    const Eigen::MatrixXcd& av = alice_bases[x].vectors();
    for (int y = 0; y < s.ny; ++y) {
      const Eigen::MatrixXcd bv = convention == BobConvention::kConjugated
                                      ? bob_bases[y].vectors()
                                      : bob_bases[y].vectors().conjugate().eval();
      const Eigen::MatrixXcd overlap = av.adjoint() * bv;
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          table[s.index(x, y, a, b)] = std::norm(overlap(a, b)) / d;
        }
      }
    }
  }
  return Behavior(s, std::move(table));
}

}  // namespace onebit
