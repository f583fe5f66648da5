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

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "onebit/behavior.hpp"
#include "onebit/rng.hpp"

namespace onebit {

/// Plain 3-vector; may have any length.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;

  double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

/// Unit vector on the Bloch sphere; |v| = 1 within 1e-12.
class BlochVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws InvalidArgument if the components are not unit norm.
  BlochVector(double x, double y, double z);
  explicit BlochVector(Vec3 v) : BlochVector(v.x, v.y, v.z) {}

  /// Rescales a non-zero vector onto the sphere.
  static BlochVector normalized(Vec3 v);

  static BlochVector unit_x() { return {1.0, 0.0, 0.0}; }
  static BlochVector unit_y() { return {0.0, 1.0, 0.0}; }
  static BlochVector unit_z() { return {0.0, 0.0, 1.0}; }

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  double dot(Vec3 o) const { return v_.dot(o); }

  friend bool operator==(const BlochVector&, const BlochVector&) = default;

 private:
  Vec3 v_;
};

/// Uniform direction on S^2 from three normalized standard normals.
BlochVector random_unit_vector(CounterRng& rng);

/// cos(theta)|01> - sin(theta)|10>, theta in [0, pi/4].
class TwoQubitState {
 public:
  explicit TwoQubitState(double theta);

  static TwoQubitState maximally_entangled();

  double theta() const { return theta_; }
  /// Amplitudes in the |00>, |01>, |10>, |11> basis.
  Eigen::Vector4cd amplitudes() const;

 private:
  double theta_;
};

/// P(A, B | a, b) as a (1,1,2,2) behavior. Outcome +1 is index 0 and -1 is
/// index 1 for both parties.
Behavior born_behavior(const TwoQubitState& state, const BlochVector& a_hat,
                       const BlochVector& b_hat);

struct CorrelationStats {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double correlator = 0.0;

  /// P(A,B) = (1 + A<A> + B<B> + AB E) / 4 with A, B = +-1.
  double probability(int a_sign, int b_sign) const {
    return 0.25 * (1.0 + a_sign * mean_a + b_sign * mean_b +
                   a_sign * b_sign * correlator);
  }
};

/// Closed-form <A>, <B>, <AB> for |psi(theta)>.
CorrelationStats closed_form_stats(const TwoQubitState& state,
                                   const BlochVector& a_hat,
                                   const BlochVector& b_hat);

/// Orthonormal basis of C^d stored as the columns of a d x d matrix.
class QuditBasis {
 public:
  static constexpr double kOrthonormalityTolerance = 1e-10;

  explicit QuditBasis(Eigen::MatrixXcd vectors);

  static QuditBasis computational(int d);

  int dimension() const { return static_cast<int>(vectors_.cols()); }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }
  Eigen::VectorXcd vector(int i) const { return vectors_.col(i); }

  /// max |<v_i|v_j> - delta_ij|
  double orthonormality_residual() const;

  /// {"dimension": d, "vectors": [[re, im, re, im, ...], ...]}
  nlohmann::json to_json() const;
  static QuditBasis from_json(const nlohmann::json& j);

 private:
  Eigen::MatrixXcd vectors_;
};

/// Columns of a Haar-distributed unitary: QR of a complex Ginibre matrix with
/// the phases fixed so that the triangular factor has a positive diagonal.
QuditBasis haar_random_basis(int d, CounterRng& rng);

/// Whether Bob's basis vectors enter the overlap with |Phi_d> as given or
/// complex conjugated.
enum class BobConvention { kUnconjugated, kConjugated };

const char* to_string(BobConvention c);

/// P(a, b | x, y) = |(<a_x| (x) <b_y|) |Phi_d>|^2 with
/// |Phi_d> = sum_i |ii> / sqrt(d). Scenario is (|alice|, |bob|, d, d).
Behavior max_entangled_qudit_behavior(
    int d, const std::vector<QuditBasis>& alice_bases,
    const std::vector<QuditBasis>& bob_bases,
    BobConvention convention = BobConvention::kUnconjugated);

}  // namespace onebit
