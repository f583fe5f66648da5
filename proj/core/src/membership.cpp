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
#include <sstream>

#include <Eigen/Dense>

#include "onebit/error.hpp"
#include "onebit/lp.hpp"
#include "onebit/polytope.hpp"

namespace onebit {

namespace {

Eigen::VectorXd dense(const Behavior& p) {
  const auto t = p.table();
  return Eigen::Map<const Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size()));
}

Eigen::VectorXd vertex_vector(const CommStrategy& st, const Scenario& s) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.size()));
  for (int x = 0; x < s.nx; ++x) {
    for (int y = 0; y < s.ny; ++y) {
      v(static_cast<Eigen::Index>(s.index(x, y, st.alice_out[x], st.bob(st.msg[x], y, s.ny)))) = 1.0;
    }
  }
  return v;
}

Functional as_functional(const Scenario& s, const Eigen::VectorXd& v) {
  return Functional(s, std::vector<double>(v.data(), v.data() + v.size()));
}

// Coordinates with the last (a, b) entry of each block dropped; behaviors
// are determined by these together with block normalization.
Eigen::Index reduced_size(const Scenario& s) {
  return static_cast<Eigen::Index>(s.nx) * s.ny * (s.block_size() - 1);
}

Eigen::VectorXd reduce(const Eigen::VectorXd& full, const Scenario& s) {
  Eigen::VectorXd r(reduced_size(s));
  const Eigen::Index keep = static_cast<Eigen::Index>(s.block_size()) - 1;
  for (Eigen::Index blk = 0; blk < static_cast<Eigen::Index>(s.nx) * s.ny; ++blk) {
    r.segment(blk * keep, keep) = full.segment(blk * (keep + 1), keep);
  }
  return r;
}

// Lifts reduced-coordinate duals to a functional, zero on dropped entries.
Functional lift(const Eigen::VectorXd& reduced, const Scenario& s) {
  Functional f = Functional::zeros(s);
  const std::size_t keep = s.block_size() - 1;
  for (std::size_t blk = 0; blk < static_cast<std::size_t>(s.nx) * s.ny; ++blk) {
    for (std::size_t k = 0; k < keep; ++k) {
      f.table[blk * (keep + 1) + k] = reduced(static_cast<Eigen::Index>(blk * keep + k));
    }
  }
  return f;
}

// Convex weights over `support` reproducing `target` exactly, from a phase-one
// simplex solve. Empty if the solve reports infeasibility.
std::optional<std::vector<double>> exact_weights(const std::vector<CommStrategy>& support,
                                                 const Eigen::VectorXd& target,
                                                 const Scenario& s) {
  const Eigen::Index rows = reduced_size(s) + 1;
  Eigen::VectorXd rhs(rows);
  rhs << reduce(target, s), 1.0;
  lp::ColumnGenerationLp problem(rhs);
  for (const auto& st : support) {
    Eigen::VectorXd col(rows);
    col << reduce(vertex_vector(st, s), s), 1.0;
    problem.add_column(std::move(col), 0.0);
  }
  lp::Options opt;
  opt.feasibility_tolerance = 1e-10;
  const lp::Result res = problem.solve({}, opt);
  if (res.status != lp::Status::kOptimal) return std::nullopt;
  std::vector<double> w(res.x.data(), res.x.data() + res.x.size());
  return w;
}

double reconstruction_error(const std::vector<CommStrategy>& support,
                            const std::vector<double>& weights,
                            const Eigen::VectorXd& target, const Scenario& s) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(target.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    sum += weights[i] * vertex_vector(support[i], s);
  }
  return (sum - target).norm();
}

// Minimum-norm point of conv{V_i - P} (Wolfe). The corral holds affinely
// independent shifted vertices with positive convex weights.
class MinNormPoint {
 public:
  MinNormPoint(const Behavior& p, SetTag tag, const MembershipOptions& opt)
      : s_(p.scenario()), tag_(tag), opt_(opt), target_(dense(p)) {}

  MembershipResult run() {
    MembershipResult out;
    // Start from the vertex most aligned with the point.
    add(vertex_oracle(as_functional(s_, target_), tag_).strategy);
    weights_ = {1.0};
    x_ = shifted_[0];

    for (int major = 0;; ++major) {
      out.iterations = major;
      if (major >= opt_.max_iterations) {
        std::ostringstream os;
        os << "membership did not converge in " << opt_.max_iterations
           << " iterations (distance " << x_.norm() << ")";
        throw NonConvergence(os.str());
      }
      const double norm2 = x_.squaredNorm();
      if (std::sqrt(norm2) <= opt_.tolerance) return finish_inside(out);

      const OracleResult best = vertex_oracle(as_functional(s_, -x_), tag_);
      const Eigen::VectorXd q = vertex_vector(best.strategy, s_) - target_;
      // <x, q> is the smallest <x, V - P> over the polytope; the separation
      // margin of the functional -x.
      const double margin = x_.dot(q);
      const double gap = norm2 - margin;
      if (margin > 0.0 && gap <= opt_.relative_gap * norm2) {
        return finish_outside(out, margin);
      }
      const bool known = std::find(corral_.begin(), corral_.end(), best.strategy) != corral_.end();
      if (known || gap <= 1e-15 * std::max(1.0, q.squaredNorm())) {
        // No further progress is possible in floating point.
        if (margin > 0.0) return finish_outside(out, margin);
        std::ostringstream os;
        os << "membership stalled at distance " << std::sqrt(norm2)
           << " without a separating margin";
        throw NonConvergence(os.str());
      }
      add(best.strategy);
      weights_.push_back(0.0);
      minor_cycle();
    }
  }

 private:
  void add(const CommStrategy& st) {
    corral_.push_back(st);
    shifted_.push_back(vertex_vector(st, s_) - target_);
  }

  void remove(std::size_t i) {
    corral_.erase(corral_.begin() + static_cast<std::ptrdiff_t>(i));
    shifted_.erase(shifted_.begin() + static_cast<std::ptrdiff_t>(i));
    weights_.erase(weights_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  // Affine minimizer of the corral: alpha with sum 1 minimizing |Q alpha|.
  // Solves (G + 1 1^T) z = 1, alpha = z / sum(z), which is positive definite
  // for an affinely independent corral.
  Eigen::VectorXd affine_minimizer() const {
    const Eigen::Index k = static_cast<Eigen::Index>(shifted_.size());
    Eigen::MatrixXd g(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        g(i, j) = g(j, i) = shifted_[i].dot(shifted_[j]) + 1.0;
      }
    }
    const Eigen::VectorXd z = g.ldlt().solve(Eigen::VectorXd::Ones(k));
    return z / z.sum();
  }

  void minor_cycle() {
    for (;;) {
      const Eigen::VectorXd alpha = affine_minimizer();
      if (!alpha.allFinite()) {
        throw NonConvergence("membership corral became affinely dependent");
      }
      if (alpha.minCoeff() > 0.0) {
        weights_.assign(alpha.data(), alpha.data() + alpha.size());
        break;
      }
      // Step from the current weights towards alpha until one hits zero.
      double theta = 1.0;
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double a = alpha(static_cast<Eigen::Index>(i));
        if (a <= 0.0 && weights_[i] - a > 0.0) {
          theta = std::min(theta, weights_[i] / (weights_[i] - a));
        }
      }
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        weights_[i] = theta * alpha(static_cast<Eigen::Index>(i)) + (1.0 - theta) * weights_[i];
      }
      std::size_t drop = 0;
      for (std::size_t i = 1; i < weights_.size(); ++i) {
        if (weights_[i] < weights_[drop]) drop = i;
      }
      remove(drop);
      for (std::size_t i = weights_.size(); i-- > 0;) {
        if (weights_[i] <= 1e-15) remove(i);
      }
      if (corral_.size() == 1) {
        weights_ = {1.0};
        break;
      }
      double sum = 0.0;
      for (double w : weights_) sum += w;
      for (double& w : weights_) w /= sum;
    }
    x_ = Eigen::VectorXd::Zero(target_.size());
    for (std::size_t i = 0; i < shifted_.size(); ++i) x_ += weights_[i] * shifted_[i];
  }

  MembershipResult& finish_inside(MembershipResult& out) {
    out.inside = true;
    out.distance = x_.norm();
    out.support = corral_;
    out.weights = weights_;
    out.reconstruction_error = reconstruction_error(corral_, weights_, target_, s_);
    if (auto exact = exact_weights(corral_, target_, s_)) {
      const double err = reconstruction_error(corral_, *exact, target_, s_);
      if (err <= out.reconstruction_error) {
        out.weights = std::move(*exact);
        out.reconstruction_error = err;
      }
    }
    // Drop zero-weight vertices left by the basic solution.
    std::vector<CommStrategy> support;
    std::vector<double> weights;
    for (std::size_t i = 0; i < out.support.size(); ++i) {
      if (out.weights[i] > 0.0) {
        support.push_back(out.support[i]);
        weights.push_back(out.weights[i]);
      }
    }
    out.support = std::move(support);
    out.weights = std::move(weights);
    return out;
  }

  MembershipResult& finish_outside(MembershipResult& out, double margin) {
    out.inside = false;
    out.distance = x_.norm();
    out.functional = as_functional(s_, -x_);
    out.margin = margin;
    return out;
  }

  Scenario s_;
  SetTag tag_;
  MembershipOptions opt_;
  Eigen::VectorXd target_;
  std::vector<CommStrategy> corral_;
  std::vector<Eigen::VectorXd> shifted_;
  std::vector<double> weights_;
  Eigen::VectorXd x_;
};

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json MembershipResult::to_json(const Scenario& s) const {
  nlohmann::json j = {{"inside", inside},
                      {"distance", distance},
                      {"iterations", iterations}};
  if (inside) {
    nlohmann::json sup = nlohmann::json::array();
    for (std::size_t i = 0; i < support.size(); ++i) {
      sup.push_back({{"weight", weights[i]}, {"strategy", support[i].to_json(s)}});
    }
    j["certificate"] = {{"kind", "convex_combination"},
                        {"reconstruction_error", reconstruction_error},
                        {"support", std::move(sup)}};
  } else if (functional) {
    j["certificate"] = {{"kind", "separating_functional"},
                        {"margin", margin},
                        {"functional", functional_to_json(*functional)}};
  }
  return j;
}

MembershipResult membership(const Behavior& p, SetTag tag,
                            const MembershipOptions& options) {
  check_oracle_guard(p.scenario());
  return MinNormPoint(p, tag, options).run();
}

VisibilityMethod parse_visibility_method(std::string_view text) {
  if (text == "bisection") return VisibilityMethod::kBisection;
  if (text == "direct" || text == "lp") return VisibilityMethod::kDirect;
  if (text == "both") return VisibilityMethod::kBoth;
  throw InvalidArgument("unknown visibility method '" + std::string(text) +
                        "' (expected bisection, direct or both)");
}

double visibility_direct(const Behavior& p, const Behavior& noise, SetTag tag) {
  const Scenario& s = p.scenario();
  if (noise.scenario() != s) throw InvalidArgument("point and noise scenarios differ");
  check_oracle_guard(s);
  // Rows: reduced coordinates, sum of vertex weights, w + slack = 1.
  // Columns: w (cost -1), slack, then generated vertices [V_r; 1; 0].
  const Eigen::Index d = reduced_size(s);
  const Eigen::VectorXd pr = reduce(dense(p), s);
  const Eigen::VectorXd nr = reduce(dense(noise), s);
  Eigen::VectorXd rhs(d + 2);
  rhs << nr, 1.0, 1.0;
  lp::ColumnGenerationLp problem(rhs);

  Eigen::VectorXd wcol = Eigen::VectorXd::Zero(d + 2);
  wcol.head(d) = -(pr - nr);
  wcol(d + 1) = 1.0;
  const std::size_t w_index = problem.add_column(wcol, -1.0);
  problem.add_column(Eigen::VectorXd::Unit(d + 2, d + 1), 0.0);

  auto vertex_column = [&](const CommStrategy& st) {
    Eigen::VectorXd col(d + 2);
    col << reduce(vertex_vector(st, s), s), 1.0, 0.0;
    return col;
  };
  // Seed with the vertex best aligned to the noise.
  problem.add_column(vertex_column(vertex_oracle(as_functional(s, dense(noise)), tag).strategy), 0.0);

  const lp::ColumnGenerationLp::Pricer pricer =
      [&](const Eigen::VectorXd& y) -> std::optional<Eigen::VectorXd> {
    const OracleResult best = vertex_oracle(lift(y.head(d), s), tag);
    if (best.value + y(d) <= 1e-10) return std::nullopt;
    return vertex_column(best.strategy);
  };
  const lp::Result res = problem.solve(pricer);
  if (res.status == lp::Status::kInfeasible) {
    throw InvalidArgument("noise behavior lies outside the " +
                          std::string(to_string(tag)) + " polytope");
  }
  if (res.status != lp::Status::kOptimal) {
    throw NonConvergence(std::string("visibility LP ended ") + lp::to_string(res.status));
  }
  return std::clamp(res.x(static_cast<Eigen::Index>(w_index)), 0.0, 1.0);
}

VisibilityResult visibility(const Behavior& p, const Behavior& noise, SetTag tag,
                            const VisibilityOptions& options) {
  if (noise.scenario() != p.scenario()) {
    throw InvalidArgument("point and noise scenarios differ");
  }
  VisibilityResult out;
  out.set_tag = tag;

  if (options.method != VisibilityMethod::kDirect) {
    MembershipResult at_noise = membership(noise, tag, options.membership);
    if (!at_noise.inside) {
      throw InvalidArgument("noise behavior lies outside the " +
                            std::string(to_string(tag)) + " polytope");
    }
    MembershipResult at_point = membership(p, tag, options.membership);
    if (at_point.inside) {
      out.w_bisection = 1.0;
      out.w_bisection_upper = 1.0;
      out.inside_certificate = std::move(at_point);
    } else {
      double lo = 0.0, hi = 1.0;
      MembershipResult lo_cert = std::move(at_noise);
      MembershipResult hi_cert = std::move(at_point);
      while (hi - lo > options.bisection_tolerance) {
        const double mid = 0.5 * (lo + hi);
        MembershipResult m = membership(Behavior::mix(mid, p, noise), tag, options.membership);
        if (m.inside) {
          lo = mid;
          lo_cert = std::move(m);
        } else {
          hi = mid;
          hi_cert = std::move(m);
        }
      }
      out.w_bisection = lo;
      out.w_bisection_upper = hi;
      out.inside_certificate = std::move(lo_cert);
      out.outside_certificate = std::move(hi_cert);
    }
    out.w_star = *out.w_bisection;
  }

  if (options.method != VisibilityMethod::kBisection) {
    out.w_direct = visibility_direct(p, noise, tag);
    if (!out.w_bisection) out.w_star = *out.w_direct;
  }
  if (out.w_bisection && out.w_direct) {
    out.routes_agree = std::abs(*out.w_bisection - *out.w_direct) <= options.agreement_tolerance;
  }
  return out;
}

nlohmann::json VisibilityResult::to_json(const Scenario& s) const {
  nlohmann::json j = {{"w_star", w_star},
                      {"noise_weight", noise_weight()},
                      {"set", to_string(set_tag)},
                      {"w_bisection", optional_number(w_bisection)},
                      {"w_bisection_upper", optional_number(w_bisection_upper)},
                      {"w_direct", optional_number(w_direct)},
                      {"routes_agree", routes_agree}};
  if (reference_wq) {
    j["external_reference_wq"] = *reference_wq;
    j["gap_wq_minus_wc"] = *reference_wq - noise_weight();
  }
  if (inside_certificate) j["inside_certificate"] = inside_certificate->to_json(s);
  if (outside_certificate) j["outside_certificate"] = outside_certificate->to_json(s);
  return j;
}

}  // namespace onebit
