// Copyright 2026 The dynkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-link fixture helpers shared by the coordinate tests and the
// acceptance binary: hatted-coordinate maps and a finite-difference
// Christoffel contraction of the hatted mass matrix.

#ifndef DYNKIT_TESTS_TWOLINK_SUPPORT_HPP_
#define DYNKIT_TESTS_TWOLINK_SUPPORT_HPP_

#include <functional>
#include <string>

#include "dynkit/coordinates.hpp"
#include "dynkit/dynamics.hpp"
#include "dynkit/model_io.hpp"

namespace dynkit::testing {

inline KinematicTree twolink() {
  return load_model_file(std::string(DYNKIT_FIXTURE_DIR) + "/twolink.model");
}

/// q(qhat) together with A(qhat) = dq/dqhat.
struct CoordinateMap {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> q_of;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> a_of;
};

/// qhat = (q1, q1 + q2): constant A.
inline CoordinateMap absolute_angles() {
  return {[](const Eigen::VectorXd& h) {
            Eigen::VectorXd q(2);
            q << h[0], h[1] - h[0];
            return q;
          },
          [](const Eigen::VectorXd&) {
            Eigen::MatrixXd a(2, 2);
            a << 1, 0, -1, 1;
            return a;
          }};
}

/// qhat = (q1, q2 + q1^2 / 2): A = [[1, 0], [-qhat1, 1]].
inline CoordinateMap quadratic_shift() {
  return {[](const Eigen::VectorXd& h) {
            Eigen::VectorXd q(2);
            q << h[0], h[1] - 0.5 * h[0] * h[0];
            return q;
          },
          [](const Eigen::VectorXd& h) {
            Eigen::MatrixXd a(2, 2);
            a << 1, 0, -h[0], 1;
            return a;
          }};
}

/// Mhat(qhat) = A^T M(q(qhat)) A.
inline Eigen::MatrixXd hat_mass(const KinematicTree& tree,
                                const CoordinateMap& map,
                                const Eigen::VectorXd& qhat) {
  const Eigen::MatrixXd a = map.a_of(qhat);
  return a.transpose() * mass_matrix_crba(tree, map.q_of(qhat)) * a;
}

/// sum_k Gammahat_ijk qhatdot_k with Gammahat from central differences of
/// Mhat.
inline Eigen::MatrixXd fd_hat_coriolis(const KinematicTree& tree,
                                       const CoordinateMap& map,
                                       const Eigen::VectorXd& qhat,
                                       const Eigen::VectorXd& qhat_dot,
                                       double h = 1e-6) {
  const int n = static_cast<int>(qhat.size());
  std::vector<Eigen::MatrixXd> dm(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd p = qhat;
    Eigen::VectorXd m = qhat;
    p[k] += h;
    m[k] -= h;
    dm[k] = (hat_mass(tree, map, p) - hat_mass(tree, map, m)) / (2 * h);
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        c(i, j) += 0.5 * (dm[k](i, j) + dm[j](i, k) - dm[i](j, k)) *
                   qhat_dot[k];
      }
    }
  }
  return c;
}

/// Transformed Christoffel-consistent C at (qhat, qhat_dot); adot is the
/// time derivative of A along the motion.
inline TransformedDynamics transformed(const KinematicTree& tree,
                                       const CoordinateMap& map,
                                       const Eigen::VectorXd& qhat,
                                       const Eigen::VectorXd& qhat_dot,
                                       const Eigen::MatrixXd& adot) {
  const Eigen::MatrixXd a = map.a_of(qhat);
  GeneralizedState st{map.q_of(qhat), a * qhat_dot, std::nullopt};
  const DynamicsOutput d = coriolis_algo1(tree, st);
  return transform_coordinates(d.mass_matrix(), d.coriolis(), {a, adot});
}

}  // namespace dynkit::testing

#endif  // DYNKIT_TESTS_TWOLINK_SUPPORT_HPP_
