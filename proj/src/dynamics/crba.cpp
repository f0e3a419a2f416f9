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

#include <stdexcept>
#include <vector>

#include "dynkit/dynamics.hpp"

namespace dynkit {

CrbaWorkspace::CrbaWorkspace(const KinematicTree& tree)
    : mass_(Eigen::MatrixXd::Zero(tree.size(), tree.size())),
      x_up_(tree.size()),
      ic_(tree.size()),
      phi_(tree.size()) {}

// Works on explicit 6x6 matrices throughout so it shares no arithmetic with
// the 10-parameter composite path of coriolis_algo1.
void mass_matrix_crba(const KinematicTree& tree, const Eigen::VectorXd& q,
                      CrbaWorkspace& work) {
  const int n = tree.size();
  if (q.size() != n) {
    throw std::invalid_argument("state dimension does not match tree");
  }
  if (work.mass_.rows() != n) {
    throw std::invalid_argument("workspace was sized for a different tree");
  }
  auto& x_up = work.x_up_;
  auto& ic = work.ic_;
  auto& phi = work.phi_;
  Eigen::MatrixXd& mass = work.mass_;
  for (int i = 0; i < n; ++i) {
    const JointTransform jt = joint_calc(tree.joint(i), q[i]);
    x_up[i] = jt.x.matrix();
    phi[i] = jt.phi.coeffs();
    ic[i] = tree.inertia(i).matrix();
  }
  for (int j = n - 1; j >= 0; --j) {
    Vec6 f = ic[j] * phi[j];
    mass(j, j) = phi[j].dot(f);
    for (int i = j; tree.parent(i) != kBase;) {
      f = x_up[i].transpose() * f;
      i = tree.parent(i);
      mass(i, j) = mass(j, i) = phi[i].dot(f);
    }
    const int p = tree.parent(j);
    if (p != kBase) ic[p] += x_up[j].transpose() * ic[j] * x_up[j];
  }
}

Eigen::MatrixXd mass_matrix_crba(const KinematicTree& tree,
                                 const Eigen::VectorXd& q) {
  CrbaWorkspace work(tree);
  mass_matrix_crba(tree, q, work);
  return work.mass();
}

}  // namespace dynkit
