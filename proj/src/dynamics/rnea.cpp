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

Eigen::VectorXd rnea(const KinematicTree& tree, const GeneralizedState& state,
                     bool include_gravity) {
  check_state(tree, state);
  if (!state.qdd) throw std::invalid_argument("rnea requires qdd");
  return rnea(tree, state.q, state.qd, *state.qdd, include_gravity);
}

RneaWorkspace::RneaWorkspace(const KinematicTree& tree)
    : tau_(Eigen::VectorXd::Zero(tree.size())),
      x_up_(tree.size()),
      v_(tree.size()),
      a_(tree.size()),
      f_(tree.size()) {}

void rnea(const KinematicTree& tree, const Eigen::VectorXd& q,
          const Eigen::VectorXd& qd, const Eigen::VectorXd& qdd,
          bool include_gravity, RneaWorkspace& work) {
  const int n = tree.size();
  if (q.size() != n || qd.size() != n || qdd.size() != n) {
    throw std::invalid_argument("state dimension does not match tree");
  }
  if (work.tau_.size() != n) {
    throw std::invalid_argument("workspace was sized for a different tree");
  }
  // The base accelerates upward at -g instead of applying gravity per body.
  const MotionVector a_base =
      include_gravity ? MotionVector(Vec3::Zero(), -tree.gravity())
                      : MotionVector::Zero();
  auto& x_up = work.x_up_;
  auto& v = work.v_;
  auto& a = work.a_;
  auto& f = work.f_;
  for (int i = 0; i < n; ++i) {
    x_up[i] = joint_transform(tree.joint(i), q[i]);
    const MotionVector& phi = tree.phi(i);
    const int p = tree.parent(i);
    const MotionVector vp = p == kBase ? MotionVector::Zero() : v[p];
    const MotionVector ap = p == kBase ? a_base : a[p];
    v[i] = x_up[i].apply(vp) + phi * qd[i];
    a[i] = x_up[i].apply(ap) + phi * qdd[i] + cross_motion(v[i], phi) * qd[i];
    const SpatialInertia& inertia = tree.inertia(i);
    f[i] = inertia * a[i] + cross_force(v[i], inertia * v[i]);
  }
  for (int i = n - 1; i >= 0; --i) {
    work.tau_[i] = dot(tree.phi(i), f[i]);
    const int p = tree.parent(i);
    if (p != kBase) f[p] += x_up[i].apply_transpose(f[i]);
  }
}

Eigen::VectorXd rnea(const KinematicTree& tree, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& qd, const Eigen::VectorXd& qdd,
                     bool include_gravity) {
  RneaWorkspace work(tree);
  rnea(tree, q, qd, qdd, include_gravity, work);
  return work.tau();
}

}  // namespace dynkit
