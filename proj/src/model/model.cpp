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

#include "dynkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace dynkit {

std::string_view to_string(JointKind kind) {
  switch (kind) {
    case JointKind::kRevolute:
      return "revolute";
    case JointKind::kPrismatic:
      return "prismatic";
  }
  return "unknown";
}

std::optional<JointKind> parse_joint_kind(std::string_view name) {
  if (name == "revolute") return JointKind::kRevolute;
  if (name == "prismatic") return JointKind::kPrismatic;
  return std::nullopt;
}

std::optional<std::string> validate_body(const Body& body, int index) {
  if (body.parent >= index) {
    return "parent index must be less than body index";
  }
  if (body.parent < kBase) return "parent index must be non-negative";
  const Joint& joint = body.joint;
  if (!joint.axis.allFinite() ||
      std::abs(joint.axis.norm() - 1.0) > kDefaultTolerance) {
    return "joint axis must be a unit vector";
  }
  if (!joint.tree_transform.is_valid()) {
    return "rotation must be orthonormal with determinant +1";
  }
  const RigidBodyParams& p = body.inertial;
  if (!std::isfinite(p.mass) || p.mass < 0.0) {
    return "mass must be finite and non-negative";
  }
  if (!p.com.allFinite() || !p.inertia_about_com.allFinite()) {
    return "inertial parameters must be finite";
  }
  const double asym = (p.inertia_about_com - p.inertia_about_com.transpose())
                          .cwiseAbs()
                          .maxCoeff();
  if (asym > kDefaultTolerance) return "inertia must be symmetric";
  return std::nullopt;
}

KinematicTree::KinematicTree(std::vector<Body> bodies, const Vec3& gravity,
                             std::string name)
    : name_(std::move(name)), gravity_(gravity), bodies_(std::move(bodies)) {
  if (!gravity_.allFinite()) {
    throw std::invalid_argument("gravity must be finite");
  }
  const int n = size();
  parent_.resize(n);
  level_.resize(n);
  inertia_.resize(n);
  phi_.resize(n);
  for (int i = 0; i < n; ++i) {
    const Body& b = bodies_[i];
    if (auto err = validate_body(b, i)) {
      throw std::invalid_argument("body " + std::to_string(i + 1) + ": " +
                                  *err);
    }
    parent_[i] = b.parent;
    level_[i] = b.parent == kBase ? 1 : level_[b.parent] + 1;
    depth_ = std::max(depth_, level_[i]);
    inertia_[i] = SpatialInertia::FromCom(b.inertial.mass, b.inertial.com,
                                          b.inertial.inertia_about_com);
    phi_[i] = joint_subspace(b.joint);
  }
}

bool KinematicTree::is_ancestor(int j, int i) const {
  // Ancestors always carry smaller indices.
  while (i > j) i = parent_[i];
  return i == j;
}

int KinematicTree::ceil_pair(int i, int j) const {
  if (is_ancestor(i, j)) return j;
  if (is_ancestor(j, i)) return i;
  throw std::invalid_argument("unrelated bodies");
}

void check_state(const KinematicTree& tree, const GeneralizedState& state) {
  const auto n = static_cast<Eigen::Index>(tree.size());
  if (state.q.size() != n || state.qd.size() != n ||
      (state.qdd && state.qdd->size() != n)) {
    throw std::invalid_argument("state dimension does not match tree (" +
                                std::to_string(n) + " coordinates)");
  }
}

MotionVector joint_subspace(const Joint& joint) {
  return joint.kind == JointKind::kRevolute
             ? MotionVector(joint.axis, Vec3::Zero())
             : MotionVector(Vec3::Zero(), joint.axis);
}

PluckerTransform joint_transform(const Joint& joint, double q) {
  const Vec3& a = joint.axis;
  const PluckerTransform& xt = joint.tree_transform;
  if (joint.kind == JointKind::kPrismatic) {
    // Translation by q along the axis; no rotation.
    return PluckerTransform(xt.rot(),
                            xt.trans() + q * (xt.rot().transpose() * a));
  }
  // Coordinate rotation for a frame turned by +q about a, applied after the
  // tree rotation T: (c 1 + (1 - c) a a^T - s S(a)) T.
  const double c = std::cos(q);
  const double s = std::sin(q);
  const Mat3& t = xt.rot();
  Mat3 e;
  int k = -1;
  for (int d = 0; d < 3; ++d) {
    if (a[d] == 1.0 && a[(d + 1) % 3] == 0.0 && a[(d + 2) % 3] == 0.0) k = d;
  }
  if (k >= 0) {
    const int k1 = (k + 1) % 3;
    const int k2 = (k + 2) % 3;
    e.row(k) = t.row(k);
    e.row(k1) = c * t.row(k1) + s * t.row(k2);
    e.row(k2) = c * t.row(k2) - s * t.row(k1);
  } else {
    e = c * t + ((1.0 - c) * a) * (t.transpose() * a).transpose();
    for (int col = 0; col < 3; ++col) e.col(col) -= s * a.cross(t.col(col));
  }
  return PluckerTransform(e, xt.trans());
}

JointTransform joint_calc(const Joint& joint, double q) {
  return {joint_transform(joint, q), joint_subspace(joint)};
}

}  // namespace dynkit
