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

// Kinematic trees of single-DoF joints.
//
// Bodies are indexed 0..N-1 in code with parent(i) < i and kBase (-1)
// standing for the fixed base. Model files and CLI output use the
// conventional 1-based numbering with 0 for the base.

#ifndef DYNKIT_MODEL_HPP_
#define DYNKIT_MODEL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dynkit/spatial.hpp"

namespace dynkit {

inline constexpr int kBase = -1;

enum class JointKind { kRevolute, kPrismatic };

std::string_view to_string(JointKind kind);
std::optional<JointKind> parse_joint_kind(std::string_view name);

struct Joint {
  JointKind kind = JointKind::kRevolute;
  /// Unit axis in the child (joint) frame. Fixed in local coordinates.
  Vec3 axis = Vec3::UnitZ();
  /// Parent frame to joint frame at q = 0.
  PluckerTransform tree_transform;
};

/// Inertial parameters as written in a model file.
struct RigidBodyParams {
  double mass = 1.0;
  Vec3 com = Vec3::Zero();
  /// Rotational inertia about the centre of mass, body-frame axes.
  Mat3 inertia_about_com = Mat3::Identity();
};

struct Body {
  std::string name;
  int parent = kBase;
  Joint joint;
  RigidBodyParams inertial;
};

/// Returns a description of the first invariant `body` (at 0-based `index`)
/// violates, or nullopt when it is well formed.
std::optional<std::string> validate_body(const Body& body, int index);

/// Immutable tree of bodies. Construction validates every body and
/// precomputes depths, spatial inertias and joint motion subspaces.
class KinematicTree {
 public:
  /// Throws std::invalid_argument when a body is malformed.
  explicit KinematicTree(std::vector<Body> bodies,
                         const Vec3& gravity = Vec3(0.0, 0.0, -9.81),
                         std::string name = {});

  int size() const { return static_cast<int>(bodies_.size()); }
  const std::string& name() const { return name_; }
  const Vec3& gravity() const { return gravity_; }

  const Body& body(int i) const { return bodies_[i]; }
  const std::vector<Body>& bodies() const { return bodies_; }
  int parent(int i) const { return parent_[i]; }
  const std::vector<int>& parents() const { return parent_; }
  const Joint& joint(int i) const { return bodies_[i].joint; }
  const SpatialInertia& inertia(int i) const { return inertia_[i]; }
  /// Joint motion subspace of body i in frame i.
  const MotionVector& phi(int i) const { return phi_[i]; }

  /// Number of bodies on the path from the base to i, inclusive.
  int level(int i) const { return level_[i]; }
  /// Longest root-to-leaf path.
  int depth() const { return depth_; }

  /// j is on the path from i to the root (j precedes-or-equals i).
  bool is_ancestor(int j, int i) const;
  bool related(int i, int j) const {
    return is_ancestor(i, j) || is_ancestor(j, i);
  }
  /// The one of two related bodies closest to the leaves. Throws
  /// std::invalid_argument("unrelated bodies") otherwise.
  int ceil_pair(int i, int j) const;

 private:
  std::string name_;
  Vec3 gravity_;
  std::vector<Body> bodies_;
  std::vector<int> parent_;
  std::vector<int> level_;
  std::vector<SpatialInertia> inertia_;
  std::vector<MotionVector> phi_;
  int depth_ = 0;
};

/// Joint-space state. Lengths must equal the number of bodies.
struct GeneralizedState {
  Eigen::VectorXd q;
  Eigen::VectorXd qd;
  std::optional<Eigen::VectorXd> qdd;
};

/// Throws std::invalid_argument if the state does not fit `tree`.
void check_state(const KinematicTree& tree, const GeneralizedState& state);

struct JointTransform {
  /// iX_p(i) at the given joint position.
  PluckerTransform x;
  /// Motion subspace in frame i.
  MotionVector phi;
};

MotionVector joint_subspace(const Joint& joint);
/// iX_p(i) alone.
PluckerTransform joint_transform(const Joint& joint, double q);
JointTransform joint_calc(const Joint& joint, double q);

}  // namespace dynkit

#endif  // DYNKIT_MODEL_HPP_
