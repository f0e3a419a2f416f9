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

#include "dynkit/generators.hpp"

#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>

namespace dynkit {
namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  Mat3 rotation() {
    std::normal_distribution<double> normal;
    Eigen::Quaterniond quat(normal(rng_), normal(rng_), normal(rng_),
                            normal(rng_));
    quat.normalize();
    return quat.toRotationMatrix();
  }

  Vec3 direction() { return rotation().col(2); }

 private:
  std::mt19937_64 rng_;
};

void require_positive(int n, const char* what) {
  if (n < 1) {
    throw std::invalid_argument(std::string(what) + " must be at least 1");
  }
}

std::vector<int> legged_parents(int n_act, int legs) {
  require_positive(n_act, "actuated DoF");
  if (n_act % legs != 0) {
    throw std::invalid_argument("actuated DoF must be divisible by " +
                                std::to_string(legs));
  }
  const int per_leg = n_act / legs;
  std::vector<int> parents = {kBase};
  for (int leg = 0; leg < legs; ++leg) {
    for (int k = 0; k < per_leg; ++k) {
      const int self = static_cast<int>(parents.size());
      parents.push_back(k == 0 ? 0 : self - 1);
    }
  }
  return parents;
}

}  // namespace

std::string_view to_string(Topology topology) {
  switch (topology) {
    case Topology::kSerial:
      return "serial";
    case Topology::kBinaryTree:
      return "binary_tree";
    case Topology::kBiped:
      return "biped";
    case Topology::kQuadruped:
      return "quadruped";
  }
  return "unknown";
}

std::optional<Topology> parse_topology(std::string_view name) {
  if (name == "serial") return Topology::kSerial;
  if (name == "binary_tree") return Topology::kBinaryTree;
  if (name == "biped") return Topology::kBiped;
  if (name == "quadruped") return Topology::kQuadruped;
  return std::nullopt;
}

KinematicTree gen_from_parents(const std::vector<int>& parents,
                               const GeneratorOptions& options,
                               std::string name) {
  Sampler sample(options.seed);
  const int n = static_cast<int>(parents.size());
  std::vector<Body> bodies(n);
  std::vector<Vec3> link(n);
  for (int i = 0; i < n; ++i) {
    Body& b = bodies[i];
    b.name = "body" + std::to_string(i + 1);
    b.parent = parents[i];
    if (b.parent < kBase || b.parent >= i) {
      throw std::invalid_argument("parent index must be less than body index");
    }
    b.joint.kind = sample.uniform(0.0, 1.0) < options.prismatic_fraction
                       ? JointKind::kPrismatic
                       : JointKind::kRevolute;
    b.joint.axis = Vec3::UnitZ();
    const Mat3 orientation = sample.rotation();
    const Vec3 offset = b.parent == kBase ? Vec3::Zero() : link[b.parent];
    b.joint.tree_transform = PluckerTransform(orientation.transpose(), offset);

    link[i] = sample.uniform(0.2, 1.0) * sample.direction();
    b.inertial.mass = sample.uniform(0.5, 2.0);
    b.inertial.com = sample.uniform(0.0, 1.0) * link[i];
    const Mat3 q = sample.rotation();
    const Vec3 d(sample.uniform(0.01, 0.2), sample.uniform(0.01, 0.2),
                 sample.uniform(0.01, 0.2));
    Mat3 inertia = q * d.asDiagonal() * q.transpose();
    // Exact symmetry so files written from it validate at any tolerance.
    inertia = 0.5 * (inertia + inertia.transpose()).eval();
    b.inertial.inertia_about_com = inertia;
  }
  return KinematicTree(std::move(bodies), Vec3(0.0, 0.0, -9.81),
                       std::move(name));
}

KinematicTree gen_serial(int n, const GeneratorOptions& options) {
  require_positive(n, "number of bodies");
  std::vector<int> parents(n);
  for (int i = 0; i < n; ++i) parents[i] = i - 1;
  return gen_from_parents(parents, options, "serial-" + std::to_string(n));
}

KinematicTree gen_binary_tree(int n, const GeneratorOptions& options) {
  require_positive(n, "number of bodies");
  std::vector<int> parents(n);
  // 1-based: parent(k) = k / 2.
  for (int i = 0; i < n; ++i) parents[i] = (i + 1) / 2 - 1;
  return gen_from_parents(parents, options,
                          "binary_tree-" + std::to_string(n));
}

KinematicTree gen_biped(int n_act, const GeneratorOptions& options) {
  return gen_from_parents(legged_parents(n_act, 2), options,
                          "biped-" + std::to_string(n_act));
}

KinematicTree gen_quadruped(int n_act, const GeneratorOptions& options) {
  return gen_from_parents(legged_parents(n_act, 4), options,
                          "quadruped-" + std::to_string(n_act));
}

KinematicTree gen_topology(Topology topology, int dof,
                           const GeneratorOptions& options) {
  switch (topology) {
    case Topology::kSerial:
      return gen_serial(dof, options);
    case Topology::kBinaryTree:
      return gen_binary_tree(dof, options);
    case Topology::kBiped:
      return gen_biped(dof, options);
    case Topology::kQuadruped:
      return gen_quadruped(dof, options);
  }
  throw std::invalid_argument("unknown topology");
}

KinematicTree gen_branched_example(const GeneratorOptions& options) {
  const std::vector<int> one_based = {0, 1, 2, 3, 1, 5, 6, 2, 8, 9};
  std::vector<int> parents;
  for (int p : one_based) parents.push_back(p - 1);
  return gen_from_parents(parents, options, "branched-10");
}

GeneralizedState random_state(const KinematicTree& tree, std::uint64_t seed) {
  Sampler sample(seed);
  const int n = tree.size();
  GeneralizedState state{Eigen::VectorXd(n), Eigen::VectorXd(n),
                         Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    const bool revolute = tree.joint(i).kind == JointKind::kRevolute;
    state.q[i] = sample.uniform(0.0, revolute ? 2.0 * std::numbers::pi : 1.0);
    state.qd[i] = sample.uniform(0.0, 10.0);
    (*state.qdd)[i] = sample.uniform(-10.0, 10.0);
  }
  return state;
}

}  // namespace dynkit
