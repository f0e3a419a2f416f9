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

DynamicsOutput::DynamicsOutput(const KinematicTree& tree)
    : mass_(Eigen::MatrixXd::Zero(tree.size(), tree.size())),
      mass_dot_(Eigen::MatrixXd::Zero(tree.size(), tree.size())),
      coriolis_(Eigen::MatrixXd::Zero(tree.size(), tree.size())),
      bodies_(tree.size()) {}

namespace {

void factorize(FactorizationKind kind, DynamicsOutput::BodyState& b,
               RateMatrix DynamicsOutput::BodyState::*) {
  body_factorization(kind, b.v, b.ic, b.bc);
}
void factorize(FactorizationKind, DynamicsOutput::BodyState& b,
               CompactRateMatrix DynamicsOutput::BodyState::*) {
  body_factorization_ns(b.v, b.ic, b.bc_ns);
}

// `bc` selects the composite factorization storage: dense for kSimple,
// compact for kNiemeyerSlotine.
template <class Rate>
void sweep(const KinematicTree& tree, const Eigen::VectorXd& q,
           const Eigen::VectorXd& qd, FactorizationKind kind,
           std::vector<DynamicsOutput::BodyState>& body,
           Rate DynamicsOutput::BodyState::*bc, Eigen::MatrixXd& mass,
           Eigen::MatrixXd& mass_dot, Eigen::MatrixXd& cor) {
  const int n = tree.size();
  // Forward sweep: velocities, axis rates, initial composites.
  for (int i = 0; i < n; ++i) {
    auto& b = body[i];
    b.x_up = joint_transform(tree.joint(i), q[i]);
    b.phi = tree.phi(i);
    const int p = tree.parent(i);
    b.v = b.phi * qd[i];
    if (p != kBase) b.v += b.x_up.apply(body[p].v);
    b.phi_dot = cross_motion(b.v, b.phi);
    b.ic = tree.inertia(i);
    factorize(kind, b, bc);
  }

  // Backward sweep: entries for body j and each of its ancestors i.
  for (int j = n - 1; j >= 0; --j) {
    const auto& bj = body[j];
    const Rate& bcj = bj.*bc;
    ForceVector f1 = bj.ic * bj.phi_dot + bcj * bj.phi;
    ForceVector f2 = bj.ic * bj.phi;
    ForceVector f3 = bcj.transpose_apply(bj.phi);
    cor(j, j) = dot(bj.phi, f1);
    mass(j, j) = dot(bj.phi, f2);
    mass_dot(j, j) = dot(bj.phi_dot, f2) + dot(bj.phi, f1 + f3);

    for (int i = j; tree.parent(i) != kBase;) {
      const PluckerTransform& x = body[i].x_up;
      f1 = x.apply_transpose(f1);
      f2 = x.apply_transpose(f2);
      f3 = x.apply_transpose(f3);
      i = tree.parent(i);
      const auto& bi = body[i];
      cor(i, j) = dot(bi.phi, f1);
      cor(j, i) = dot(bi.phi_dot, f2) + dot(bi.phi, f3);
      mass(i, j) = mass(j, i) = dot(bi.phi, f2);
      mass_dot(i, j) = mass_dot(j, i) =
          dot(bi.phi_dot, f2) + dot(bi.phi, f1 + f3);
    }

    const int p = tree.parent(j);
    if (p != kBase) {
      body[p].ic.add_congruence(bj.x_up, bj.ic);
      add_congruence(bj.x_up, bcj, body[p].*bc);
    }
  }
}

}  // namespace

void coriolis_algo1(const KinematicTree& tree, const Eigen::VectorXd& q,
                    const Eigen::VectorXd& qd, FactorizationKind kind,
                    DynamicsOutput& out) {
  const int n = tree.size();
  if (q.size() != n || qd.size() != n) {
    throw std::invalid_argument("state dimension does not match tree");
  }
  if (out.size() != n) {
    throw std::invalid_argument("workspace was sized for a different tree");
  }
  if (kind == FactorizationKind::kSimple) {
    sweep(tree, q, qd, kind, out.bodies_, &DynamicsOutput::BodyState::bc,
          out.mass_, out.mass_dot_, out.coriolis_);
  } else {
    sweep(tree, q, qd, kind, out.bodies_, &DynamicsOutput::BodyState::bc_ns,
          out.mass_, out.mass_dot_, out.coriolis_);
  }
}

DynamicsOutput coriolis_algo1(const KinematicTree& tree,
                              const GeneralizedState& state,
                              FactorizationKind kind) {
  check_state(tree, state);
  DynamicsOutput out(tree);
  coriolis_algo1(tree, state.q, state.qd, kind, out);
  return out;
}

}  // namespace dynkit
