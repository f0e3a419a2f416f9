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

#include "dynkit/oracles.hpp"

#include <stdexcept>
#include <vector>

namespace dynkit {
namespace {

// Ground-frame kinematics: 0X_i, axes and their rates, body inertias.
struct GroundKinematics {
  std::vector<Vec6> phi;
  std::vector<Vec6> phi_dot;
  std::vector<Vec6> v;
  std::vector<Mat6> inertia;
};

GroundKinematics ground_kinematics(const KinematicTree& tree,
                                   const Eigen::VectorXd& q,
                                   const Eigen::VectorXd* qd) {
  const int n = tree.size();
  GroundKinematics g;
  g.phi.resize(n);
  g.phi_dot.resize(n);
  g.v.resize(n);
  g.inertia.resize(n);
  std::vector<Mat6> x_from_ground(n);  // iX_0
  for (int i = 0; i < n; ++i) {
    const JointTransform jt = joint_calc(tree.joint(i), q[i]);
    const int p = tree.parent(i);
    const Mat6 x = jt.x.matrix();
    x_from_ground[i] = p == kBase ? x : Mat6(x * x_from_ground[p]);
    const Mat6 to_ground = x_from_ground[i].inverse();
    g.phi[i] = to_ground * jt.phi.coeffs();
    g.inertia[i] = x_from_ground[i].transpose() * tree.inertia(i).matrix() *
                   x_from_ground[i];
    g.v[i] = (p == kBase ? Vec6::Zero() : g.v[p]);
    if (qd != nullptr) g.v[i] += g.phi[i] * (*qd)[i];
    g.phi_dot[i] = motion_cross_matrix(MotionVector(g.v[i])) * g.phi[i];
  }
  return g;
}

Mat6 niemeyer_slotine_matrix(const Vec6& v, const Mat6& inertia) {
  const MotionVector mv(v);
  const ForceVector iv(Vec6(inertia * v));
  return 0.5 * (force_cross_matrix(mv) * inertia +
                cross_force_swapped(iv).matrix() -
                inertia * motion_cross_matrix(mv));
}

void check_size(const KinematicTree& tree, const Eigen::VectorXd& q) {
  if (q.size() != tree.size()) {
    throw std::invalid_argument("state dimension does not match tree");
  }
}

std::vector<Eigen::MatrixXd> mass_partials(const KinematicTree& tree,
                                           const Eigen::VectorXd& q,
                                           double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  const int n = tree.size();
  std::vector<Eigen::MatrixXd> dm(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd qp = q;
    Eigen::VectorXd qm = q;
    qp[k] += h;
    qm[k] -= h;
    dm[k] = (mass_matrix_crba(tree, qp) - mass_matrix_crba(tree, qm)) /
            (2.0 * h);
  }
  return dm;
}

}  // namespace

GlobalDynamics global_dynamics(const KinematicTree& tree,
                               const GeneralizedState& state,
                               FactorizationKind kind) {
  check_state(tree, state);
  const int n = tree.size();
  const GroundKinematics g = ground_kinematics(tree, state.q, &state.qd);
  GlobalDynamics out{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  Eigen::MatrixXd jac(6, n);
  Eigen::MatrixXd jac_dot(6, n);
  for (int k = 0; k < n; ++k) {
    jac.setZero();
    jac_dot.setZero();
    for (int j = k; j != kBase; j = tree.parent(j)) {
      jac.col(j) = g.phi[j];
      jac_dot.col(j) = g.phi_dot[j];
    }
    Mat6 b;
    if (kind == FactorizationKind::kSimple) {
      b = force_cross_matrix(MotionVector(g.v[k])) * g.inertia[k];
    } else {
      b = niemeyer_slotine_matrix(g.v[k], g.inertia[k]);
    }
    out.mass += jac.transpose() * g.inertia[k] * jac;
    out.coriolis += jac.transpose() * (b * jac + g.inertia[k] * jac_dot);
  }
  return out;
}

Eigen::MatrixXd coriolis_global(const KinematicTree& tree,
                                const GeneralizedState& state,
                                FactorizationKind kind) {
  return global_dynamics(tree, state, kind).coriolis;
}

ChristoffelTensor christoffel_closed_form(const KinematicTree& tree,
                                          const Eigen::VectorXd& q) {
  check_size(tree, q);
  const int n = tree.size();
  const GroundKinematics g = ground_kinematics(tree, q, nullptr);
  // Composite inertias by direct summation over descendants.
  std::vector<Mat6> composite(n, Mat6::Zero());
  for (int c = 0; c < n; ++c) {
    for (int l = c; l < n; ++l) {
      if (tree.is_ancestor(c, l)) composite[c] += g.inertia[l];
    }
  }
  ChristoffelTensor gamma(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!tree.related(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (!tree.related(i, k) || !tree.related(j, k)) continue;
        const int c = tree.ceil_pair(tree.ceil_pair(i, j), k);
        const bool j_first = tree.is_ancestor(j, k);
        const int a = j_first ? j : k;
        const int b = j_first ? k : j;
        gamma(i, j, k) = g.phi[i].dot(
            niemeyer_slotine_matrix(g.phi[b], composite[c]) * g.phi[a]);
      }
    }
  }
  return gamma;
}

ChristoffelTensor fd_christoffel(const KinematicTree& tree,
                                 const Eigen::VectorXd& q, double h) {
  check_size(tree, q);
  const int n = tree.size();
  const auto dm = mass_partials(tree, q, h);
  ChristoffelTensor gamma(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        gamma(i, j, k) = 0.5 * (dm[k](i, j) + dm[j](i, k) - dm[i](j, k));
      }
    }
  }
  return gamma;
}

Eigen::MatrixXd fd_mdot(const KinematicTree& tree,
                        const GeneralizedState& state, double h) {
  check_state(tree, state);
  const int n = tree.size();
  const auto dm = mass_partials(tree, state.q, h);
  Eigen::MatrixXd mdot = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) mdot += dm[k] * state.qd[k];
  return mdot;
}

Eigen::MatrixXd fd_dtau_dqd(const KinematicTree& tree,
                            const GeneralizedState& state, double h) {
  check_state(tree, state);
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  const int n = tree.size();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd jac(n, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd qp = state.qd;
    Eigen::VectorXd qm = state.qd;
    qp[k] += h;
    qm[k] -= h;
    jac.col(k) = (rnea(tree, state.q, qp, zero, false) -
                  rnea(tree, state.q, qm, zero, false)) /
                 (2.0 * h);
  }
  return jac;
}

double dcoriolis_dqd_identity_check(const KinematicTree& tree,
                                    const GeneralizedState& state, double h) {
  const Eigen::MatrixXd jac = fd_dtau_dqd(tree, state, h);
  const DynamicsOutput out =
      coriolis_algo1(tree, state, FactorizationKind::kNiemeyerSlotine);
  return (0.5 * jac - out.coriolis()).cwiseAbs().maxCoeff();
}

}  // namespace dynkit
