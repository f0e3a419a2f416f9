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

// Reference computations used to cross-check the recursive algorithms.
// None of them share the recursive propagation of coriolis_algo1 or
// christoffel_algo2; they are slower (O(N^3) or worse) by construction.

#ifndef DYNKIT_ORACLES_HPP_
#define DYNKIT_ORACLES_HPP_

#include <Eigen/Core>

#include "dynkit/dynamics.hpp"
#include "dynkit/model.hpp"

namespace dynkit {

inline constexpr double kDefaultFdStep = 1e-6;

struct GlobalDynamics {
  Eigen::MatrixXd mass;      // sum_k J_k^T I_k J_k
  Eigen::MatrixXd coriolis;  // sum_k J_k^T [B(v_k, I_k) J_k + I_k dJ_k/dt]
};

/// Ground-frame body Jacobians summed over all bodies.
GlobalDynamics global_dynamics(const KinematicTree& tree,
                               const GeneralizedState& state,
                               FactorizationKind kind);
Eigen::MatrixXd coriolis_global(const KinematicTree& tree,
                                const GeneralizedState& state,
                                FactorizationKind kind);

/// Gamma_ijk = phi_i^T B(phi_b, I^C_c) phi_a per triple, where c is the
/// deepest of i, j, k and (a, b) orders (j, k) root-to-leaf. Ground frame.
ChristoffelTensor christoffel_closed_form(const KinematicTree& tree,
                                          const Eigen::VectorXd& q);

/// Central differences of mass_matrix_crba.
ChristoffelTensor fd_christoffel(const KinematicTree& tree,
                                 const Eigen::VectorXd& q,
                                 double h = kDefaultFdStep);
Eigen::MatrixXd fd_mdot(const KinematicTree& tree,
                        const GeneralizedState& state,
                        double h = kDefaultFdStep);

/// d tau / d qd at qdd = 0 without gravity, by central differences of rnea.
Eigen::MatrixXd fd_dtau_dqd(const KinematicTree& tree,
                            const GeneralizedState& state,
                            double h = kDefaultFdStep);

/// max |1/2 d(C qd)/d qd - C^Gamma| with C^Gamma from coriolis_algo1.
double dcoriolis_dqd_identity_check(const KinematicTree& tree,
                                    const GeneralizedState& state,
                                    double h = kDefaultFdStep);

}  // namespace dynkit

#endif  // DYNKIT_ORACLES_HPP_
