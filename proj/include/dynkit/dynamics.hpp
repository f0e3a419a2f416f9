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

// Recursive dynamics on kinematic trees:
//
//   rnea               inverse dynamics (two-pass Newton-Euler)
//   mass_matrix_crba   composite-rigid-body mass matrix
//   coriolis_algo1     M, dM/dt and a Coriolis matrix C in O(N d)
//   christoffel_algo2  all Christoffel symbols of the first kind in O(N d^2)
//
// Per-body quantities live in body-fixed frames and move between frames
// with the joint transforms iX_p(i). Gravity never enters C or Gamma.

#ifndef DYNKIT_DYNAMICS_HPP_
#define DYNKIT_DYNAMICS_HPP_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dynkit/model.hpp"
#include "dynkit/spatial.hpp"

namespace dynkit {

/// Body-level split of v x* I v into B(v, I) v.
enum class FactorizationKind {
  /// B = (v x*) I. Admissible, not Christoffel-consistent in general.
  kSimple,
  /// B = 1/2 ((v x*) I + (I v xbar*) - I (v x)). Yields the
  /// Christoffel-consistent Coriolis matrix.
  kNiemeyerSlotine,
};

std::string_view to_string(FactorizationKind kind);
std::optional<FactorizationKind> parse_factorization(std::string_view name);

RateMatrix body_factorization(FactorizationKind kind, const MotionVector& v,
                              const SpatialInertia& inertia);
/// Writes B(v, I) into `out`.
void body_factorization(FactorizationKind kind, const MotionVector& v,
                        const SpatialInertia& inertia, RateMatrix& out);
/// Niemeyer-Slotine factorization in compact form; equals the dense
/// result of body_factorization.
void body_factorization_ns(const MotionVector& v, const SpatialInertia& inertia,
                           CompactRateMatrix& out);

/// Scratch space of rnea; sized once per tree.
class RneaWorkspace {
 public:
  explicit RneaWorkspace(const KinematicTree& tree);
  const Eigen::VectorXd& tau() const { return tau_; }

 private:
  friend void rnea(const KinematicTree&, const Eigen::VectorXd&,
                   const Eigen::VectorXd&, const Eigen::VectorXd&, bool,
                   RneaWorkspace&);
  Eigen::VectorXd tau_;
  std::vector<PluckerTransform> x_up_;
  std::vector<MotionVector> v_;
  std::vector<MotionVector> a_;
  std::vector<ForceVector> f_;
};

/// Inverse dynamics. Uses q, qd and qdd of `state` (qdd required).
Eigen::VectorXd rnea(const KinematicTree& tree, const GeneralizedState& state,
                     bool include_gravity);
Eigen::VectorXd rnea(const KinematicTree& tree, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& qd, const Eigen::VectorXd& qdd,
                     bool include_gravity);
void rnea(const KinematicTree& tree, const Eigen::VectorXd& q,
          const Eigen::VectorXd& qd, const Eigen::VectorXd& qdd,
          bool include_gravity, RneaWorkspace& work);

/// Scratch space of mass_matrix_crba; same reuse contract as DynamicsOutput.
class CrbaWorkspace {
 public:
  explicit CrbaWorkspace(const KinematicTree& tree);
  const Eigen::MatrixXd& mass() const { return mass_; }

 private:
  friend void mass_matrix_crba(const KinematicTree&, const Eigen::VectorXd&,
                               CrbaWorkspace&);
  Eigen::MatrixXd mass_;
  std::vector<Mat6> x_up_;
  std::vector<Mat6> ic_;
  std::vector<Vec6> phi_;
};

Eigen::MatrixXd mass_matrix_crba(const KinematicTree& tree,
                                 const Eigen::VectorXd& q);
void mass_matrix_crba(const KinematicTree& tree, const Eigen::VectorXd& q,
                      CrbaWorkspace& work);

/// Output and scratch space of coriolis_algo1. Sized once per tree; entries
/// of unrelated body pairs are zeroed on construction and never written, so
/// repeated evaluations neither allocate nor clear.
class DynamicsOutput {
 public:
  struct BodyState {
    PluckerTransform x_up;  // iX_p(i)
    MotionVector v;
    MotionVector phi;
    MotionVector phi_dot;
    SpatialInertia ic;  // composite inertia after the backward sweep
    // Composite factorization after the backward sweep: `bc` for kSimple,
    // `bc_ns` for kNiemeyerSlotine. The other one is left untouched.
    RateMatrix bc;
    CompactRateMatrix bc_ns;
  };

  explicit DynamicsOutput(const KinematicTree& tree);

  int size() const { return static_cast<int>(bodies_.size()); }
  const Eigen::MatrixXd& mass_matrix() const { return mass_; }
  const Eigen::MatrixXd& mass_matrix_dot() const { return mass_dot_; }
  const Eigen::MatrixXd& coriolis() const { return coriolis_; }
  const std::vector<BodyState>& bodies() const { return bodies_; }

 private:
  friend void coriolis_algo1(const KinematicTree&, const Eigen::VectorXd&,
                             const Eigen::VectorXd&, FactorizationKind,
                             DynamicsOutput&);
  Eigen::MatrixXd mass_;
  Eigen::MatrixXd mass_dot_;
  Eigen::MatrixXd coriolis_;
  std::vector<BodyState> bodies_;
};

void coriolis_algo1(const KinematicTree& tree, const Eigen::VectorXd& q,
                    const Eigen::VectorXd& qd, FactorizationKind kind,
                    DynamicsOutput& out);
DynamicsOutput coriolis_algo1(
    const KinematicTree& tree, const GeneralizedState& state,
    FactorizationKind kind = FactorizationKind::kNiemeyerSlotine);

/// Dense n x n x n array Gamma(i, j, k), symmetric in (j, k).
class ChristoffelTensor {
 public:
  ChristoffelTensor() = default;
  explicit ChristoffelTensor(int n)
      : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int size() const { return n_; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const std::vector<double>& data() const { return data_; }

  /// Writes Gamma(i, j, k) and its mirror Gamma(i, k, j).
  void set_pair(int i, int j, int k, double value) {
    data_[index(i, j, k)] = value;
    data_[index(i, k, j)] = value;
  }

  /// C_ij = sum_k Gamma(i, j, k) qd_k.
  Eigen::MatrixXd contract(const Eigen::VectorXd& qd) const;

  double max_abs() const;
  double max_abs_diff(const ChristoffelTensor& other) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// Output and scratch space of christoffel_algo2; same reuse contract as
/// DynamicsOutput.
class ChristoffelWorkspace {
 public:
  explicit ChristoffelWorkspace(const KinematicTree& tree);

  const ChristoffelTensor& gamma() const { return gamma_; }

 private:
  friend void christoffel_algo2(const KinematicTree&, const Eigen::VectorXd&,
                                ChristoffelWorkspace&);
  ChristoffelTensor gamma_;
  std::vector<PluckerTransform> x_up_;
  std::vector<SpatialInertia> ic_;
  std::array<CompactRateMatrix, 2> b_;
};

/// Requires single-DoF joints with axes fixed in their local frames, which
/// every KinematicTree satisfies.
void christoffel_algo2(const KinematicTree& tree, const Eigen::VectorXd& q,
                       ChristoffelWorkspace& work);
ChristoffelTensor christoffel_algo2(const KinematicTree& tree,
                                    const Eigen::VectorXd& q);

}  // namespace dynkit

#endif  // DYNKIT_DYNAMICS_HPP_
