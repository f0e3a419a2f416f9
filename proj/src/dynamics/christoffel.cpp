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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynkit/dynamics.hpp"

namespace dynkit {

Eigen::MatrixXd ChristoffelTensor::contract(const Eigen::VectorXd& qd) const {
  if (qd.size() != n_) {
    throw std::invalid_argument("velocity dimension does not match tensor");
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      double sum = 0.0;
      for (int k = 0; k < n_; ++k) sum += (*this)(i, j, k) * qd[k];
      c(i, j) = sum;
    }
  }
  return c;
}

double ChristoffelTensor::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ChristoffelTensor::max_abs_diff(const ChristoffelTensor& other) const {
  if (other.n_ != n_) throw std::invalid_argument("tensor sizes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    m = std::max(m, std::abs(data_[i] - other.data_[i]));
  }
  return m;
}

ChristoffelWorkspace::ChristoffelWorkspace(const KinematicTree& tree)
    : gamma_(tree.size()), x_up_(tree.size()), ic_(tree.size()) {}

void christoffel_algo2(const KinematicTree& tree, const Eigen::VectorXd& q,
                       ChristoffelWorkspace& work) {
  const int n = tree.size();
  if (q.size() != n) {
    throw std::invalid_argument("state dimension does not match tree");
  }
  if (work.gamma_.size() != n) {
    throw std::invalid_argument("workspace was sized for a different tree");
  }
  ChristoffelTensor& gamma = work.gamma_;
  for (int i = 0; i < n; ++i) {
    work.x_up_[i] = joint_transform(tree.joint(i), q[i]);
    work.ic_[i] = tree.inertia(i);
  }

  for (int k = n - 1; k >= 0; --k) {
    const MotionVector& phi_k = tree.phi(k);
    // b alternates between the two workspace buffers.
    int cur = 0;
    body_factorization_ns(phi_k, work.ic_[k], work.b_[cur]);
    // D = (g xbar*) - b with g = I^C_k phi_k. Since X^T (g xbar*) X equals
    // ((X^T g) xbar*), D is carried as the force g instead of a matrix.
    ForceVector g = work.ic_[k] * phi_k;

    // b and g are expressed in frame j on each pass.
    for (int j = k; j != kBase;) {
      const MotionVector& phi_j = tree.phi(j);
      const CompactRateMatrix& b = work.b_[cur];
      ForceVector f1 = b * phi_j;
      ForceVector f2 = b.transpose_apply(phi_j);
      ForceVector f3 = cross_force(phi_j, g) - f1;
      for (int i = j;;) {
        const MotionVector& phi_i = tree.phi(i);
        gamma.set_pair(i, j, k, dot(phi_i, f1));
        gamma.set_pair(j, i, k, dot(phi_i, f2));
        gamma.set_pair(k, i, j, dot(phi_i, f3));
        const int p = tree.parent(i);
        if (p == kBase) break;
        const PluckerTransform& x = work.x_up_[i];
        f1 = x.apply_transpose(f1);
        f2 = x.apply_transpose(f2);
        f3 = x.apply_transpose(f3);
        i = p;
      }
      const int p = tree.parent(j);
      if (p != kBase) {
        CompactRateMatrix& next = work.b_[1 - cur];
        next.set_zero();
        add_congruence(work.x_up_[j], b, next);
        cur = 1 - cur;
        g = work.x_up_[j].apply_transpose(g);
      }
      j = p;
    }

    const int p = tree.parent(k);
    if (p != kBase) work.ic_[p].add_congruence(work.x_up_[k], work.ic_[k]);
  }
}

ChristoffelTensor christoffel_algo2(const KinematicTree& tree,
                                    const Eigen::VectorXd& q) {
  ChristoffelWorkspace work(tree);
  christoffel_algo2(tree, q, work);
  return work.gamma();
}

}  // namespace dynkit
