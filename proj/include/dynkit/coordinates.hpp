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

// Changes of generalized coordinates q = q(qhat) applied to M and C.

#ifndef DYNKIT_COORDINATES_HPP_
#define DYNKIT_COORDINATES_HPP_

#include <Eigen/Core>

namespace dynkit {

/// A = dq/dqhat at the evaluation point and its time derivative along the
/// trajectory. Both are supplied by the caller.
struct CoordinateChange {
  Eigen::MatrixXd a;
  Eigen::MatrixXd a_dot;
};

struct TransformedDynamics {
  Eigen::MatrixXd mass;      // A^T M A
  Eigen::MatrixXd coriolis;  // A^T C A + A^T M dA/dt
  double condition_number = 1.0;
};

inline constexpr double kMaxConditionNumber = 1e12;

/// Maps a Christoffel-consistent C to the Christoffel-consistent C of the
/// new coordinates, and an admissible C to an admissible one. Throws
/// std::invalid_argument when A is singular (condition number above
/// max_condition) or dimensions disagree.
TransformedDynamics transform_coordinates(
    const Eigen::MatrixXd& mass, const Eigen::MatrixXd& coriolis,
    const CoordinateChange& change,
    double max_condition = kMaxConditionNumber);

}  // namespace dynkit

#endif  // DYNKIT_COORDINATES_HPP_
