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

#include "dynkit/coordinates.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

namespace dynkit {

TransformedDynamics transform_coordinates(const Eigen::MatrixXd& mass,
                                          const Eigen::MatrixXd& coriolis,
                                          const CoordinateChange& change,
                                          double max_condition) {
  const Eigen::Index n = mass.rows();
  const auto square = [n](const Eigen::MatrixXd& m) {
    return m.rows() == n && m.cols() == n;
  };
  if (!square(mass) || !square(coriolis) || !square(change.a) ||
      !square(change.a_dot)) {
    throw std::invalid_argument("coordinate change dimensions disagree");
  }
  double cond = 1.0;
  if (n > 0) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(change.a);
    const auto& s = svd.singularValues();
    const double smin = s[n - 1];
    cond = smin > 0.0 ? s[0] / smin : std::numeric_limits<double>::infinity();
  }
  if (!(cond <= max_condition)) {
    std::ostringstream msg;
    msg << "coordinate change is singular (condition number " << cond << ")";
    throw std::invalid_argument(msg.str());
  }
  const Eigen::MatrixXd at = change.a.transpose();
  return {at * mass * change.a,
          at * coriolis * change.a + at * mass * change.a_dot, cond};
}

}  // namespace dynkit
