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

#include <gtest/gtest.h>

#include <random>

#include "twolink_support.hpp"

namespace dynkit {
namespace {

using testing::absolute_angles;
using testing::fd_hat_coriolis;
using testing::quadratic_shift;
using testing::transformed;
using testing::twolink;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Coordinates, IdentityLeavesInputsUnchanged) {
  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(3, 3);
  const Eigen::MatrixXd c = Eigen::MatrixXd::Random(3, 3);
  const TransformedDynamics t = transform_coordinates(
      m, c, {Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Zero(3, 3)});
  EXPECT_EQ(t.mass, m);
  EXPECT_EQ(t.coriolis, c);
  EXPECT_DOUBLE_EQ(t.condition_number, 1.0);
}

TEST(Coordinates, SingularChangeIsRejected) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 2, 4;
  try {
    transform_coordinates(Eigen::MatrixXd::Identity(2, 2),
                          Eigen::MatrixXd::Zero(2, 2),
                          {a, Eigen::MatrixXd::Zero(2, 2)});
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("condition number"),
              std::string::npos);
  }
  EXPECT_THROW(transform_coordinates(Eigen::MatrixXd::Identity(2, 2),
                                     Eigen::MatrixXd::Zero(3, 3),
                                     {Eigen::MatrixXd::Identity(2, 2),
                                      Eigen::MatrixXd::Zero(2, 2)}),
               std::invalid_argument);
}

TEST(Coordinates, AbsoluteAnglesMatchFiniteDifferences) {
  const KinematicTree tree = twolink();
  std::mt19937 gen(1);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd qhat(2), qhat_dot(2);
    qhat << u(gen), u(gen);
    qhat_dot << u(gen), u(gen);
    const TransformedDynamics t = transformed(
        tree, absolute_angles(), qhat, qhat_dot, Eigen::MatrixXd::Zero(2, 2));
    EXPECT_LT(max_abs(t.coriolis -
                      fd_hat_coriolis(tree, absolute_angles(), qhat, qhat_dot)),
              1e-5);
    EXPECT_LT(max_abs(t.mass - testing::hat_mass(tree, absolute_angles(), qhat)),
              1e-14);
  }
}

TEST(Coordinates, QuadraticShiftMatchesFiniteDifferences) {
  const KinematicTree tree = twolink();
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd qhat(2), qhat_dot(2);
    qhat << u(gen), u(gen);
    qhat_dot << u(gen), u(gen);
    Eigen::MatrixXd adot(2, 2);
    adot << 0, 0, -qhat_dot[0], 0;
    const TransformedDynamics t =
        transformed(tree, quadratic_shift(), qhat, qhat_dot, adot);
    EXPECT_LT(max_abs(t.coriolis -
                      fd_hat_coriolis(tree, quadratic_shift(), qhat, qhat_dot)),
              1e-5);
    // Admissibility survives the change: dMhat/dt = Chat + Chat^T.
    const double h = 1e-6;
    const Eigen::MatrixXd mdot_hat =
        (testing::hat_mass(tree, quadratic_shift(), qhat + h * qhat_dot) -
         testing::hat_mass(tree, quadratic_shift(), qhat - h * qhat_dot)) /
        (2 * h);
    EXPECT_LT(max_abs(mdot_hat - t.coriolis - t.coriolis.transpose()), 1e-5);
  }
}

}  // namespace
}  // namespace dynkit
