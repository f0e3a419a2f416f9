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

#include "dynkit/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "dynkit/generators.hpp"
#include "dynkit/model_io.hpp"

namespace dynkit {
namespace {

constexpr auto kNs = FactorizationKind::kNiemeyerSlotine;
constexpr auto kSimple = FactorizationKind::kSimple;

KinematicTree fixture(const char* name) {
  return load_model_file(std::string(DYNKIT_FIXTURE_DIR) + "/" + name);
}

// Two-link fixture parameters.
constexpr double kM1 = 1.2, kLc1 = 0.5, kI1 = 0.1;
constexpr double kL1 = 1.0, kM2 = 0.8, kLc2 = 0.45, kI2 = 0.054;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Mat3 sk(const Vec3& p) {
  Mat3 s;
  s << 0, -p[2], p[1], p[2], 0, -p[0], -p[1], p[0], 0;
  return s;
}

// (v x*) as a 6x6 matrix, built here rather than taken from the library.
Mat6 crf(const Vec6& v) {
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>() = sk(v.head<3>());
  m.bottomRightCorner<3, 3>() = sk(v.head<3>());
  m.topRightCorner<3, 3>() = sk(v.tail<3>());
  return m;
}

TEST(Factorization, ZeroVelocityGivesZero) {
  const SpatialInertia inertia = gen_serial(1).inertia(0);
  for (auto kind : {kNs, kSimple}) {
    EXPECT_EQ(body_factorization(kind, MotionVector::Zero(), inertia)
                  .matrix()
                  .norm(),
              0.0);
  }
}

TEST(Factorization, ReproducesVelocityProductAndNsSkew) {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Vec6 v;
    for (int i = 0; i < 6; ++i) v[i] = u(gen);
    const SpatialInertia inertia =
        gen_serial(1, {.seed = static_cast<std::uint64_t>(trial)}).inertia(0);
    const Mat6 im = inertia.matrix();
    const Vec6 expected = crf(v) * im * v;
    for (auto kind : {kNs, kSimple}) {
      const Mat6 b = body_factorization(kind, MotionVector(v), inertia).matrix();
      EXPECT_LT((b * v - expected).cwiseAbs().maxCoeff(), 1e-12);
      if (kind == kNs) {
        const Mat6 idot = crf(v) * im - im * (-crf(v).transpose());
        EXPECT_LT((b + b.transpose() - idot).cwiseAbs().maxCoeff(), 1e-12);
      } else {
        EXPECT_LT((b - crf(v) * im).cwiseAbs().maxCoeff(), 1e-12);
      }
      RateMatrix out(Mat6::Constant(7.0));
      body_factorization(kind, MotionVector(v), inertia, out);
      EXPECT_EQ(out.matrix(), b);
      if (kind == kNs) {
        CompactRateMatrix c(Mat3::Constant(7.0), Vec3::Constant(7.0));
        body_factorization_ns(MotionVector(v), inertia, c);
        EXPECT_LT((c.full().matrix() - b).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(Factorization, ParseNames) {
  EXPECT_EQ(parse_factorization("simple"), kSimple);
  EXPECT_EQ(parse_factorization("niemeyer_slotine"), kNs);
  EXPECT_FALSE(parse_factorization("other").has_value());
  EXPECT_EQ(to_string(kNs), "niemeyer_slotine");
}

TEST(Rnea, RestGivesZeroWithoutGravity) {
  const KinematicTree t = gen_binary_tree(9);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(9);
  EXPECT_EQ(rnea(t, random_state(t, 1).q, z, z, false).norm(), 0.0);
}

TEST(Rnea, PendulumAccelerationAndGravity) {
  const KinematicTree t = fixture("pendulum.model");
  Eigen::VectorXd q(1), qd(1), qdd(1);
  q << 0.7;
  qd << 0.0;
  qdd << 2.5;
  // Izz about the centre plus m l^2 with l = 1.
  EXPECT_NEAR(rnea(t, q, qd, qdd, false)[0], (0.01 + 1.0) * 2.5, 1e-12);
  qdd << 0.0;
  EXPECT_NEAR(rnea(t, q, qd, qdd, true)[0], 9.81 * std::cos(0.7), 1e-12);
}

TEST(Rnea, WorkspaceMatchesValueVersion) {
  const KinematicTree t = gen_quadruped(8);
  RneaWorkspace work(t);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const GeneralizedState st = random_state(t, s);
    rnea(t, st.q, st.qd, *st.qdd, true, work);
    EXPECT_EQ(work.tau(), rnea(t, st, true));
  }
}

TEST(Rnea, EqualsMassTimesAccelerationPlusCoriolis) {
  const KinematicTree t = gen_serial(30, {.seed = 2});
  for (std::uint64_t s = 0; s < 10; ++s) {
    const GeneralizedState st = random_state(t, s);
    const DynamicsOutput d = coriolis_algo1(t, st);
    const Eigen::VectorXd expected =
        d.mass_matrix() * *st.qdd + d.coriolis() * st.qd;
    EXPECT_LT((rnea(t, st, false) - expected).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Crba, PendulumAndTwoLinkClosedForm) {
  Eigen::VectorXd q(1);
  q << 1.3;
  EXPECT_NEAR(mass_matrix_crba(fixture("pendulum.model"), q)(0, 0), 1.01,
              1e-14);
  const KinematicTree two = fixture("twolink.model");
  for (double q2 : {-2.0, 0.0, 0.5, 2.9}) {
    Eigen::VectorXd qq(2);
    qq << 0.3, q2;
    const Eigen::MatrixXd m = mass_matrix_crba(two, qq);
    const double c = std::cos(q2);
    const double m11 = kI1 + kI2 + kM1 * kLc1 * kLc1 +
                       kM2 * (kL1 * kL1 + kLc2 * kLc2 + 2 * kL1 * kLc2 * c);
    const double m12 = kI2 + kM2 * (kLc2 * kLc2 + kL1 * kLc2 * c);
    const double m22 = kI2 + kM2 * kLc2 * kLc2;
    EXPECT_NEAR(m(0, 0), m11, 1e-13);
    EXPECT_NEAR(m(0, 1), m12, 1e-13);
    EXPECT_NEAR(m(1, 0), m12, 1e-13);
    EXPECT_NEAR(m(1, 1), m22, 1e-13);
  }
}

TEST(Crba, MatchesAlgorithmOneMassMatrix) {
  for (const KinematicTree& t :
       {gen_serial(12, {.seed = 4}), gen_binary_tree(15, {.seed = 5}),
        gen_biped(8, {.seed = 6, .prismatic_fraction = 0.3})}) {
    const GeneralizedState st = random_state(t, 9);
    const Eigen::MatrixXd m = mass_matrix_crba(t, st.q);
    EXPECT_LT(max_abs(m - coriolis_algo1(t, st).mass_matrix()), 1e-12);
    EXPECT_LT(max_abs(m - m.transpose()), 1e-12);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m)
                  .eigenvalues()
                  .minCoeff(),
              0.0);
  }
}

TEST(Coriolis, ZeroVelocityGivesZero) {
  const KinematicTree t = gen_binary_tree(10);
  GeneralizedState st = random_state(t, 2);
  st.qd.setZero();
  for (auto kind : {kNs, kSimple}) {
    const DynamicsOutput d = coriolis_algo1(t, st, kind);
    EXPECT_EQ(max_abs(d.coriolis()), 0.0);
    EXPECT_EQ(max_abs(d.mass_matrix_dot()), 0.0);
  }
}

TEST(Coriolis, PendulumIsZero) {
  const KinematicTree t = fixture("pendulum.model");
  const GeneralizedState st = random_state(t, 3);
  EXPECT_EQ(coriolis_algo1(t, st).coriolis()(0, 0), 0.0);
}

TEST(Coriolis, ValidityOnTenDofChain) {
  const KinematicTree t = gen_serial(10);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const GeneralizedState st = random_state(t, s);
    const Eigen::VectorXd z = Eigen::VectorXd::Zero(10);
    const Eigen::VectorXd tau = rnea(t, st.q, st.qd, z, false);
    for (auto kind : {kNs, kSimple}) {
      const DynamicsOutput d = coriolis_algo1(t, st, kind);
      EXPECT_LT((d.coriolis() * st.qd - tau).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Coriolis, AdmissibleForBothKindsAndKindsAgreeOnVelocity) {
  const KinematicTree t = gen_binary_tree(12, {.seed = 8});
  for (std::uint64_t s = 0; s < 20; ++s) {
    const GeneralizedState st = random_state(t, s);
    const DynamicsOutput ns = coriolis_algo1(t, st, kNs);
    const DynamicsOutput simple = coriolis_algo1(t, st, kSimple);
    for (const DynamicsOutput* d : {&ns, &simple}) {
      const Eigen::MatrixXd& c = d->coriolis();
      EXPECT_LT(max_abs(d->mass_matrix_dot() - c - c.transpose()), 1e-10);
      EXPECT_LT(max_abs(d->mass_matrix_dot() -
                        d->mass_matrix_dot().transpose()),
                1e-10);
    }
    EXPECT_LT(((ns.coriolis() - simple.coriolis()) * st.qd)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
  }
}

TEST(Coriolis, WorkspaceReuseGivesIdenticalResults) {
  const KinematicTree t = gen_quadruped(12, {.seed = 3});
  DynamicsOutput out(t);
  const GeneralizedState a = random_state(t, 1);
  const GeneralizedState b = random_state(t, 2);
  coriolis_algo1(t, a.q, a.qd, kNs, out);
  coriolis_algo1(t, b.q, b.qd, kNs, out);
  const DynamicsOutput fresh = coriolis_algo1(t, b);
  EXPECT_EQ(out.coriolis(), fresh.coriolis());
  EXPECT_EQ(out.mass_matrix(), fresh.mass_matrix());
  EXPECT_EQ(out.mass_matrix_dot(), fresh.mass_matrix_dot());
  ASSERT_EQ(out.bodies().size(), 13u);
  const DynamicsOutput::BodyState& leaf = out.bodies().back();
  EXPECT_LT((leaf.phi_dot.coeffs() -
             cross_motion(leaf.v, leaf.phi).coeffs())
                .norm(),
            1e-12);
}

TEST(Coriolis, RejectsMismatchedWorkspace) {
  const KinematicTree t = gen_serial(4);
  DynamicsOutput out(gen_serial(3));
  const GeneralizedState st = random_state(t, 1);
  EXPECT_THROW(coriolis_algo1(t, st.q, st.qd, kNs, out),
               std::invalid_argument);
}

TEST(Sparsity, BranchedExampleIsExactlyZeroOffPattern) {
  const KinematicTree t = gen_branched_example({.seed = 11});
  const int n = t.size();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const GeneralizedState st = random_state(t, s);
    const DynamicsOutput d = coriolis_algo1(t, st);
    const ChristoffelTensor g = christoffel_algo2(t, st.q);
    const Eigen::MatrixXd m = mass_matrix_crba(t, st.q);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!t.related(i, j)) {
          EXPECT_EQ(d.mass_matrix()(i, j), 0.0);
          EXPECT_EQ(d.coriolis()(i, j), 0.0);
          EXPECT_EQ(d.mass_matrix_dot()(i, j), 0.0);
          EXPECT_EQ(m(i, j), 0.0);
        }
        for (int k = 0; k < n; ++k) {
          EXPECT_EQ(g(i, j, k), g(i, k, j));
          if (!(t.related(i, j) && t.related(j, k) && t.related(i, k))) {
            EXPECT_EQ(g(i, j, k), 0.0);
          }
        }
      }
    }
  }
}

TEST(Christoffel, PendulumIsZero) {
  Eigen::VectorXd q(1);
  q << 1.0;
  const ChristoffelTensor g = christoffel_algo2(fixture("pendulum.model"), q);
  ASSERT_EQ(g.size(), 1);
  EXPECT_EQ(g(0, 0, 0), 0.0);
}

TEST(Christoffel, PrismaticChainIsZero) {
  const KinematicTree t =
      gen_serial(7, {.seed = 5, .prismatic_fraction = 1.0});
  const ChristoffelTensor g = christoffel_algo2(t, random_state(t, 4).q);
  EXPECT_LT(g.max_abs(), 1e-14);
}

TEST(Christoffel, TwoLinkPattern) {
  const KinematicTree t = fixture("twolink.model");
  for (double q2 : {-1.0, 0.5, 2.0}) {
    Eigen::VectorXd q(2);
    q << 0.8, q2;
    const ChristoffelTensor g = christoffel_algo2(t, q);
    const double h = -kM2 * kL1 * kLc2 * std::sin(q2);
    EXPECT_NEAR(g(0, 0, 0), 0.0, 1e-12);
    EXPECT_NEAR(g(0, 0, 1), h, 1e-12);
    EXPECT_NEAR(g(0, 1, 0), h, 1e-12);
    EXPECT_NEAR(g(0, 1, 1), h, 1e-12);
    EXPECT_NEAR(g(1, 0, 0), -h, 1e-12);
    EXPECT_NEAR(g(1, 0, 1), 0.0, 1e-12);
    EXPECT_NEAR(g(1, 1, 0), 0.0, 1e-12);
    EXPECT_NEAR(g(1, 1, 1), 0.0, 1e-12);
  }
}

TEST(Christoffel, ContractionGivesNsCoriolis) {
  for (const KinematicTree& t :
       {gen_serial(10, {.seed = 2}), gen_binary_tree(20, {.seed = 3}),
        gen_quadruped(12, {.seed = 4, .prismatic_fraction = 0.25})}) {
    ChristoffelWorkspace work(t);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const GeneralizedState st = random_state(t, s);
      christoffel_algo2(t, st.q, work);
      const Eigen::MatrixXd c = coriolis_algo1(t, st).coriolis();
      EXPECT_LT(max_abs(c - work.gamma().contract(st.qd)), 1e-10);
    }
  }
}

TEST(Christoffel, TensorHelpers) {
  ChristoffelTensor g(2);
  g.set_pair(0, 0, 1, 3.0);
  EXPECT_EQ(g(0, 1, 0), 3.0);
  EXPECT_EQ(g.max_abs(), 3.0);
  Eigen::VectorXd qd(2);
  qd << 2.0, 5.0;
  const Eigen::MatrixXd c = g.contract(qd);
  EXPECT_EQ(c(0, 0), 15.0);
  EXPECT_EQ(c(0, 1), 6.0);
  EXPECT_THROW(g.contract(Eigen::VectorXd(3)), std::invalid_argument);
  EXPECT_THROW(g.max_abs_diff(ChristoffelTensor(3)), std::invalid_argument);
}

}  // namespace
}  // namespace dynkit
