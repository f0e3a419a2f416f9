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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero when any gated criterion fails; the performance sanity line is
// advisory and never affects it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dynkit/coordinates.hpp"
#include "dynkit/dynamics.hpp"
#include "dynkit/generators.hpp"
#include "dynkit/harness/bench.hpp"
#include "dynkit/oracles.hpp"
#include "twolink_support.hpp"

namespace dynkit {
namespace {

using Clock = std::chrono::steady_clock;
constexpr auto kNs = FactorizationKind::kNiemeyerSlotine;
constexpr auto kSimple = FactorizationKind::kSimple;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct Outcome {
  bool passed;
  std::string detail;
};

int g_failures = 0;

void report(int id, const char* title, const Outcome& o,
            bool advisory = false) {
  const char* status = o.passed ? "PASS" : "FAIL";
  std::printf("criterion %d %-34s %s%s  %s\n", id, title, status,
              advisory ? " (advisory)" : "", o.detail.c_str());
  std::fflush(stdout);
  if (!o.passed && !advisory) ++g_failures;
}

// Shared by criteria 1 to 3: 100 states on serial chains of 10, 20, 30.
struct ChainResiduals {
  double validity = 0.0;
  double skew = 0.0;
  double mdot_fd = 0.0;
  double contraction = 0.0;
  double validity_seconds = 0.0;
};

ChainResiduals chain_residuals() {
  ChainResiduals r;
  // Timed part: the validity identity alone.
  const auto start = Clock::now();
  for (int n : {10, 20, 30}) {
    const KinematicTree t = gen_serial(n, {.seed = 1});
    DynamicsOutput out(t);
    RneaWorkspace rw(t);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
    for (std::uint64_t s = 1; s <= 100; ++s) {
      const GeneralizedState st = random_state(t, s);
      rnea(t, st.q, st.qd, zero, false, rw);
      for (auto kind : {kNs, kSimple}) {
        coriolis_algo1(t, st.q, st.qd, kind, out);
        r.validity = std::max(
            r.validity,
            (out.coriolis() * st.qd - rw.tau()).cwiseAbs().maxCoeff());
      }
    }
  }
  r.validity_seconds = seconds_since(start);

  for (int n : {10, 20, 30}) {
    const KinematicTree t = gen_serial(n, {.seed = 1});
    DynamicsOutput out(t);
    ChristoffelWorkspace cw(t);
    for (std::uint64_t s = 1; s <= 100; ++s) {
      const GeneralizedState st = random_state(t, s);
      for (auto kind : {kNs, kSimple}) {
        coriolis_algo1(t, st.q, st.qd, kind, out);
        const Eigen::MatrixXd& c = out.coriolis();
        r.skew = std::max(r.skew,
                          max_abs(out.mass_matrix_dot() - c - c.transpose()));
      }
      r.mdot_fd = std::max(
          r.mdot_fd, max_abs(out.mass_matrix_dot() - fd_mdot(t, st, 1e-6)));
      coriolis_algo1(t, st.q, st.qd, kNs, out);
      christoffel_algo2(t, st.q, cw);
      r.contraction = std::max(
          r.contraction, max_abs(out.coriolis() - cw.gamma().contract(st.qd)));
    }
  }
  return r;
}

// Every generated topology with at most 12 bodies.
std::vector<KinematicTree> small_trees() {
  std::vector<KinematicTree> trees;
  for (int n = 1; n <= 12; ++n) {
    trees.push_back(gen_serial(n, {.seed = 100u + n}));
    trees.push_back(gen_binary_tree(n, {.seed = 200u + n}));
    trees.push_back(
        gen_serial(n, {.seed = 300u + n, .prismatic_fraction = 0.3}));
  }
  for (int n = 2; n <= 10; n += 2) trees.push_back(gen_biped(n, {.seed = 400}));
  for (int n = 4; n <= 8; n += 4) {
    trees.push_back(gen_quadruped(n, {.seed = 500}));
  }
  trees.push_back(gen_branched_example({.seed = 600}));
  return trees;
}

Outcome criterion3_triangle(double contraction) {
  double algo_closed = 0.0, algo_fd = 0.0, closed_fd = 0.0;
  int trees = 0;
  for (const KinematicTree& t : small_trees()) {
    ++trees;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const Eigen::VectorXd q = random_state(t, s).q;
      const ChristoffelTensor a = christoffel_algo2(t, q);
      const ChristoffelTensor c = christoffel_closed_form(t, q);
      const ChristoffelTensor f = fd_christoffel(t, q, 1e-6);
      algo_closed = std::max(algo_closed, a.max_abs_diff(c));
      algo_fd = std::max(algo_fd, a.max_abs_diff(f));
      closed_fd = std::max(closed_fd, c.max_abs_diff(f));
    }
  }
  const bool ok = contraction <= 1e-10 && algo_closed <= 1e-12 &&
                  algo_fd <= 1e-5 && closed_fd <= 1e-5;
  return {ok, "contraction " + sci(contraction) + " <= 1e-10; algo2/closed " +
                  sci(algo_closed) + " <= 1e-12; algo2/fd " + sci(algo_fd) +
                  ", closed/fd " + sci(closed_fd) + " <= 1e-5 over " +
                  std::to_string(trees) + " trees"};
}

Outcome criterion4_twolink() {
  const KinematicTree t = testing::twolink();
  const double m2 = t.body(1).inertial.mass;
  const double l1 = t.joint(1).tree_transform.trans().x();
  const double lc2 = t.body(1).inertial.com.x();
  std::mt19937 gen(4);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0, worst_fd = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd q(2);
    q << u(gen), u(gen);
    const double h = -m2 * l1 * lc2 * std::sin(q[1]);
    ChristoffelTensor expected(2);
    expected.set_pair(0, 0, 1, h);
    expected(0, 1, 1) = h;
    expected(1, 0, 0) = -h;
    const ChristoffelTensor fd = fd_christoffel(t, q, 1e-6);
    worst_fd = std::max(worst_fd, fd.max_abs_diff(expected));
    worst = std::max({worst, christoffel_algo2(t, q).max_abs_diff(expected),
                      christoffel_closed_form(t, q).max_abs_diff(expected)});
  }
  return {worst <= 1e-10 && worst_fd <= 1e-5,
          "max |Gamma - analytic| " + sci(worst) +
              " <= 1e-10 at 20 configurations; fd oracle " + sci(worst_fd)};
}

Outcome criterion5_theorem1() {
  const KinematicTree t = testing::twolink();
  const auto map = testing::quadratic_shift();
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd qhat(2), qhat_dot(2);
    qhat << u(gen), u(gen);
    qhat_dot << u(gen), u(gen);
    Eigen::MatrixXd adot(2, 2);
    adot << 0, 0, -qhat_dot[0], 0;
    const TransformedDynamics td =
        testing::transformed(t, map, qhat, qhat_dot, adot);
    worst = std::max(worst,
                     max_abs(td.coriolis - testing::fd_hat_coriolis(
                                               t, map, qhat, qhat_dot)));
  }
  return {worst <= 1e-5, "max |Chat - fd Gammahat qhatdot| " + sci(worst) +
                             " <= 1e-5 over 20 states"};
}

struct SlopeGate {
  Topology topology;
  Algorithm algorithm;
  double lo;
  double hi;
  bool open;  // strict bounds
};

bool slope_ok(const LogLogFit& f, const SlopeGate& g) {
  if (f.r_squared < kMinFitRSquared) return false;
  return g.open ? (f.slope > g.lo && f.slope < g.hi)
                : (f.slope >= g.lo && f.slope <= g.hi);
}

Outcome criterion6_scaling(CompareReport& compare) {
  const auto start = Clock::now();
  const std::vector<SlopeGate> gates = {
      {Topology::kSerial, Algorithm::kChristoffel, 2.5, 3.5, false},
      {Topology::kSerial, Algorithm::kCoriolis, 1.6, 2.4, false},
      {Topology::kBinaryTree, Algorithm::kChristoffel, 1.0, 2.0, true},
      {Topology::kBinaryTree, Algorithm::kCoriolis, 1.0, 2.0, true},
  };
  std::vector<BenchResult> results;
  for (Topology topology : {Topology::kSerial, Topology::kBinaryTree}) {
    BenchSpec spec;
    spec.topology = topology;
    results.push_back(run_bench(spec));
  }
  bool slopes_ok = true;
  std::ostringstream detail;
  for (const SlopeGate& g : gates) {
    const BenchFit* fit = nullptr;
    for (const auto& r : results) {
      if (!fit) fit = r.find_fit(g.topology, g.algorithm);
    }
    const bool ok = fit != nullptr && slope_ok(fit->fit, g);
    slopes_ok &= ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s/%s %.2f (R^2 %.3f)%s; ",
                  std::string(to_string(g.topology)).c_str(),
                  g.algorithm == Algorithm::kChristoffel ? "gamma" : "C",
                  fit ? fit->fit.slope : NAN, fit ? fit->fit.r_squared : NAN,
                  ok ? "" : " out of gate");
    detail << buf;
  }
  for (const auto& r : results) print_fits(r, std::cout);
  compare = compare_topologies(20, 100, 1);
  print_compare_report(compare, std::cout);
  const double elapsed = seconds_since(start);
  detail << "ordering at 20 dof " << (compare.passed() ? "holds" : "violated")
         << "; " << sci(elapsed) << " s < 120 s";
  return {slopes_ok && compare.passed() && elapsed < 120.0, detail.str()};
}

Outcome criterion7_performance(const CompareReport& compare) {
  double worst_c = 0.0, worst_g = 0.0;
  for (const auto& t : compare.timings) {
    if (t.algorithm == Algorithm::kCoriolis) {
      worst_c = std::max(worst_c, t.stats.mean);
    } else if (t.algorithm == Algorithm::kChristoffel) {
      worst_g = std::max(worst_g, t.stats.mean);
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "slowest topology at 20 dof: C %.1f us (< 100), Gamma %.1f us "
                "(< 300); published 10-20 / 33-122 us",
                worst_c, worst_g);
  return {worst_c > 0.0 && worst_c < 100.0 && worst_g < 300.0, buf};
}

Outcome criterion8_sparsity() {
  const KinematicTree t = gen_branched_example({.seed = 8});
  const int n = t.size();
  long checked = 0, violations = 0;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const GeneralizedState st = random_state(t, s);
    const DynamicsOutput ns = coriolis_algo1(t, st, kNs);
    const DynamicsOutput simple = coriolis_algo1(t, st, kSimple);
    const Eigen::MatrixXd m = mass_matrix_crba(t, st.q);
    const ChristoffelTensor g = christoffel_algo2(t, st.q);
    const ChristoffelTensor gc = christoffel_closed_form(t, st.q);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!t.related(i, j)) {
          for (double x :
               {m(i, j), ns.mass_matrix()(i, j), ns.coriolis()(i, j),
                ns.mass_matrix_dot()(i, j), simple.coriolis()(i, j)}) {
            ++checked;
            violations += x != 0.0;
          }
        }
        for (int k = 0; k < n; ++k) {
          checked += 2;
          violations += g(i, j, k) != g(i, k, j);
          violations += gc(i, j, k) != gc(i, k, j);
          if (!(t.related(i, j) && t.related(j, k) && t.related(i, k))) {
            checked += 2;
            violations += g(i, j, k) != 0.0;
            violations += gc(i, j, k) != 0.0;
          }
        }
      }
    }
  }
  return {violations == 0, std::to_string(violations) +
                               " exact violations in " +
                               std::to_string(checked) +
                               " checks over 20 states"};
}

}  // namespace
}  // namespace dynkit

int main() {
  using namespace dynkit;
  const ChainResiduals chain = chain_residuals();
  report(1, "validity C qd = RNEA",
         {chain.validity <= 1e-9 && chain.validity_seconds < 10.0,
          "max " + sci(chain.validity) + " <= 1e-9 on 10/20/30 dof x 100, " +
              sci(chain.validity_seconds) + " s < 10 s"});
  report(2, "admissibility dM/dt = C + C^T",
         {chain.skew <= 1e-10 && chain.mdot_fd <= 1e-5,
          "skew " + sci(chain.skew) + " <= 1e-10 (both kinds); fd dM/dt " +
              sci(chain.mdot_fd) + " <= 1e-5"});
  report(3, "Christoffel consistency", criterion3_triangle(chain.contraction));
  report(4, "two-link analytic Christoffel", criterion4_twolink());
  report(5, "coordinate change transform law", criterion5_theorem1());
  CompareReport compare;
  report(6, "complexity scaling and ordering", criterion6_scaling(compare));
  report(7, "performance sanity", criterion7_performance(compare), true);
  report(8, "sparsity and symmetry", criterion8_sparsity());
  std::printf("%s\n", g_failures == 0 ? "acceptance: all gated criteria PASS"
                                      : "acceptance: FAILED");
  return g_failures == 0 ? 0 : 1;
}
