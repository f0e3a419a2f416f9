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

#include "dynkit/harness/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "dynkit/dynamics.hpp"

namespace dynkit {
namespace {

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void record(IdentityCheck& check, double residual, std::uint64_t seed) {
  // NaN counts as a breach.
  if (!(residual <= check.max_residual)) {
    check.max_residual = residual;
    check.worst_seed = seed;
  }
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.passed(); });
}

const IdentityCheck* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerifyReport run_verify(const VerifySpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const KinematicTree tree =
      spec.model ? *spec.model
                 : gen_topology(spec.topology, spec.dof, {.seed = spec.seed});
  const int n = tree.size();
  const bool oracles = n <= kMaxOracleBodies;

  // Order and names are part of the report format.
  std::vector<IdentityCheck> checks = {
      {"validity", kValidityGate},
      {"skew_niemeyer_slotine", kSkewGate},
      {"skew_simple", kSkewGate},
      {"mdot_fd", kMdotFdGate},
      {"mass_crba", kMassGate},
      {"coriolis_global", kGlobalCoriolisGate},
      {"christoffel_contraction", kContractionGate},
  };
  if (oracles) {
    checks.push_back({"christoffel_closed_form", kClosedFormGate});
    checks.push_back({"christoffel_fd", kFdChristoffelGate});
    checks.push_back({"closed_form_fd", kFdChristoffelGate});
  }
  auto check = [&](const char* name) -> IdentityCheck& {
    for (auto& c : checks) {
      if (c.name == name) return c;
    }
    throw std::logic_error("unknown identity");
  };

  DynamicsOutput ns(tree);
  DynamicsOutput simple(tree);
  ChristoffelWorkspace gamma_work(tree);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(t);
    const GeneralizedState s = random_state(tree, seed);
    coriolis_algo1(tree, s.q, s.qd, FactorizationKind::kNiemeyerSlotine, ns);
    coriolis_algo1(tree, s.q, s.qd, FactorizationKind::kSimple, simple);

    const Eigen::VectorXd tau = rnea(tree, s.q, s.qd, zero, false);
    record(check("validity"),
           std::max(max_abs(ns.coriolis() * s.qd - tau),
                    max_abs(simple.coriolis() * s.qd - tau)),
           seed);
    for (auto [name, out] : {std::pair{"skew_niemeyer_slotine", &ns},
                             std::pair{"skew_simple", &simple}}) {
      const Eigen::MatrixXd& c = out->coriolis();
      record(check(name),
             max_abs(out->mass_matrix_dot() - c - c.transpose()), seed);
    }
    record(check("mdot_fd"),
           max_abs(ns.mass_matrix_dot() - fd_mdot(tree, s, spec.fd_step)),
           seed);
    record(check("mass_crba"),
           max_abs(ns.mass_matrix() - mass_matrix_crba(tree, s.q)), seed);
    record(check("coriolis_global"),
           std::max(max_abs(ns.coriolis() -
                            coriolis_global(
                                tree, s, FactorizationKind::kNiemeyerSlotine)),
                    max_abs(simple.coriolis() -
                            coriolis_global(tree, s,
                                            FactorizationKind::kSimple))),
           seed);

    christoffel_algo2(tree, s.q, gamma_work);
    const ChristoffelTensor& gamma = gamma_work.gamma();
    record(check("christoffel_contraction"),
           max_abs(ns.coriolis() - gamma.contract(s.qd)), seed);
    if (oracles) {
      const ChristoffelTensor closed = christoffel_closed_form(tree, s.q);
      const ChristoffelTensor fd = fd_christoffel(tree, s.q, spec.fd_step);
      record(check("christoffel_closed_form"), gamma.max_abs_diff(closed),
             seed);
      record(check("christoffel_fd"), gamma.max_abs_diff(fd), seed);
      record(check("closed_form_fd"), closed.max_abs_diff(fd), seed);
    }
  }
  return {tree.name(), n, spec.trials, std::move(checks)};
}

void print_verify_report(const VerifyReport& report, std::ostream& out) {
  out << "model " << report.model_name << ", " << report.dof << " dof, "
      << report.trials << " trials\n";
  char line[160];
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-24s max %.3e  gate %.0e  %s",
                  c.name.c_str(), c.max_residual, c.gate,
                  c.passed() ? "ok" : "FAIL");
    out << line;
    if (!c.passed()) out << "  (state seed " << c.worst_seed << ")";
    out << '\n';
  }
  out << (report.passed() ? "all identities within gates\n"
                          : "verification FAILED\n");
}

}  // namespace dynkit
