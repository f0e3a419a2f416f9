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

// Randomized invariant suite over the dynamics module. Each identity keeps
// its worst residual and the state seed that produced it.

#ifndef DYNKIT_HARNESS_VERIFY_HPP_
#define DYNKIT_HARNESS_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dynkit/generators.hpp"
#include "dynkit/model.hpp"
#include "dynkit/oracles.hpp"

namespace dynkit {

inline constexpr double kValidityGate = 1e-9;        // |C qd - RNEA|
inline constexpr double kSkewGate = 1e-10;           // |dM/dt - C - C^T|
inline constexpr double kMdotFdGate = 1e-5;          // |dM/dt - FD|
inline constexpr double kContractionGate = 1e-10;    // |C - Gamma qd|
inline constexpr double kMassGate = 1e-9;            // |M - CRBA|
inline constexpr double kGlobalCoriolisGate = 1e-9;  // |C - Jacobian C|
inline constexpr double kClosedFormGate = 1e-12;     // |Gamma - closed form|
inline constexpr double kFdChristoffelGate = 1e-5;   // |Gamma - FD Gamma|
/// Largest tree on which the O(N^3)-per-entry Christoffel oracles run.
inline constexpr int kMaxOracleBodies = 12;

struct VerifySpec {
  Topology topology = Topology::kSerial;
  int dof = 10;
  int trials = 100;
  /// Seeds the generated model; trial t uses state seed `seed + t`.
  std::uint64_t seed = 1;
  double fd_step = kDefaultFdStep;
  /// Verified instead of a generated tree when set.
  std::optional<KinematicTree> model;
};

struct IdentityCheck {
  std::string name;
  double gate = 0.0;
  double max_residual = 0.0;
  std::uint64_t worst_seed = 0;

  bool passed() const { return max_residual <= gate; }
};

struct VerifyReport {
  std::string model_name;
  int dof = 0;
  int trials = 0;
  std::vector<IdentityCheck> checks;

  bool passed() const;
  /// nullptr when absent.
  const IdentityCheck* find(const std::string& name) const;
};

VerifyReport run_verify(const VerifySpec& spec);

/// One line per identity; failing lines carry the offending state seed.
void print_verify_report(const VerifyReport& report, std::ostream& out);

}  // namespace dynkit

#endif  // DYNKIT_HARNESS_VERIFY_HPP_
