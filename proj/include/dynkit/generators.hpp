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

// Deterministic random kinematic trees and states for tests and benchmarks.
//
// Every body gets
//   mass              U[0.5, 2] kg
//   link vector       random direction, length U[0.2, 1] m; children attach
//                     at the end of their parent's link
//   centre of mass    t * link with t ~ U[0, 1]
//   inertia (com)     Q diag(d) Q^T, Q a random rotation, d_k ~ U[0.01, 0.2]
//   joint frame       uniformly random orientation relative to the parent
//   joint axis        +z of the joint frame
// Children of the fixed base attach at its origin.

#ifndef DYNKIT_GENERATORS_HPP_
#define DYNKIT_GENERATORS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dynkit/model.hpp"

namespace dynkit {

enum class Topology { kSerial, kBinaryTree, kBiped, kQuadruped };

std::string_view to_string(Topology topology);
std::optional<Topology> parse_topology(std::string_view name);

struct GeneratorOptions {
  std::uint64_t seed = 1;
  /// Probability that a joint is prismatic instead of revolute.
  double prismatic_fraction = 0.0;
};

/// Random parameters on a given connectivity. `parents` uses code indexing
/// (kBase for the base, parents[i] < i).
KinematicTree gen_from_parents(const std::vector<int>& parents,
                               const GeneratorOptions& options = {},
                               std::string name = {});

KinematicTree gen_serial(int n, const GeneratorOptions& options = {});
/// Complete binary numbering: parent of body k (1-based) is k / 2.
KinematicTree gen_binary_tree(int n, const GeneratorOptions& options = {});
/// Main body on a revolute joint to the base plus two serial legs of
/// n_act / 2 joints. N = n_act + 1.
KinematicTree gen_biped(int n_act, const GeneratorOptions& options = {});
/// Main body plus four serial legs of n_act / 4 joints. N = n_act + 1.
KinematicTree gen_quadruped(int n_act, const GeneratorOptions& options = {});

/// Dispatch on topology; `dof` is the actuated DoF for legged topologies.
KinematicTree gen_topology(Topology topology, int dof,
                           const GeneratorOptions& options = {});

/// Ten-body branched example with the numbering used in the docs:
/// 1-based parents [0, 1, 2, 3, 1, 5, 6, 2, 8, 9].
KinematicTree gen_branched_example(const GeneratorOptions& options = {});

/// q in [0, 2pi] (revolute) or [0, 1] m (prismatic), qd in [0, 10],
/// qdd in [-10, 10].
GeneralizedState random_state(const KinematicTree& tree, std::uint64_t seed);

}  // namespace dynkit

#endif  // DYNKIT_GENERATORS_HPP_
