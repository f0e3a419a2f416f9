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

// Timing of the recursive algorithms over generated trees, scaling-exponent
// fits and the topology ordering check.

#ifndef DYNKIT_HARNESS_BENCH_HPP_
#define DYNKIT_HARNESS_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dynkit/generators.hpp"
#include "dynkit/harness/stats.hpp"

namespace dynkit {

enum class Algorithm { kCoriolis, kChristoffel, kCrba, kRnea };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Fits below this R^2 are reported with a warning and never gated.
inline constexpr double kMinFitRSquared = 0.95;

struct BenchSpec {
  Topology topology = Topology::kSerial;
  /// Strictly increasing DoF counts. For biped and quadruped this is the
  /// actuated DoF; the trunk adds one more coordinate.
  std::vector<int> sizes = {8, 16, 32, 64};
  int trials = 100;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms = {Algorithm::kCoriolis,
                                       Algorithm::kChristoffel};
  /// Each sample times a batch of calls lasting at least this long and
  /// reports the per-call average.
  double min_batch_us = 50.0;
};

struct BenchRow {
  Topology topology;
  int dof;
  Algorithm algorithm;
  SampleStats stats;  // microseconds per call
};

struct BenchFit {
  Topology topology;
  Algorithm algorithm;
  LogLogFit fit;  // log median time against log dof
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<BenchFit> fits;

  const BenchFit* find_fit(Topology topology, Algorithm algorithm) const;
};

/// Throws std::invalid_argument for trials < 1 or sizes that are empty or
/// not strictly increasing.
BenchResult run_bench(const BenchSpec& spec);

/// Columns: topology,dof,algorithm,trials,mean_us,median_us,min_us,stddev_us.
void write_bench_csv(const BenchResult& result, std::ostream& out);
/// Whitespace-separated columns per series (log dof, log median us) followed
/// by the fitted slope, intercept and R^2 as comment lines.
void write_plot_data(const BenchResult& result, std::ostream& out);
/// Fitted exponents, with a warning for R^2 below kMinFitRSquared.
void print_fits(const BenchResult& result, std::ostream& out);

struct TopologyTiming {
  Topology topology;
  Algorithm algorithm;
  SampleStats stats;
};

struct CompareReport {
  int dof = 0;
  int attempts = 0;
  std::vector<TopologyTiming> timings;  // from the last attempt
  std::vector<std::string> violations;  // empty when the ordering holds

  bool passed() const { return violations.empty(); }
  const TopologyTiming* find(Topology topology, Algorithm algorithm) const;
};

/// Times coriolis and christoffel on every topology at `dof` actuated DoF
/// and checks mean(quadruped) < mean(biped) < mean(serial) and
/// mean(binary tree) <= mean(serial). A failed ordering is re-measured once.
CompareReport compare_topologies(int dof = 20, int trials = 100,
                                 std::uint64_t seed = 1);

/// Prints published reference timings alongside, as advisory context only.
void print_compare_report(const CompareReport& report, std::ostream& out);

}  // namespace dynkit

#endif  // DYNKIT_HARNESS_BENCH_HPP_
