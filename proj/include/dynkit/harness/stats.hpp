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

// Summary statistics for timing samples and the log-log fit used for
// complexity exponents.

#ifndef DYNKIT_HARNESS_STATS_HPP_
#define DYNKIT_HARNESS_STATS_HPP_

#include <span>

namespace dynkit {

struct SampleStats {
  int count = 0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 for a single sample.
  double stddev = 0.0;
};

/// Throws std::invalid_argument on an empty span.
SampleStats summarize(std::span<const double> samples);

/// y ~ exp(intercept) * x^slope by least squares on (log x, log y).
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Needs at least two points with distinct positive x and positive y.
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace dynkit

#endif  // DYNKIT_HARNESS_STATS_HPP_
