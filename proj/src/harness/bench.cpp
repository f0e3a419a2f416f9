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

#include "dynkit/harness/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "dynkit/dynamics.hpp"

namespace dynkit {
namespace {

using Clock = std::chrono::steady_clock;

// One tree with its sampled states and a warm workspace for one algorithm.
class Case {
 public:
  Case(Algorithm algorithm, Topology topology, int dof, int trials,
       std::uint64_t seed)
      : tree_(gen_topology(topology, dof, {.seed = seed})) {
    states_.reserve(trials);
    for (int t = 0; t < trials; ++t) {
      states_.push_back(random_state(tree_, seed + static_cast<std::uint64_t>(t)));
    }
    switch (algorithm) {
      case Algorithm::kCoriolis: {
        auto out = std::make_shared<DynamicsOutput>(tree_);
        call_ = [this, out](const GeneralizedState& s) {
          coriolis_algo1(tree_, s.q, s.qd,
                         FactorizationKind::kNiemeyerSlotine, *out);
        };
        break;
      }
      case Algorithm::kChristoffel: {
        auto work = std::make_shared<ChristoffelWorkspace>(tree_);
        call_ = [this, work](const GeneralizedState& s) {
          christoffel_algo2(tree_, s.q, *work);
        };
        break;
      }
      case Algorithm::kCrba: {
        auto work = std::make_shared<CrbaWorkspace>(tree_);
        call_ = [this, work](const GeneralizedState& s) {
          mass_matrix_crba(tree_, s.q, *work);
        };
        break;
      }
      case Algorithm::kRnea: {
        auto work = std::make_shared<RneaWorkspace>(tree_);
        call_ = [this, work](const GeneralizedState& s) {
          rnea(tree_, s.q, s.qd, *s.qdd, true, *work);
        };
        break;
      }
    }
  }
  Case(const Case&) = delete;
  Case& operator=(const Case&) = delete;

  // Warm-up call, then enough calls per sample to fill min_batch_us.
  void calibrate(double min_batch_us) {
    call_(states_[0]);
    const auto start = Clock::now();
    int calls = 0;
    double elapsed = 0.0;
    do {
      call_(states_[0]);
      ++calls;
      elapsed = std::chrono::duration<double, std::micro>(Clock::now() - start)
                    .count();
    } while (elapsed < min_batch_us && calls < 1000000);
    batch_ = std::max(1, static_cast<int>(std::ceil(
                             min_batch_us / (elapsed / calls))));
  }

  void sample(int trial) {
    const GeneralizedState& s = states_[trial];
    const auto start = Clock::now();
    for (int r = 0; r < batch_; ++r) call_(s);
    const double us =
        std::chrono::duration<double, std::micro>(Clock::now() - start)
            .count();
    samples_.push_back(us / batch_);
  }

  const std::vector<double>& samples() const { return samples_; }

 private:
  KinematicTree tree_;
  std::vector<GeneralizedState> states_;
  std::function<void(const GeneralizedState&)> call_;
  int batch_ = 1;
  std::vector<double> samples_;
};

// Times `algorithm` on several trees. Trials are interleaved across the
// cases so slow phases of the machine affect every case alike.
std::vector<SampleStats> time_cases(Algorithm algorithm,
                                    const std::vector<Topology>& topologies,
                                    const std::vector<int>& sizes, int trials,
                                    std::uint64_t seed, double min_batch_us) {
  std::vector<std::unique_ptr<Case>> cases;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    cases.push_back(std::make_unique<Case>(algorithm, topologies[c], sizes[c],
                                           trials, seed));
    cases.back()->calibrate(min_batch_us);
  }
  for (int t = 0; t < trials; ++t) {
    for (auto& c : cases) c->sample(t);
  }
  std::vector<SampleStats> stats;
  for (const auto& c : cases) stats.push_back(summarize(c->samples()));
  return stats;
}

void check_trials(int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

// Published 20-DoF timings in microseconds; negative when not reported.
double published_us(Topology topology, Algorithm algorithm) {
  const bool gamma = algorithm == Algorithm::kChristoffel;
  switch (topology) {
    case Topology::kSerial:
      return gamma ? 122.0 : 18.0;
    case Topology::kBiped:
      return gamma ? 64.0 : 13.0;
    case Topology::kQuadruped:
      return gamma ? 37.0 : 10.0;
    case Topology::kBinaryTree:
      return gamma ? 33.0 : -1.0;
  }
  return -1.0;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCoriolis:
      return "coriolis";
    case Algorithm::kChristoffel:
      return "christoffel";
    case Algorithm::kCrba:
      return "crba";
    case Algorithm::kRnea:
      return "rnea";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kCoriolis, Algorithm::kChristoffel,
                      Algorithm::kCrba, Algorithm::kRnea}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

const BenchFit* BenchResult::find_fit(Topology topology,
                                      Algorithm algorithm) const {
  for (const auto& f : fits) {
    if (f.topology == topology && f.algorithm == algorithm) return &f;
  }
  return nullptr;
}

BenchResult run_bench(const BenchSpec& spec) {
  check_trials(spec.trials);
  if (spec.sizes.empty()) throw std::invalid_argument("no sizes given");
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    if (spec.sizes[i] < 1 || (i > 0 && spec.sizes[i] <= spec.sizes[i - 1])) {
      throw std::invalid_argument("sizes must be positive and increasing");
    }
  }
  BenchResult result;
  const std::vector<Topology> topologies(spec.sizes.size(), spec.topology);
  for (Algorithm algorithm : spec.algorithms) {
    const auto stats = time_cases(algorithm, topologies, spec.sizes,
                                  spec.trials, spec.seed, spec.min_batch_us);
    std::vector<double> dof;
    std::vector<double> median;
    for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
      result.rows.push_back(
          {spec.topology, spec.sizes[i], algorithm, stats[i]});
      dof.push_back(spec.sizes[i]);
      median.push_back(stats[i].median);
    }
    if (spec.sizes.size() >= 2) {
      result.fits.push_back(
          {spec.topology, algorithm, fit_loglog(dof, median)});
    }
  }
  return result;
}

void write_bench_csv(const BenchResult& result, std::ostream& out) {
  out << "topology,dof,algorithm,trials,mean_us,median_us,min_us,stddev_us\n";
  char buf[160];
  for (const auto& r : result.rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%s,%d,%.4f,%.4f,%.4f,%.4f\n",
                  std::string(to_string(r.topology)).c_str(), r.dof,
                  std::string(to_string(r.algorithm)).c_str(), r.stats.count,
                  r.stats.mean, r.stats.median, r.stats.min, r.stats.stddev);
    out << buf;
  }
}

void write_plot_data(const BenchResult& result, std::ostream& out) {
  char buf[160];
  bool first = true;
  for (const auto& f : result.fits) {
    if (!first) out << "\n\n";  // gnuplot index separator
    first = false;
    out << "# " << to_string(f.topology) << ' ' << to_string(f.algorithm)
        << "\n# log_dof log_median_us\n";
    for (const auto& r : result.rows) {
      if (r.topology != f.topology || r.algorithm != f.algorithm) continue;
      std::snprintf(buf, sizeof buf, "%.6f %.6f\n", std::log(double(r.dof)),
                    std::log(r.stats.median));
      out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "# slope %.4f intercept %.4f r_squared %.4f\n",
                  f.fit.slope, f.fit.intercept, f.fit.r_squared);
    out << buf;
  }
}

void print_fits(const BenchResult& result, std::ostream& out) {
  char buf[160];
  for (const auto& f : result.fits) {
    std::snprintf(buf, sizeof buf, "%-12s %-12s slope %.3f  R^2 %.4f",
                  std::string(to_string(f.topology)).c_str(),
                  std::string(to_string(f.algorithm)).c_str(), f.fit.slope,
                  f.fit.r_squared);
    out << buf;
    if (f.fit.r_squared < kMinFitRSquared) {
      out << "  warning: R^2 below " << kMinFitRSquared
          << ", exponent not reliable";
    }
    out << '\n';
  }
}

const TopologyTiming* CompareReport::find(Topology topology,
                                          Algorithm algorithm) const {
  for (const auto& t : timings) {
    if (t.topology == topology && t.algorithm == algorithm) return &t;
  }
  return nullptr;
}

CompareReport compare_topologies(int dof, int trials, std::uint64_t seed) {
  check_trials(trials);
  const std::vector<Topology> topologies = {
      Topology::kSerial, Topology::kBinaryTree, Topology::kBiped,
      Topology::kQuadruped};
  const std::vector<int> sizes(topologies.size(), dof);
  CompareReport report;
  report.dof = dof;
  for (int attempt = 1; attempt <= 2; ++attempt) {
    report.attempts = attempt;
    report.timings.clear();
    report.violations.clear();
    for (Algorithm algorithm :
         {Algorithm::kCoriolis, Algorithm::kChristoffel}) {
      const auto stats =
          time_cases(algorithm, topologies, sizes, trials, seed, 50.0);
      for (std::size_t i = 0; i < topologies.size(); ++i) {
        report.timings.push_back({topologies[i], algorithm, stats[i]});
      }
      auto mean = [&](Topology t) {
        return report.find(t, algorithm)->stats.mean;
      };
      const std::string name(to_string(algorithm));
      if (!(mean(Topology::kQuadruped) < mean(Topology::kBiped))) {
        report.violations.push_back(name + ": quadruped not faster than biped");
      }
      if (!(mean(Topology::kBiped) < mean(Topology::kSerial))) {
        report.violations.push_back(name + ": biped not faster than serial");
      }
      if (!(mean(Topology::kBinaryTree) <= mean(Topology::kSerial))) {
        report.violations.push_back(name +
                                    ": binary tree slower than serial");
      }
    }
    if (report.passed()) break;
  }
  return report;
}

void print_compare_report(const CompareReport& report, std::ostream& out) {
  out << "topology timings at " << report.dof << " actuated dof (mean us, "
      << "published reference in brackets, advisory only)\n";
  char buf[160];
  for (const auto& t : report.timings) {
    const double ref = published_us(t.topology, t.algorithm);
    char ref_text[32];
    if (ref > 0.0) {
      std::snprintf(ref_text, sizeof ref_text, "[%.0f]", ref);
    } else {
      std::snprintf(ref_text, sizeof ref_text, "[n/a]");
    }
    std::snprintf(buf, sizeof buf, "%-12s %-12s mean %9.2f  median %9.2f  %s\n",
                  std::string(to_string(t.topology)).c_str(),
                  std::string(to_string(t.algorithm)).c_str(), t.stats.mean,
                  t.stats.median, ref_text);
    out << buf;
  }
  if (report.attempts > 1) out << "ordering re-measured once\n";
  for (const auto& v : report.violations) out << "ordering violated: " << v << '\n';
  out << (report.passed() ? "ordering holds\n" : "ordering FAILED\n");
}

}  // namespace dynkit
