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

#include "dynkit/harness/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dynkit/dynamics.hpp"
#include "dynkit/generators.hpp"
#include "dynkit/harness/bench.hpp"
#include "dynkit/harness/verify.hpp"
#include "dynkit/model_io.hpp"

namespace dynkit {
namespace {

using Json = nlohmann::json;

// Raised for bad flag values found after CLI11 has accepted the syntax.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  std::string topology;
  int dof = 0;
  std::string q;
  std::string qd;
  std::string qdd;
  std::uint64_t seed = 1;
  int trials = 100;
  std::string out;
  std::string format = "text";
  std::string factorization = "niemeyer_slotine";
  bool no_gravity = false;
  std::string sizes = "8,16,32,64";
  std::string algorithms = "coriolis,christoffel";
  std::string plot;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(item);
  if (!text.empty() && text.back() == ',') items.emplace_back();
  return items;
}

Eigen::VectorXd parse_vector(const std::string& flag, const std::string& text,
                             int n) {
  const auto items = split_csv(text);
  if (static_cast<int>(items.size()) != n) {
    throw UsageError(flag + " needs " + std::to_string(n) +
                     " comma-separated values, got " +
                     std::to_string(items.size()));
  }
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    const std::string& s = items[i];
    char* end = nullptr;
    v[i] = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v[i])) {
      throw UsageError(flag + ": not a finite number: '" + s + "'");
    }
  }
  return v;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  for (const auto& s : split_csv(text)) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || v < 1 || v > 100000) {
      throw UsageError("--sizes: not a positive integer: '" + s + "'");
    }
    sizes.push_back(static_cast<int>(v));
  }
  return sizes;
}

Topology topology_or_throw(const std::string& name) {
  const auto t = parse_topology(name);
  if (!t) {
    throw UsageError("unknown topology '" + name +
                     "' (serial, binary_tree, biped, quadruped)");
  }
  return *t;
}

// --model PATH or --topology NAME --dof N, exactly one of the two.
KinematicTree resolve_model(const Options& o) {
  if (!o.model.empty()) {
    if (!o.topology.empty()) {
      throw UsageError("--model and --topology are mutually exclusive");
    }
    try {
      return load_model_file(o.model);
    } catch (const std::exception& e) {
      throw UsageError(o.model + ": " + e.what());
    }
  }
  if (o.topology.empty() || o.dof < 1) {
    throw UsageError("give --model PATH or --topology NAME --dof N");
  }
  try {
    return gen_topology(topology_or_throw(o.topology), o.dof,
                        {.seed = o.seed});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Flags not given are drawn from random_state(tree, seed).
GeneralizedState resolve_state(const KinematicTree& tree, const Options& o) {
  GeneralizedState s = random_state(tree, o.seed);
  const int n = tree.size();
  if (!o.q.empty()) s.q = parse_vector("--q", o.q, n);
  if (!o.qd.empty()) s.qd = parse_vector("--qd", o.qd, n);
  if (!o.qdd.empty()) s.qdd = parse_vector("--qdd", o.qdd, n);
  if (!s.qdd) s.qdd = Eigen::VectorXd::Zero(n);
  return s;
}

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // no "-0"
  return buf;
}

void write_matrix(const Eigen::MatrixXd& m, char sep, std::ostream& out) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c > 0) out << sep;
      out << number(m(r, c));
    }
    out << '\n';
  }
}

Json json_matrix(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c) + 0.0);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json json_vector(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i] + 0.0);
  return a;
}

// Sends output to --out when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit_matrix(const Options& o, const char* key, const Eigen::MatrixXd& m,
                 const Json& extra, std::ostream& out) {
  Sink sink(o.out, out);
  if (o.format == "json") {
    Json doc = extra;
    doc[key] = json_matrix(m);
    sink.stream() << doc.dump(2) << '\n';
  } else {
    write_matrix(m, o.format == "csv" ? ',' : ' ', sink.stream());
  }
}

int cmd_coriolis(const Options& o, std::ostream& out) {
  const KinematicTree tree = resolve_model(o);
  const GeneralizedState s = resolve_state(tree, o);
  const auto kind = parse_factorization(o.factorization);
  if (!kind) throw UsageError("unknown factorization '" + o.factorization + "'");
  const DynamicsOutput d = coriolis_algo1(tree, s, *kind);
  Json extra = {{"factorization", std::string(to_string(*kind))},
                {"q", json_vector(s.q)},
                {"qd", json_vector(s.qd)},
                {"mass", json_matrix(d.mass_matrix())},
                {"mass_dot", json_matrix(d.mass_matrix_dot())}};
  emit_matrix(o, "coriolis", d.coriolis(), extra, out);
  return kExitOk;
}

int cmd_mass(const Options& o, std::ostream& out) {
  const KinematicTree tree = resolve_model(o);
  const GeneralizedState s = resolve_state(tree, o);
  emit_matrix(o, "mass", mass_matrix_crba(tree, s.q),
              {{"q", json_vector(s.q)}}, out);
  return kExitOk;
}

int cmd_rnea(const Options& o, std::ostream& out) {
  const KinematicTree tree = resolve_model(o);
  const GeneralizedState s = resolve_state(tree, o);
  const Eigen::VectorXd tau = rnea(tree, s, !o.no_gravity);
  Sink sink(o.out, out);
  if (o.format == "json") {
    Json doc = {{"q", json_vector(s.q)},
                {"qd", json_vector(s.qd)},
                {"qdd", json_vector(*s.qdd)},
                {"gravity", !o.no_gravity},
                {"tau", json_vector(tau)}};
    sink.stream() << doc.dump(2) << '\n';
  } else {
    write_matrix(tau, ' ', sink.stream());
  }
  return kExitOk;
}

int cmd_christoffel(const Options& o, std::ostream& out) {
  const KinematicTree tree = resolve_model(o);
  const GeneralizedState s = resolve_state(tree, o);
  const ChristoffelTensor gamma = christoffel_algo2(tree, s.q);
  const int n = tree.size();
  Sink sink(o.out, out);
  std::ostream& os = sink.stream();
  if (o.format == "json") {
    Json slices = Json::array();
    for (int i = 0; i < n; ++i) {
      Eigen::MatrixXd slice(n, n);
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) slice(j, k) = gamma(i, j, k);
      }
      slices.push_back(json_matrix(slice));
    }
    Json doc = {{"q", json_vector(s.q)}, {"christoffel", std::move(slices)}};
    os << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    os << "i,j,k,gamma\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          os << i << ',' << j << ',' << k << ',' << number(gamma(i, j, k))
             << '\n';
        }
      }
    }
  } else {
    // Slice i holds Gamma_ijk over (j, k); slices separated by blank lines.
    for (int i = 0; i < n; ++i) {
      if (i > 0) os << '\n';
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          if (k > 0) os << ' ';
          os << number(gamma(i, j, k));
        }
        os << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifySpec spec;
  spec.trials = o.trials;
  spec.seed = o.seed;
  if (!o.model.empty()) {
    spec.model = resolve_model(o);
  } else {
    if (!o.topology.empty()) spec.topology = topology_or_throw(o.topology);
    if (o.dof > 0) spec.dof = o.dof;
  }
  VerifyReport report;
  try {
    report = run_verify(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Sink sink(o.out, out);
  if (o.format == "json") {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name},
                        {"gate", c.gate},
                        {"max_residual", c.max_residual},
                        {"worst_seed", c.worst_seed},
                        {"passed", c.passed()}});
    }
    Json doc = {{"model", report.model_name},
                {"dof", report.dof},
                {"trials", report.trials},
                {"passed", report.passed()},
                {"checks", std::move(checks)}};
    sink.stream() << doc.dump(2) << '\n';
  } else {
    print_verify_report(report, sink.stream());
  }
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_bench(const Options& o, std::ostream& out) {
  BenchSpec spec;
  if (!o.topology.empty()) spec.topology = topology_or_throw(o.topology);
  spec.sizes = parse_sizes(o.sizes);
  spec.trials = o.trials;
  spec.seed = o.seed;
  spec.algorithms.clear();
  for (const auto& name : split_csv(o.algorithms)) {
    const auto a = parse_algorithm(name);
    if (!a) throw UsageError("unknown algorithm '" + name + "'");
    spec.algorithms.push_back(*a);
  }
  BenchResult result;
  try {
    result = run_bench(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  {
    Sink csv(o.out, out);
    write_bench_csv(result, csv.stream());
  }
  std::string plot = o.plot;
  if (plot.empty() && !o.out.empty()) plot = o.out + ".plot";
  if (!plot.empty()) {
    Sink sink(plot, out);
    write_plot_data(result, sink.stream());
  }
  print_fits(result, out);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const CompareReport report =
      compare_topologies(o.dof > 0 ? o.dof : 20, o.trials, o.seed);
  Sink sink(o.out, out);
  print_compare_report(report, sink.stream());
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (!o.model.empty()) throw UsageError("gen takes --topology, not --model");
  const KinematicTree tree = resolve_model(o);
  Sink sink(o.out, out);
  sink.stream() << save_model(tree);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Coriolis matrix and Christoffel symbol dynamics for "
               "kinematic trees",
               "dynkit"};
  app.require_subcommand(1);
  Options o;

  using Handler = std::function<int(const Options&, std::ostream&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler handler) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--model", o.model, "model file");
    sub->add_option("--topology", o.topology,
                    "serial | binary_tree | biped | quadruped");
    sub->add_option("--dof", o.dof, "degrees of freedom of the generated tree")
        ->check(CLI::PositiveNumber);
    sub->add_option("--q", o.q, "joint positions, comma separated");
    sub->add_option("--qd", o.qd, "joint velocities, comma separated");
    sub->add_option("--qdd", o.qdd, "joint accelerations, comma separated");
    sub->add_option("--seed", o.seed, "model and state seed");
    sub->add_option("--trials", o.trials, "random trials")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output file instead of stdout");
    sub->add_option("--format", o.format, "text | csv | json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    commands.emplace_back(sub, std::move(handler));
    return sub;
  };

  add("coriolis", "Coriolis matrix by the recursive O(Nd) algorithm",
      cmd_coriolis)
      ->add_option("--factorization", o.factorization,
                   "niemeyer_slotine | simple");
  add("christoffel", "Christoffel symbols of the first kind, O(Nd^2)",
      cmd_christoffel);
  add("mass", "mass matrix by CRBA", cmd_mass);
  add("rnea", "inverse dynamics torques", cmd_rnea)
      ->add_flag("--no-gravity", o.no_gravity, "drop the gravity term");
  add("verify", "randomized identity suite", cmd_verify);
  CLI::App* bench = add("bench", "timing and scaling fits", cmd_bench);
  bench->add_option("--sizes", o.sizes, "increasing DoF list");
  bench->add_option("--algorithms", o.algorithms,
                    "subset of coriolis,christoffel,crba,rnea");
  bench->add_option("--plot", o.plot,
                    "plot-data file (default: <out>.plot when --out is set)");
  add("compare", "topology timing ordering at equal DoF", cmd_compare);
  add("gen", "emit a generated model file", cmd_gen);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      return handler(o, out);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitFailure;
    }
  }
  return kExitUsage;
}

}  // namespace dynkit
