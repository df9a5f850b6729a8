#include "geocluster/cli.hpp"

#include <glob.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "geocluster/instance_io.hpp"
#include "geocluster/instances.hpp"
#include "geocluster/nukc_euclidean.hpp"
#include "geocluster/nukc_general.hpp"
#include "geocluster/oracles.hpp"
#include "geocluster/random.hpp"
#include "geocluster/supplier_solver.hpp"

namespace geocluster {

namespace {

class Unsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { fpt, hs3, gonzalez, oracle };

Algorithm parse_algorithm(const std::string& name) {
  if (name == "fpt") return Algorithm::fpt;
  if (name == "hs3") return Algorithm::hs3;
  if (name == "gonzalez") return Algorithm::gonzalez;
  if (name == "oracle") return Algorithm::oracle;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

struct RunResult {
  SolutionFile solution;
  std::uint64_t branches = 0;
  std::size_t probes = 0;
  double ms = 0.0;
};

SolutionBall point_ball(const Point& p, double radius) {
  return SolutionBall{p.data(), radius};
}

SolutionFile uniform_solution(std::span<const Point> centers, double cost) {
  SolutionFile s;
  s.cost = cost;
  for (const Point& c : centers) s.balls.push_back(point_ball(c, cost));
  return s;
}

SolutionFile nukc_solution(const NUkCSolution& sol, std::span<const double> radii, bool metric) {
  SolutionFile s;
  s.cost = sol.dilation;
  for (const NUkCBall& b : sol.balls) {
    const double radius = sol.dilation * radii[b.radius_index];
    if (metric) {
      s.balls.push_back(SolutionBall{{double(b.center)}, radius});
    } else {
      s.balls.push_back(point_ball(b.point, radius));
    }
  }
  return s;
}

void require_ksupplier_file(const ProblemFile& f, Problem p) {
  if (f.kind != FileKind::ksupplier) {
    throw std::invalid_argument(problem_name(p) + " needs a KSUPPLIER instance file");
  }
}

RunResult run_algorithm(const ProblemFile& file, Problem problem, Algorithm algorithm, double eps,
                        std::uint64_t seed, const SearchLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  SearchOptions options;
  options.limits = limits;
  auto unsupported = [&](const std::string& name) {
    return Unsupported("algorithm " + name + " does not support problem " + problem_name(problem));
  };

  switch (problem) {
    case Problem::ksupplier: {
      require_ksupplier_file(file, problem);
      const KSupplierInstance inst = file.ksupplier();
      if (inst.facilities.size() < inst.k) throw Infeasible("infeasible: fewer facilities than k");
      if (algorithm == Algorithm::fpt) {
        const SolveReport rep = solve_ksupplier(inst, eps, seed, options);
        r.solution = uniform_solution(rep.centers, rep.cost);
        r.branches = rep.stats.branches;
        r.probes = rep.stats.probes;
      } else if (algorithm == Algorithm::hs3) {
        const SolveReport rep = hs_3approx(inst);
        r.solution = uniform_solution(rep.centers, rep.cost);
      } else if (algorithm == Algorithm::oracle) {
        const OracleResult o = brute_ksupplier(inst);
        r.solution = uniform_solution(o.centers, o.cost);
      } else {
        throw unsupported("gonzalez");
      }
      break;
    }
    case Problem::kcenter: {
      require_ksupplier_file(file, problem);
      const auto& clients = file.clients;
      if (algorithm == Algorithm::fpt) {
        const SolveReport rep = solve_kcenter(clients, file.k, eps, seed, options);
        r.solution = uniform_solution(rep.centers, rep.cost);
        r.branches = rep.stats.branches;
        r.probes = rep.stats.probes;
      } else if (algorithm == Algorithm::gonzalez) {
        const SolveReport rep = gonzalez_2approx(clients, file.k, seed);
        r.solution = uniform_solution(rep.centers, rep.cost);
      } else if (algorithm == Algorithm::hs3) {
        const std::size_t k = std::min(file.k, clients.size());
        const SolveReport rep = hs_3approx(KSupplierInstance{clients, clients, k});
        r.solution = uniform_solution(rep.centers, rep.cost);
      } else {
        const OracleResult o = brute_kcenter_continuous(clients, file.k);
        r.solution = uniform_solution(o.centers, o.cost);
      }
      break;
    }
    case Problem::nukc_general: {
      if (file.kind == FileKind::ksupplier) {
        throw std::invalid_argument("nukc-general needs a NUKC or NUKC-METRIC instance file");
      }
      const NUkCInstance inst = file.nukc();
      const bool metric = file.kind == FileKind::nukc_metric;
      if (algorithm == Algorithm::fpt) {
        const NUkCSolution sol = solve_nukc_general(inst, limits);
        r.solution = nukc_solution(sol, inst.radii, metric);
        r.branches = sol.branches;
      } else if (algorithm == Algorithm::oracle) {
        const NUkCOracleResult o = brute_nukc(inst);
        r.solution = nukc_solution(o.solution, inst.radii, metric);
      } else {
        throw unsupported(algorithm == Algorithm::hs3 ? "hs3" : "gonzalez");
      }
      break;
    }
    case Problem::nukc_euclid: {
      if (file.kind != FileKind::nukc) {
        throw std::invalid_argument("nukc-euclid needs a Euclidean NUKC instance file");
      }
      if (algorithm == Algorithm::fpt) {
        const EuclidNUkCResult res =
            solve_nukc_euclidean(file.clients, file.radii, file.counts, eps, seed, limits);
        r.solution = nukc_solution(res.solution, file.radii, false);
        r.branches = res.solution.branches;
        r.probes = res.probes;
      } else if (algorithm == Algorithm::oracle) {
        const NUkCOracleResult o = brute_nukc_euclidean(file.clients, file.radii, file.counts);
        r.solution = nukc_solution(o.solution, file.radii, false);
      } else {
        throw unsupported(algorithm == Algorithm::hs3 ? "hs3" : "gonzalez");
      }
      break;
    }
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const VerifyResult check = verify_solution(file, r.solution, problem);
  if (!check.ok) throw Infeasible("self-check failed: " + check.message);
  return r;
}

const char* kCsvHeader = "instance,algorithm,epsilon,k,d,n,cost,opt,ratio,ms,branches,seed";

std::string instance_id(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::size_t file_n(const ProblemFile& f) {
  return f.kind == FileKind::nukc_metric ? f.dim : f.clients.size();
}

std::string csv_row(const std::string& id, const std::string& algorithm, double eps,
                    const ProblemFile& f, double cost, std::optional<double> opt,
                    std::optional<double> ms, std::uint64_t branches, std::uint64_t seed) {
  std::ostringstream row;
  row << id << ',' << algorithm << ',' << format_double(eps) << ',' << f.k << ','
      << (f.kind == FileKind::nukc_metric ? 0 : f.dim) << ',' << file_n(f) << ','
      << format_double(cost) << ',';
  if (opt) {
    row << format_double(*opt);
    const double ratio = *opt > 0.0 ? cost / *opt : (cost == 0.0 ? 1.0 : HUGE_VAL);
    row << ',' << format_double(ratio);
  } else {
    row << ',';
  }
  row << ',';
  if (ms) row << format_double(*ms);
  row << ',' << branches << ',' << seed;
  return row.str();
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const BudgetExceeded& e) {
    err << "aborted: " << e.what() << " after " << e.branches() << " branches\n";
    return kExitBudget;
  } catch (const Infeasible& e) {
    err << e.what() << '\n';
    return kExitInfeasible;
  } catch (const GuardExceeded& e) {
    err << "oracle guard exceeded: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitInfeasible;
  }
}

struct SolveArgs {
  std::string problem, input, algorithm = "fpt", output = "text";
  double epsilon = 0.2;
  std::uint64_t seed = 0;
  std::uint64_t max_branches = 0;
  std::int64_t timeout_ms = 0;
  bool timing = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = parse_problem(a.problem);
    const Algorithm algorithm = parse_algorithm(a.algorithm);
    const ProblemFile file = read_problem_file(a.input);
    const RunResult r =
        run_algorithm(file, problem, algorithm, a.epsilon, a.seed, {a.max_branches, a.timeout_ms});
    const bool nukc = problem == Problem::nukc_general || problem == Problem::nukc_euclid;
    if (a.output == "csv") {
      out << kCsvHeader << '\n'
          << csv_row(instance_id(a.input), a.algorithm, a.epsilon, file, r.solution.cost,
                     std::nullopt, a.timing ? std::optional<double>(r.ms) : std::nullopt,
                     r.branches, a.seed)
          << '\n';
      return int(kExitOk);
    }
    std::vector<std::string> comments{
        "problem " + a.problem + " algorithm " + a.algorithm + " epsilon " +
            format_double(a.epsilon) + " seed " + std::to_string(a.seed),
        std::string(nukc ? "dilation " : "cost ") + format_double(r.solution.cost),
        "balls " + std::to_string(r.solution.balls.size()) + " probes " +
            std::to_string(r.probes) + " branches " + std::to_string(r.branches)};
    if (a.timing) comments.push_back("ms " + format_double(r.ms));
    write_solution(out, r.solution, comments);
    return int(kExitOk);
  });
}

struct GenerateArgs {
  std::string family, graph, out, radii, counts;
  std::size_t n = 20, d = 2, k = 2, facilities = 0, jl_resamples = 20;
  std::optional<std::size_t> jl_dim;
  std::uint64_t seed = 0;
  GeneratorParams params;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) {
      throw std::invalid_argument("bad list entry '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemFile f;
    std::vector<std::string> comments;
    std::string header = "family " + a.family + " seed " + std::to_string(a.seed);
    if (a.family == "vc-gadget") {
      if (a.graph.empty()) throw std::invalid_argument("vc-gadget needs --graph");
      const Graph g = read_edge_list_file(a.graph);
      const KSupplierInstance inst = vc_gadget(g, a.k);
      f = ksupplier_file(inst, false);
      header += " vertices " + std::to_string(g.n) + " edges " + std::to_string(g.edges.size());
    } else {
      const Family family = parse_family(a.family);
      const GeneratedPoints pts = gen_random(family, a.n, a.d, a.k, a.seed, a.params);
      f.kind = FileKind::ksupplier;
      f.dim = a.d;
      f.k = a.k;
      f.clients = pts.points;
      f.facilities_same = a.facilities == 0;
      if (!f.facilities_same) {
        f.facilities = gen_random(family, a.facilities, a.d, a.k, mix_seed(a.seed, 1), a.params).points;
      }
      header += " n " + std::to_string(a.n) + " d " + std::to_string(a.d) + " k " +
                std::to_string(a.k);
      if (pts.planted_cost) comments.push_back("planted-cost " + format_double(*pts.planted_cost));
    }
    comments.insert(comments.begin(), header);
    if (!a.radii.empty() || !a.counts.empty()) {
      f.kind = FileKind::nukc;
      f.radii = parse_list(a.radii);
      for (double c : parse_list(a.counts)) {
        if (c < 1 || c != std::floor(c)) throw std::invalid_argument("counts must be positive integers");
        f.counts.push_back(static_cast<std::size_t>(c));
      }
      validate_radii(f.radii, f.counts);
      std::size_t sum = 0;
      for (std::size_t c : f.counts) sum += c;
      if (sum != f.k) throw std::invalid_argument("counts must sum to k");
    }
    if (a.jl_dim) {
      std::vector<Point> all = f.clients;
      all.insert(all.end(), f.facilities.begin(), f.facilities.end());
      const JLResult jl = jl_project(all, *a.jl_dim, mix_seed(a.seed, 2), a.jl_resamples);
      f.dim = *a.jl_dim;
      f.clients.assign(jl.points.begin(), jl.points.begin() + f.clients.size());
      f.facilities.assign(jl.points.begin() + f.clients.size(), jl.points.end());
      comments.push_back("jl target " + std::to_string(jl.report.target_dim) + " min-ratio " +
                         format_double(jl.report.min_ratio) + " max-ratio " +
                         format_double(jl.report.max_ratio) + " accepted " +
                         (jl.report.accepted ? "yes" : "no") + " resamples " +
                         std::to_string(jl.report.resamples));
    }
    if (a.out.empty()) {
      write_problem(out, f, comments);
    } else {
      write_problem_file(a.out, f, comments);
    }
    return int(kExitOk);
  });
}

struct VerifyArgs {
  std::string input, solution, problem;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile file = read_problem_file(a.input);
    const SolutionFile sol = read_solution_file(a.solution);
    Problem problem = file.kind == FileKind::ksupplier ? Problem::ksupplier : Problem::nukc_general;
    if (!a.problem.empty()) problem = parse_problem(a.problem);
    const VerifyResult v = verify_solution(file, sol, problem);
    if (!v.ok) {
      out << "mismatch: " << v.message << '\n';
      return int(kExitInfeasible);
    }
    out << "ok " << format_double(v.recomputed) << '\n';
    return int(kExitOk);
  });
}

struct BenchArgs {
  std::vector<std::string> patterns;
  std::string problem = "kcenter", out;
  std::vector<std::string> algorithms{"fpt"};
  std::vector<double> epsilons{0.2};
  std::uint64_t seed = 0;
  bool no_oracle = false;
  std::uint64_t max_branches = 0;
  std::int64_t timeout_ms = 0;
};

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> paths;
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw std::invalid_argument("cannot expand '" + pattern + "'");
  return paths;
}

std::optional<double> oracle_value(const ProblemFile& f, Problem problem) {
  try {
    switch (problem) {
      case Problem::ksupplier: return brute_ksupplier(f.ksupplier()).cost;
      case Problem::kcenter: return brute_kcenter_continuous(f.clients, f.k).cost;
      case Problem::nukc_general: return brute_nukc(f.nukc()).dilation;
      case Problem::nukc_euclid: return brute_nukc_euclidean(f.clients, f.radii, f.counts).dilation;
    }
  } catch (const GuardExceeded&) {
  }
  return std::nullopt;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = parse_problem(a.problem);
    std::vector<std::string> paths;
    for (const std::string& p : a.patterns) {
      auto matched = expand_glob(p);
      paths.insert(paths.end(), matched.begin(), matched.end());
    }
    std::sort(paths.begin(), paths.end());
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
    if (paths.empty()) throw std::invalid_argument("no instance files matched");
    std::vector<Algorithm> algorithms;
    for (const std::string& name : a.algorithms) algorithms.push_back(parse_algorithm(name));

    std::ostringstream table;
    table << kCsvHeader << '\n';
    for (const std::string& path : paths) {
      const ProblemFile file = read_problem_file(path);
      const std::optional<double> opt = a.no_oracle ? std::nullopt : oracle_value(file, problem);
      for (std::size_t i = 0; i < algorithms.size(); ++i) {
        for (double eps : a.epsilons) {
          const RunResult r = run_algorithm(file, problem, algorithms[i], eps, a.seed,
                                            {a.max_branches, a.timeout_ms});
          table << csv_row(instance_id(path), a.algorithms[i], eps, file, r.solution.cost, opt,
                           r.ms, r.branches, a.seed)
                << '\n';
        }
      }
    }
    if (a.out.empty()) {
      out << table.str();
    } else {
      std::ofstream f(a.out);
      if (!f) throw std::invalid_argument("cannot write " + a.out);
      f << table.str();
    }
    return int(kExitOk);
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clustering solvers for k-center, k-supplier and non-uniform k-center"};
  app.name("geocluster");
  app.require_subcommand(1);

  const std::vector<std::string> problems{"ksupplier", "kcenter", "nukc-general", "nukc-euclid"};
  const std::vector<std::string> algorithms{"fpt", "hs3", "gonzalez", "oracle"};

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance file");
  s->add_option("--problem", solve.problem, "Problem type")->required()->check(CLI::IsMember(problems));
  s->add_option("--input", solve.input, "Instance file")->required();
  s->add_option("--epsilon", solve.epsilon, "Approximation parameter in (0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  s->add_option("--seed", solve.seed, "Random seed");
  s->add_option("--algorithm", solve.algorithm, "Algorithm")->check(CLI::IsMember(algorithms));
  s->add_option("--output", solve.output, "Output format")->check(CLI::IsMember({"text", "csv"}));
  s->add_option("--max-branches", solve.max_branches, "Abort after this many branches (0 = no limit)");
  s->add_option("--timeout-ms", solve.timeout_ms, "Abort after this many milliseconds (0 = no limit)");
  s->add_flag("--timing", solve.timing, "Report wall time");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a generated instance file");
  g->add_option("--family", gen.family, "uniform-box, gaussian-clusters, grid or vc-gadget")
      ->required()
      ->check(CLI::IsMember({"uniform-box", "gaussian-clusters", "grid", "vc-gadget"}));
  g->add_option("--n", gen.n, "Number of clients");
  g->add_option("--d", gen.d, "Dimension");
  g->add_option("--k", gen.k, "Number of centres");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--facilities", gen.facilities, "Separate facility count (0 = same as clients)");
  g->add_option("--box", gen.params.box, "uniform-box side length");
  g->add_option("--spread", gen.params.spread, "gaussian-clusters standard deviation");
  g->add_option("--separation", gen.params.separation, "Distance between planted centres");
  g->add_option("--graph", gen.graph, "Edge-list file for vc-gadget");
  g->add_option("--radii", gen.radii, "Comma-separated radii (writes a NUKC file)");
  g->add_option("--counts", gen.counts, "Comma-separated counts per radius");
  g->add_option("--jl-dim", gen.jl_dim, "Project all points to this dimension");
  g->add_option("--jl-resamples", gen.jl_resamples, "Projection redraws before giving up");
  g->add_option("--out", gen.out, "Output path (default: standard output)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check a solution file against an instance");
  v->add_option("--input", ver.input, "Instance file")->required();
  v->add_option("--solution", ver.solution, "Solution file")->required();
  v->add_option("--problem", ver.problem, "Problem type (default from the instance header)")
      ->check(CLI::IsMember(problems));

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run algorithms over instance files and print CSV");
  b->add_option("--instances", bench.patterns, "Instance glob pattern(s)")->required();
  b->add_option("--problem", bench.problem, "Problem type")->check(CLI::IsMember(problems));
  b->add_option("--algorithms", bench.algorithms, "Comma-separated algorithms")
      ->delimiter(',')
      ->check(CLI::IsMember(algorithms));
  b->add_option("--epsilons", bench.epsilons, "Comma-separated epsilons")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  b->add_option("--seed", bench.seed, "Random seed");
  b->add_flag("--no-oracle", bench.no_oracle, "Leave the opt column empty");
  b->add_option("--max-branches", bench.max_branches, "Per-run branch limit");
  b->add_option("--timeout-ms", bench.timeout_ms, "Per-run time limit");
  b->add_option("--out", bench.out, "Output path (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  if (*s) return cmd_solve(solve, out, err);
  if (*g) return cmd_generate(gen, out, err);
  if (*v) return cmd_verify(ver, out, err);
  return cmd_bench(bench, out, err);
}

}  // namespace geocluster
