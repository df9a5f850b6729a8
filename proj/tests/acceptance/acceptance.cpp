// Acceptance run: one PASS/FAIL line per property, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "geocluster/cli.hpp"
#include "geocluster/filtering.hpp"
#include "geocluster/geometry.hpp"
#include "geocluster/instance_io.hpp"
#include "geocluster/instances.hpp"
#include "geocluster/nukc_euclidean.hpp"
#include "geocluster/nukc_general.hpp"
#include "geocluster/oracles.hpp"
#include "geocluster/separator.hpp"
#include "geocluster/supplier_solver.hpp"
#include "reference.hpp"

using namespace geocluster;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Shared corpora so the baseline and probe checks run on exactly the same inputs.
std::vector<KSupplierInstance> supplier_corpus() {
  std::vector<KSupplierInstance> out;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(mix_seed(1000, s));
    const std::size_t n = 5 + rng.below(26);
    const std::size_t m = 3 + rng.below(18);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, m));
    const double side = rng.uniform(1, 10);
    out.push_back({ref::random_points(rng, n, 2, 0, side), ref::random_points(rng, m, 2, 0, side),
                   k});
  }
  return out;
}

struct CenterCase {
  std::vector<Point> clients;
  std::size_t k;
};

std::vector<CenterCase> center_corpus() {
  std::vector<CenterCase> out;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(mix_seed(2000, s));
    const std::size_t n = 2 + rng.below(11);
    const std::size_t k = 1 + rng.below(3);
    out.push_back({ref::random_points(rng, n, 2, 0, rng.uniform(1, 5)), k});
  }
  return out;
}

std::vector<SolveReport> supplier_runs, center_runs;

void check_ksupplier(const std::vector<KSupplierInstance>& corpus) {
  const auto t0 = Clock::now();
  int bad = 0;
  double worst = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const SolveReport r = solve_ksupplier(corpus[i], 0.2, i);
    const double opt = brute_ksupplier(corpus[i]).cost;
    const double ratio = opt > 0 ? r.cost / opt : (r.cost == 0 ? 1.0 : INFINITY);
    worst = std::max(worst, ratio);
    if (r.cost > (1.2 + 1e-7) * opt) ++bad;
    supplier_runs.push_back(r);
  }
  const double secs = seconds_since(t0);
  report(1, "k-supplier within 1.2 of the exhaustive optimum", bad == 0 && secs < 300,
         fmt("%zu instances, %d violations, worst ratio %.4f, %.1f s", corpus.size(), bad, worst,
             secs));
}

void check_kcenter(const std::vector<CenterCase>& corpus) {
  int bad = 0;
  double worst = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const SolveReport r = solve_kcenter(corpus[i].clients, corpus[i].k, 0.2, i);
    const double opt = brute_kcenter_continuous(corpus[i].clients, corpus[i].k).cost;
    if (opt > 0) worst = std::max(worst, r.cost / opt);
    if (r.cost > 1.2 * opt + 1e-12) ++bad;
    center_runs.push_back(r);
  }
  const std::vector<Point> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const double square_opt = brute_kcenter_continuous(square, 2).cost;
  const SolveReport sq = solve_kcenter(square, 2, 0.2, 0);
  center_runs.push_back(sq);
  const bool square_ok = square_opt == 0.5 && sq.cost <= 0.6;
  report(2, "k-center within 1.2 of the continuous optimum", bad == 0 && square_ok,
         fmt("%zu instances, %d violations, worst ratio %.4f; unit square opt %.17g cost %.6f",
             corpus.size(), bad, worst, square_opt, sq.cost));
}

void check_baselines(const std::vector<KSupplierInstance>& sup,
                     const std::vector<CenterCase>& cen) {
  int bad_hs = 0, bad_gz = 0;
  double worst_hs = 0, worst_gz = 0;
  for (const auto& inst : sup) {
    const double opt = brute_ksupplier(inst).cost;
    const double c = hs_3approx(inst).cost;
    if (opt > 0) worst_hs = std::max(worst_hs, c / opt);
    if (c > 3 * opt + 1e-9) ++bad_hs;
  }
  for (std::size_t i = 0; i < cen.size(); ++i) {
    const double opt = brute_kcenter_continuous(cen[i].clients, cen[i].k).cost;
    const double c = gonzalez_2approx(cen[i].clients, cen[i].k, i).cost;
    if (opt > 0) worst_gz = std::max(worst_gz, c / opt);
    if (c > 2 * opt + 1e-9) ++bad_gz;
  }
  report(3, "baseline factors", bad_hs == 0 && bad_gz == 0,
         fmt("hs3 %d violations (worst %.4f), gonzalez %d violations (worst %.4f)", bad_hs,
             worst_hs, bad_gz, worst_gz));
}

void check_probes() {
  int bad = 0;
  std::size_t most = 0, runs = 0;
  auto visit = [&](const SolveReport& r, double eps) {
    ++runs;
    most = std::max(most, r.stats.probes);
    if (r.stats.probes > probe_budget(eps)) ++bad;
  };
  for (const auto& r : supplier_runs) visit(r, 0.2);
  for (const auto& r : center_runs) visit(r, 0.2);
  // A sweep of eps on a fixed instance.
  Rng rng(77);
  KSupplierInstance inst{ref::random_points(rng, 20, 2), ref::random_points(rng, 12, 2), 2};
  for (double eps : {1.0, 0.5, 0.3, 0.1, 0.05}) visit(solve_ksupplier(inst, eps, 1), eps);
  report(4, "probe count within ceil(log2(3/eps)) + 1", bad == 0,
         fmt("%zu solves, %d over budget, most probes %zu (budget at eps 0.2 is %zu)", runs, bad,
             most, probe_budget(0.2)));
}

void check_separator() {
  int bad = 0;
  std::vector<double> ratios;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(mix_seed(5000, s));
    const std::size_t d = 1 + s % 3;
    const std::size_t n = 2 + rng.below(99);
    auto pts = ref::random_points(rng, n, d, 0, 10);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    try {
      const SeparatorResult r = voronoi_separator(pts, s);
      std::vector<Point> x1, x2;
      for (std::size_t i : r.x1) x1.push_back(pts[i]);
      for (std::size_t i : r.x2) x2.push_back(pts[i]);
      const std::size_t bound = balance_bound(pts.size(), d);
      const bool ok = crossing_check(r.z, x1, x2) && x1.size() <= bound && x2.size() <= bound &&
                      x1.size() + x2.size() == pts.size();
      if (!ok) ++bad;
      ratios.push_back(r.size_ratio);
    } catch (const std::exception&) {
      ++bad;
    }
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios.empty() ? 0 : ratios[ratios.size() / 2];
  report(5, "separator crossing and balance", bad == 0,
         fmt("200 point sets, %d violations, median |Z|/n^(1-1/d) = %.2f (soft target 64)", bad,
             median));
}

DistanceMatrix random_graph_metric(Rng& rng, std::size_t n) {
  const double inf = 1e18;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = rng.below(i);
    d[i][j] = d[j][i] = rng.uniform(1, 10);
  }
  for (std::size_t e = 0; e < n; ++e) {
    const std::size_t i = rng.below(n), j = rng.below(n);
    if (i != j) d[i][j] = d[j][i] = std::min(d[i][j], rng.uniform(1, 10));
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
  return DistanceMatrix(d);
}

void check_nukc_general() {
  int bad = 0;
  double worst_same = 0, worst_split = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(mix_seed(6000, s));
    const std::size_t t = 1 + rng.below(2);
    std::vector<std::size_t> counts(t, 1);
    const std::size_t k = t + rng.below(4 - t);
    for (std::size_t extra = t; extra < k; ++extra) ++counts[rng.below(t)];
    std::vector<double> radii{rng.uniform(1, 3)};
    if (t == 2) radii.push_back(radii[0] * rng.uniform(0.1, 0.9));
    const std::size_t n = 2 + rng.below(11);
    NUkCInstance inst;
    if (s % 5 == 4) {
      inst = NUkCInstance::from_matrix(random_graph_metric(rng, n), radii, counts);
    } else if (s % 2 == 0) {
      inst = NUkCInstance::euclidean(ref::random_points(rng, n, 2, 0, 5), {}, radii, counts);
    } else {
      inst = NUkCInstance::euclidean(ref::random_points(rng, n, 2, 0, 5),
                                     ref::random_points(rng, 2 + rng.below(9), 2, 0, 5), radii,
                                     counts);
    }
    const double opt = brute_nukc(inst).dilation;
    const double got = solve_nukc_general(inst).dilation;
    const double factor = inst.cf_equal ? 2.0 : 3.0;
    if (got > factor * opt + 1e-9) ++bad;
    if (opt > 0) {
      double& w = inst.cf_equal ? worst_same : worst_split;
      w = std::max(w, got / opt);
    }
  }
  const NUkCInstance line = NUkCInstance::from_matrix(
      DistanceMatrix({{0, 4, 10}, {4, 0, 6}, {10, 6, 0}}), {3, 1}, {1, 1});
  const double line_opt = brute_nukc(line).dilation;
  const double line_got = solve_nukc_general(line).dilation;
  const bool line_ok = std::abs(line_opt - 4.0 / 3.0) < 1e-12 && line_got <= 8.0 / 3.0 + 1e-12;
  report(6, "non-uniform k-center, general metric", bad == 0 && line_ok,
         fmt("50 instances, %d violations, worst ratio %.4f (C=F) %.4f (C!=F); line example "
             "%.6f vs oracle %.6f",
             bad, worst_same, worst_split, line_got, line_opt));
}

void check_nukc_euclidean() {
  const double eps = 0.25;
  int bad = 0;
  double worst = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(mix_seed(7000, s));
    const std::size_t t = 1 + rng.below(2);
    std::vector<std::size_t> counts(t, 1);
    const std::size_t k = t + rng.below(4 - t);
    for (std::size_t extra = t; extra < k; ++extra) ++counts[rng.below(t)];
    std::vector<double> radii{1.0};
    if (t == 2) radii.push_back(rng.uniform(0.2, 0.9));
    const auto pts = ref::random_points(rng, 1 + rng.below(10), 2, 0, 4);
    const double opt = brute_nukc_euclidean(pts, radii, counts).dilation;
    const double got = solve_nukc_euclidean(pts, radii, counts, eps, s).solution.dilation;
    if (got > (1 + eps) * opt + 1e-9) ++bad;
    if (opt > 0) worst = std::max(worst, got / opt);
  }

  // Planted clusters: points sampled in balls of the hypothesised radii.
  int trace_bad = 0;
  std::size_t steps = 0, largest = 0;
  const std::size_t cap = coreset_capacity(eps);
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(mix_seed(7500, s));
    const std::size_t k = 1 + rng.below(3);
    std::vector<double> rho;
    std::vector<Point> pts;
    for (std::size_t j = 0; j < k; ++j) {
      rho.push_back(rng.uniform(0.5, 2.0));
      const Point c{20.0 * double(j), rng.uniform(-1, 1)};
      for (std::size_t i = 0; i < 30; ++i) {
        const double a = rng.uniform(0, 2 * M_PI), r = rho[j] * std::sqrt(rng.uniform());
        pts.push_back(Point{c[0] + r * std::cos(a), c[1] + r * std::sin(a)});
      }
    }
    const auto cover = nukc_euclid_decision(pts, rho, eps, s);
    if (!cover) {
      ++trace_bad;
      continue;
    }
    for (const CoresetStep& st : cover->state.trace) {
      ++steps;
      largest = std::max(largest, st.slot_size);
      const double j = double(st.slot_size - 1);
      if (st.lambda < 1 - 1 / (1 + j / 2) - 1e-9 || st.slot_size > cap || !st.recurrence_ok)
        ++trace_bad;
    }
  }
  report(7, "non-uniform k-center, Euclidean", bad == 0 && trace_bad == 0,
         fmt("50 instances at eps 0.25, %d violations, worst ratio %.4f; planted traces: %zu "
             "steps, %d violations, largest slot %zu of %zu",
             bad, worst, steps, trace_bad, largest, cap));
}

void check_gadget() {
  const double s3 = std::sqrt(3.0);
  std::size_t graphs = 0, instances = 0;
  int bad = 0;
  std::vector<std::pair<Graph, std::size_t>> jl_cases;
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto classes = ref::graphs_up_to_isomorphism(n);
    for (std::size_t gi = 0; gi < classes.size(); ++gi) {
      const Graph& g = classes[gi];
      if (g.edges.empty()) continue;
      ++graphs;
      const std::size_t vc = min_vertex_cover(g);
      for (std::size_t k = 1; k <= n; ++k) {
        ++instances;
        const double cost = brute_ksupplier(vc_gadget(g, k)).cost;
        const bool ok = vc <= k ? cost == 1.0 : std::abs(cost - s3) <= 1e-9;
        if (!ok) ++bad;
      }
      if (n <= 5 || gi % 97 == 0) jl_cases.emplace_back(g, 0);
    }
  }

  // Random projection of client and facility points together.
  std::size_t projected = 0, rejected = 0;
  int jl_bad = 0;
  double yes_lo = INFINITY, yes_hi = 0, no_lo = INFINITY, no_hi = 0;
  for (std::size_t c = 0; c < jl_cases.size(); ++c) {
    const Graph& g = jl_cases[c].first;
    const std::size_t vc = min_vertex_cover(g);
    const KSupplierInstance base = vc_gadget(g, 1);
    std::vector<Point> all = base.clients;
    all.insert(all.end(), base.facilities.begin(), base.facilities.end());
    const JLResult jl = jl_project(all, 600, c, 20);
    if (!jl.report.accepted) {
      ++rejected;
      continue;
    }
    ++projected;
    const std::size_t nc = base.clients.size();
    KSupplierInstance proj{{jl.points.begin(), jl.points.begin() + long(nc)},
                           {jl.points.begin() + long(nc), jl.points.end()}, 1};
    for (std::size_t k = 1; k <= g.n; ++k) {
      proj.k = k;
      const double cost = brute_ksupplier(proj).cost;
      if (vc <= k) {
        yes_lo = std::min(yes_lo, cost);
        yes_hi = std::max(yes_hi, cost);
        if (cost < 0.9 - 1e-12 || cost > 1.1 + 1e-12) ++jl_bad;
      } else {
        no_lo = std::min(no_lo, cost);
        no_hi = std::max(no_hi, cost);
        if (cost < 0.9 * s3 - 1e-12 || cost > 1.1 * s3 + 1e-12) ++jl_bad;
      }
    }
  }
  const double gap = 0.9 * s3 / 1.1;
  report(8, "vertex-cover gadget gap", bad == 0 && jl_bad == 0 && rejected == 0 && gap > 1.4,
         fmt("%zu graphs up to isomorphism on <= 8 vertices, %zu instances, %d violations; "
             "projected to 600 dims: %zu graphs, %zu never accepted, %d violations, YES costs "
             "[%.4f, %.4f], NO costs [%.4f, %.4f], gap %.4f",
             graphs, instances, bad, projected, rejected, jl_bad, yes_lo, yes_hi, no_lo, no_hi,
             gap));
}

void check_meb() {
  int lb_bad = 0, meb_bad = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(mix_seed(9000, s));
    const std::size_t d = 2 + s % 3;
    const auto t = ref::random_points(rng, 1 + rng.below(10), d);
    std::vector<double> z(d);
    for (double& x : z) x = rng.uniform(0, 3);
    if (!meb_distance_lower_bound_check(t, Point(z))) ++lb_bad;
  }
  double worst = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    Rng rng(mix_seed(9500, s));
    const auto pts = ref::random_points(rng, 1 + rng.below(15), 2, -5, 5);
    const double got = meb(pts).radius;
    const double want = ref::meb_2d_brute(pts).r;
    const double rel = std::abs(got - want) / std::max(want, 1e-300);
    if (want > 0) worst = std::max(worst, rel);
    if (std::abs(got - want) > 1e-7 * std::max(want, 1e-12)) ++meb_bad;
  }
  report(9, "minimum enclosing ball", lb_bad == 0 && meb_bad == 0,
         fmt("1000 lower-bound trials, %d violations; 500 planar brute-force comparisons, %d "
             "mismatches, worst relative error %.2e",
             lb_bad, meb_bad, worst));
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str()};
}

void check_determinism(Clock::time_point suite_start) {
  int bad = 0, runs = 0;
  auto twice = [&](const std::vector<std::string>& args) -> std::string {
    const CliRun a = cli(args), b = cli(args);
    ++runs;
    if (a.code != 0 || a.out != b.out) ++bad;
    return a.out;
  };
  const std::string dir = "/tmp/geocluster_acceptance";
  std::filesystem::create_directories(dir);
  auto save = [&](const std::string& name, const std::string& text) {
    const std::string path = dir + "/" + name;
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
    return path;
  };

  for (const char* fam : {"uniform-box", "gaussian-clusters", "grid"}) {
    twice({"generate", "--family", fam, "--n", "24", "--d", "2", "--k", "3", "--seed", "5"});
  }
  const std::string ks = save("ks.txt", twice({"generate", "--family", "uniform-box", "--n", "25",
                                               "--d", "2", "--k", "3", "--facilities", "15",
                                               "--seed", "8"}));
  const std::string kc = save("kc.txt", twice({"generate", "--family", "gaussian-clusters", "--n",
                                               "10", "--d", "2", "--k", "2", "--seed", "9"}));
  const std::string nk = save("nk.txt", twice({"generate", "--family", "uniform-box", "--n", "9",
                                               "--d", "2", "--k", "3", "--radii", "1,0.5",
                                               "--counts", "1,2", "--seed", "4"}));
  save("edges.txt", "p 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
  twice({"generate", "--family", "vc-gadget", "--graph", dir + "/edges.txt", "--k", "2",
         "--jl-dim", "200", "--seed", "3"});
  for (const char* alg : {"fpt", "hs3", "oracle"})
    twice({"solve", "--problem", "ksupplier", "--input", ks, "--algorithm", alg, "--seed", "2"});
  for (const char* alg : {"fpt", "gonzalez", "oracle"})
    twice({"solve", "--problem", "kcenter", "--input", kc, "--algorithm", alg, "--seed", "2"});
  twice({"solve", "--problem", "kcenter", "--input", kc, "--output", "csv", "--seed", "1"});
  for (const char* alg : {"fpt", "oracle"}) {
    twice({"solve", "--problem", "nukc-general", "--input", nk, "--algorithm", alg});
    twice({"solve", "--problem", "nukc-euclid", "--input", nk, "--algorithm", alg, "--seed", "6"});
  }
  const double secs = seconds_since(suite_start);
  report(10, "determinism", bad == 0 && secs < 900,
         fmt("%d commands run twice, %d differed or failed; whole run %.1f s", runs, bad, secs));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const auto sup = supplier_corpus();
  const auto cen = center_corpus();
  const std::vector<std::function<void()>> checks{
      [&] { check_ksupplier(sup); },   [&] { check_kcenter(cen); },
      [&] { check_baselines(sup, cen); }, [&] { check_probes(); },
      [&] { check_separator(); },      [&] { check_nukc_general(); },
      [&] { check_nukc_euclidean(); }, [&] { check_gadget(); },
      [&] { check_meb(); },            [&] { check_determinism(start); }};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(int(i + 1), "exception", false, e.what());
    }
  }
  std::printf("%d of %zu properties failed\n", failures, checks.size());
  return failures == 0 ? 0 : 1;
}
