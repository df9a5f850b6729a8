#include "geocluster/supplier_solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "geocluster/filtering.hpp"
#include "geocluster/oracles.hpp"
#include "geocluster/random.hpp"

namespace geocluster {

void KSupplierInstance::validate() const {
  if (k == 0) throw std::invalid_argument("k-supplier instance: k must be at least 1");
  if (clients.empty()) throw std::invalid_argument("k-supplier instance: no clients");
  const std::size_t d = clients.front().dim();
  require_dimension(clients, d);
  require_dimension(facilities, d);
}

double clustering_cost(std::span<const Point> clients, std::span<const Point> centers) {
  double cost = 0.0;
  for (const Point& p : clients) cost = std::max(cost, distance_to_set(p, centers));
  return cost;
}

std::size_t probe_budget(double eps) {
  return static_cast<std::size_t>(std::ceil(std::log2(3.0 / eps))) + 1;
}

// ---------------------------------------------------------------------------
// Hochbaum-Shmoys

namespace {

std::size_t nearest_index(const Point& p, std::span<const Point> set) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double d = squared_distance(p, set[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// Greedy 2R-independent clients, each served by its nearest facility.
std::optional<std::vector<std::size_t>> hs_test(const KSupplierInstance& inst,
                                                const std::vector<std::size_t>& nearest_facility,
                                                double radius) {
  std::vector<std::size_t> picked;
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < inst.clients.size(); ++i) {
    bool independent = true;
    for (std::size_t j : picked) {
      if (leq_tol(distance(inst.clients[i], inst.clients[j]), 2.0 * radius)) {
        independent = false;
        break;
      }
    }
    if (!independent) continue;
    const std::size_t f = nearest_facility[i];
    if (!leq_tol(distance(inst.clients[i], inst.facilities[f]), radius)) return std::nullopt;
    picked.push_back(i);
    if (std::find(centers.begin(), centers.end(), f) == centers.end()) centers.push_back(f);
    if (picked.size() > inst.k) return std::nullopt;
  }
  return centers;
}

SolveReport report_from_indices(const KSupplierInstance& inst, std::vector<std::size_t> indices) {
  SolveReport r;
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  for (std::size_t i : indices) r.centers.push_back(inst.facilities[i]);
  r.center_indices = std::move(indices);
  r.cost = clustering_cost(inst.clients, r.centers);
  r.feasible = true;
  return r;
}

// Opens unused facilities (nearest to the currently worst client) until k are open.
void pad_to_k(const KSupplierInstance& inst, SolveReport& r) {
  std::vector<bool> open(inst.facilities.size(), false);
  for (std::size_t i : r.center_indices) open[i] = true;
  while (r.center_indices.size() < inst.k && r.center_indices.size() < inst.facilities.size()) {
    std::size_t worst = 0;
    double worst_d = -1.0;
    for (std::size_t c = 0; c < inst.clients.size(); ++c) {
      const double d = distance_to_set(inst.clients[c], r.centers);
      if (d > worst_d) {
        worst_d = d;
        worst = c;
      }
    }
    std::size_t pick = 0;
    double pick_d = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < inst.facilities.size(); ++f) {
      if (open[f]) continue;
      const double d = distance(inst.clients[worst], inst.facilities[f]);
      if (d < pick_d) {
        pick_d = d;
        pick = f;
      }
    }
    open[pick] = true;
    r.center_indices.push_back(pick);
    r.centers.push_back(inst.facilities[pick]);
  }
  r.cost = clustering_cost(inst.clients, r.centers);
}

}  // namespace

SolveReport hs_3approx(const KSupplierInstance& instance) {
  instance.validate();
  if (instance.facilities.size() < instance.k) {
    throw std::invalid_argument("hs_3approx: fewer facilities than k");
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> nearest(instance.clients.size());
  std::vector<double> radii;
  radii.reserve(instance.clients.size() * instance.facilities.size());
  for (std::size_t i = 0; i < instance.clients.size(); ++i) {
    nearest[i] = nearest_index(instance.clients[i], instance.facilities);
    for (const Point& f : instance.facilities) radii.push_back(distance(instance.clients[i], f));
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  // Smallest passing candidate found by bisection; the largest always passes.
  std::size_t lo = 0, hi = radii.size() - 1;
  auto best = hs_test(instance, nearest, radii[hi]);
  if (!best) throw std::logic_error("hs_3approx: largest candidate radius failed");
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto r = hs_test(instance, nearest, radii[mid])) {
      hi = mid;
      best = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  SolveReport report = report_from_indices(instance, *best);
  report.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Feasibility search (separator recursion)

namespace {

using Bits = std::vector<std::uint64_t>;

inline bool test_bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1U; }
inline void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

struct AtomicStats {
  std::atomic<std::uint64_t> guesses{0}, nodes{0}, base_cases{0};
  std::atomic<std::size_t> max_depth{0}, separator_calls{0}, separator_warnings{0};
  std::mutex ratio_mutex;
  double max_ratio = 0.0;

  void note_depth(std::size_t d) {
    std::size_t cur = max_depth.load();
    while (d > cur && !max_depth.compare_exchange_weak(cur, d)) {
    }
  }
  void note_ratio(double r) {
    std::lock_guard lock(ratio_mutex);
    max_ratio = std::max(max_ratio, r);
  }
  void export_to(SolveStats& s) const {
    s.guesses += guesses.load();
    s.nodes += nodes.load();
    s.base_cases += base_cases.load();
    s.max_depth = std::max(s.max_depth, max_depth.load());
    s.separator_calls += separator_calls.load();
    s.separator_size_warnings += separator_warnings.load();
    s.max_separator_ratio = std::max(s.max_separator_ratio, max_ratio);
  }
};

using Centers = std::vector<std::size_t>;

class FeasibilitySearch {
 public:
  FeasibilitySearch(std::span<const Point> clients, std::span<const Point> facilities,
                    double eps, const SearchOptions& options, BranchBudget& budget,
                    AtomicStats& stats)
      : clients_(clients),
        facilities_(facilities),
        eps_(eps),
        reach_(1.0 + eps),
        options_(options),
        budget_(budget),
        stats_(stats) {
    const std::size_t words = (clients.size() + 63) / 64;
    covers_.assign(facilities.size(), Bits(words, 0));
    for (std::size_t f = 0; f < facilities.size(); ++f) {
      for (std::size_t c = 0; c < clients.size(); ++c) {
        if (leq_tol(distance(facilities[f], clients[c]), reach_)) set_bit(covers_[f], c);
      }
    }
    // Two clients farther apart than this cannot share a centre.
    packing_sep_ = 2.0 * (reach_ + tolerance_for(reach_)) * (1.0 + 1e-12);
    dim_ = clients.empty() ? (facilities.empty() ? 1 : facilities.front().dim())
                           : clients.front().dim();
    k_threshold_ = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(double(dim_) * std::log(1.0 / eps))));
    threads_ = options.threads == 0 ? default_thread_count() : options.threads;
  }

  std::optional<Centers> solve(const std::vector<std::size_t>& clients,
                               const std::vector<std::size_t>& facilities, std::size_t k,
                               std::uint64_t seed, std::size_t depth) {
    stats_.nodes.fetch_add(1, std::memory_order_relaxed);
    stats_.note_depth(depth);
    budget_.charge();

    if (clients.empty()) return Centers{};
    if (facilities.empty() || k == 0) return std::nullopt;
    for (std::size_t c : clients) {
      const bool reachable = std::any_of(facilities.begin(), facilities.end(),
                                         [&](std::size_t f) { return test_bit(covers_[f], c); });
      if (!reachable) return std::nullopt;
    }
    if (packing_lower_bound(clients, k + 1) > k) return std::nullopt;

    const bool base = (options_.base_case.use_k_threshold && k <= k_threshold_) ||
                      facilities.size() <= options_.base_case.facility_cutoff ||
                      clients.size() <= options_.base_case.client_cutoff;
    if (base) return set_cover(clients, facilities, k);

    // Separator over the distinct locations of C' and F'.
    std::map<std::vector<double>, std::size_t> location_id;
    std::vector<Point> locations;
    auto locate = [&](const Point& p) {
      auto [it, inserted] = location_id.emplace(p.data(), locations.size());
      if (inserted) locations.push_back(p);
      return it->second;
    };
    std::vector<std::size_t> client_loc, facility_loc;
    for (std::size_t c : clients) client_loc.push_back(locate(clients_[c]));
    for (std::size_t f : facilities) facility_loc.push_back(locate(facilities_[f]));
    if (locations.size() < 2) return set_cover(clients, facilities, k);

    const SeparatorResult sep = voronoi_separator(locations, seed, options_.separator);
    stats_.separator_calls.fetch_add(1, std::memory_order_relaxed);
    if (sep.size_warning) stats_.separator_warnings.fetch_add(1, std::memory_order_relaxed);
    stats_.note_ratio(sep.size_ratio);

    std::vector<std::uint8_t> side(locations.size(), 2);
    for (std::size_t id : sep.x1) side[id] = 1;

    Split split;
    split.k = k;
    split.seed = seed;
    split.depth = depth;
    for (std::size_t i = 0; i < clients.size(); ++i) {
      split.clients.push_back(clients[i]);
      split.client_side.push_back(side[client_loc[i]]);
    }
    for (std::size_t i = 0; i < facilities.size(); ++i) {
      split.facilities.push_back(facilities[i]);
      split.facility_side.push_back(side[facility_loc[i]]);
    }

    // Guess candidates: facilities within 2(1 + eps) of Z, by (distance, index).
    const double locality = 2.0 * reach_;
    std::vector<std::pair<double, std::size_t>> near;
    for (std::size_t f : facilities) {
      const double dz = distance_to_set(facilities_[f], sep.z);
      if (leq_tol(dz, locality)) near.emplace_back(dz, f);
    }
    std::sort(near.begin(), near.end());
    for (const auto& [dz, f] : near) {
      if (!leq_tol(distance_to_set(facilities_[f], sep.z), locality)) {
        throw std::logic_error("guess candidate is not near the separator");
      }
      split.candidates.push_back(f);
    }

    if (depth == 0 && threads_ > 1) return enumerate_parallel(split);
    return enumerate_sequential(split);
  }

 private:
  struct Split {
    std::vector<std::size_t> clients, facilities, candidates;
    std::vector<std::uint8_t> client_side, facility_side;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::size_t depth = 0;
  };

  // Greedy count of clients pairwise farther than 2(1 + eps); stops at `cap`.
  std::size_t packing_lower_bound(const std::vector<std::size_t>& clients, std::size_t cap) const {
    std::vector<std::size_t> picked;
    for (std::size_t c : clients) {
      bool far = true;
      for (std::size_t p : picked) {
        if (distance(clients_[c], clients_[p]) <= packing_sep_) {
          far = false;
          break;
        }
      }
      if (far) {
        picked.push_back(c);
        if (picked.size() >= cap) break;
      }
    }
    return picked.size();
  }

  // Exact: is there a set of <= k facilities covering every client within 1 + eps?
  std::optional<Centers> set_cover(const std::vector<std::size_t>& clients,
                                   const std::vector<std::size_t>& facilities, std::size_t k) {
    stats_.base_cases.fetch_add(1, std::memory_order_relaxed);
    const std::size_t m = clients.size();
    const std::size_t words = (m + 63) / 64;

    // Deduplicate by coverage mask, then drop strictly dominated masks.
    std::map<Bits, std::size_t> first_with_mask;
    std::vector<std::pair<Bits, std::size_t>> masks;
    for (std::size_t f : facilities) {
      Bits mask(words, 0);
      bool any = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (test_bit(covers_[f], clients[i])) {
          set_bit(mask, i);
          any = true;
        }
      }
      if (!any) continue;
      if (first_with_mask.emplace(mask, f).second) masks.emplace_back(std::move(mask), f);
    }
    auto subset = [words](const Bits& a, const Bits& b) {
      for (std::size_t w = 0; w < words; ++w) {
        if (a[w] & ~b[w]) return false;
      }
      return true;
    };
    std::vector<std::pair<Bits, std::size_t>> kept;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < masks.size() && !dominated; ++j) {
        dominated = j != i && subset(masks[i].first, masks[j].first);
      }
      if (!dominated) kept.push_back(masks[i]);
    }
    auto popcount = [](const Bits& b) {
      std::size_t c = 0;
      for (auto w : b) c += static_cast<std::size_t>(__builtin_popcountll(w));
      return c;
    };
    std::stable_sort(kept.begin(), kept.end(), [&](const auto& a, const auto& b) {
      return popcount(a.first) > popcount(b.first);
    });

    Centers chosen;
    Bits covered(words, 0);
    if (cover_dfs(kept, m, k, covered, chosen)) return chosen;
    return std::nullopt;
  }

  bool cover_dfs(const std::vector<std::pair<Bits, std::size_t>>& masks, std::size_t m,
                 std::size_t k, Bits& covered, Centers& chosen) {
    std::size_t first_uncovered = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (!test_bit(covered, i)) {
        first_uncovered = i;
        break;
      }
    }
    if (first_uncovered == m) return true;
    if (chosen.size() == k) return false;
    for (const auto& [mask, f] : masks) {
      if (!test_bit(mask, first_uncovered)) continue;
      budget_.charge();
      Bits next = covered;
      for (std::size_t w = 0; w < next.size(); ++w) next[w] |= mask[w];
      chosen.push_back(f);
      if (cover_dfs(masks, m, k, next, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  // Calls `visit(guess, ordinal)` for every subset of the candidates of size
  // 0..min(k, |candidates|), by increasing size then lexicographically; stops
  // when visit returns true.
  template <typename Visit>
  static void for_each_guess(const std::vector<std::size_t>& candidates, std::size_t k,
                             Visit&& visit) {
    const std::size_t limit = std::min(k, candidates.size());
    std::uint64_t ordinal = 0;
    std::vector<std::size_t> pos;
    std::vector<std::size_t> guess;
    for (std::size_t size = 0; size <= limit; ++size) {
      pos.resize(size);
      std::iota(pos.begin(), pos.end(), 0);
      for (;;) {
        guess.clear();
        for (std::size_t p : pos) guess.push_back(candidates[p]);
        if (visit(guess, ordinal++)) return;
        // Next combination.
        std::size_t i = size;
        while (i > 0 && pos[i - 1] == candidates.size() - size + (i - 1)) --i;
        if (i == 0) break;
        ++pos[i - 1];
        for (std::size_t j = i; j < size; ++j) pos[j] = pos[j - 1] + 1;
      }
    }
  }

  std::optional<Centers> evaluate_guess(const Split& split, const std::vector<std::size_t>& guess,
                                        std::uint64_t ordinal) {
    stats_.guesses.fetch_add(1, std::memory_order_relaxed);
    budget_.charge();

    std::vector<std::size_t> c_side[3], f_side[3];
    for (std::size_t i = 0; i < split.clients.size(); ++i) {
      const std::size_t c = split.clients[i];
      const bool served = std::any_of(guess.begin(), guess.end(),
                                      [&](std::size_t g) { return test_bit(covers_[g], c); });
      if (!served) c_side[split.client_side[i]].push_back(c);
    }
    for (std::size_t i = 0; i < split.facilities.size(); ++i) {
      const std::size_t f = split.facilities[i];
      if (std::find(guess.begin(), guess.end(), f) == guess.end()) {
        f_side[split.facility_side[i]].push_back(f);
      }
    }
    const std::size_t rest = split.k - guess.size();
    const std::size_t lb1 = packing_lower_bound(c_side[1], rest + 1);
    const std::size_t lb2 = packing_lower_bound(c_side[2], rest + 1);
    if (lb1 + lb2 > rest) return std::nullopt;

    // Feasibility is monotone in k, so the first k1 whose left side succeeds is
    // the only split worth pairing with the right side.
    for (std::size_t k1 = lb1; k1 + lb2 <= rest; ++k1) {
      const std::uint64_t left_seed = mix_seed(split.seed, ordinal * 4 + 1);
      auto left = solve(c_side[1], f_side[1], k1, left_seed, split.depth + 1);
      if (!left) continue;
      const std::uint64_t right_seed = mix_seed(split.seed, ordinal * 4 + 2);
      auto right = solve(c_side[2], f_side[2], rest - k1, right_seed, split.depth + 1);
      if (!right) return std::nullopt;
      Centers out(guess);
      out.insert(out.end(), left->begin(), left->end());
      out.insert(out.end(), right->begin(), right->end());
      return out;
    }
    return std::nullopt;
  }

  std::optional<Centers> enumerate_sequential(const Split& split) {
    std::optional<Centers> found;
    for_each_guess(split.candidates, split.k, [&](const auto& guess, std::uint64_t ordinal) {
      found = evaluate_guess(split, guess, ordinal);
      return found.has_value();
    });
    return found;
  }

  // Guesses evaluated by a worker pool; the accepted result is the first
  // succeeding guess in enumeration order, so output matches the sequential run.
  std::optional<Centers> enumerate_parallel(const Split& split) {
    std::vector<std::vector<std::size_t>> guesses;
    for_each_guess(split.candidates, split.k, [&](const auto& guess, std::uint64_t) {
      guesses.push_back(guess);
      return false;
    });
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{guesses.size()};
    std::vector<std::optional<Centers>> results(guesses.size());
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= guesses.size() || i > best.load()) return;
        try {
          results[i] = evaluate_guess(split, guesses[i], i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          best.store(0);
          return;
        }
        if (results[i]) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    };
    std::vector<std::thread> pool;
    const std::size_t n = std::min<std::size_t>(threads_, guesses.size());
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    const std::size_t b = best.load();
    if (b < guesses.size()) return results[b];
    return std::nullopt;
  }

  std::span<const Point> clients_;
  std::span<const Point> facilities_;
  double eps_;
  double reach_;
  double packing_sep_ = 0.0;
  std::size_t dim_ = 1;
  std::size_t k_threshold_ = 1;
  unsigned threads_ = 1;
  const SearchOptions& options_;
  BranchBudget& budget_;
  AtomicStats& stats_;
  std::vector<Bits> covers_;
};

std::optional<Centers> run_search(std::span<const Point> clients,
                                  std::span<const Point> facilities, std::size_t k, double eps,
                                  std::uint64_t seed, const SearchOptions& options,
                                  BranchBudget& budget, SolveStats& stats) {
  AtomicStats atomic;
  FeasibilitySearch search(clients, facilities, eps, options, budget, atomic);
  std::vector<std::size_t> all_clients(clients.size()), all_facilities(facilities.size());
  std::iota(all_clients.begin(), all_clients.end(), 0);
  std::iota(all_facilities.begin(), all_facilities.end(), 0);
  std::optional<Centers> out;
  try {
    out = search.solve(all_clients, all_facilities, k, seed, 0);
  } catch (...) {
    atomic.export_to(stats);
    stats.branches = budget.branches();
    throw;
  }
  atomic.export_to(stats);
  stats.branches = budget.branches();
  if (out) {
    std::sort(out->begin(), out->end());
    out->erase(std::unique(out->begin(), out->end()), out->end());
    // One-sided soundness: never return a cover worse than 1 + eps.
    std::vector<Point> chosen;
    for (std::size_t f : *out) chosen.push_back(facilities[f]);
    if (out->size() > k || !leq_tol(clustering_cost(clients, chosen), 1.0 + eps)) {
      throw std::logic_error("feasibility_search produced an invalid cover");
    }
  }
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

void check_eps(double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("eps must lie in (0, 1]");
}

std::vector<Point> scaled(std::span<const Point> points, double factor) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(p.scaled(factor));
  return out;
}

}  // namespace

FeasibilityOutcome feasibility_search(std::span<const Point> clients,
                                      std::span<const Point> facilities, std::size_t k,
                                      double eps, std::uint64_t seed,
                                      const SearchOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("feasibility_search: eps must be positive");
  const auto start = std::chrono::steady_clock::now();
  BranchBudget budget(options.limits);
  FeasibilityOutcome outcome;
  outcome.centers = run_search(clients, facilities, k, eps, seed, options, budget, outcome.stats);
  outcome.stats.wall_ms = elapsed_ms(start);
  return outcome;
}

SolveReport solve_ksupplier(const KSupplierInstance& instance, double eps, std::uint64_t seed,
                            const SearchOptions& options) {
  instance.validate();
  check_eps(eps);
  if (instance.facilities.size() < instance.k) {
    throw std::invalid_argument("solve_ksupplier: fewer facilities than k");
  }
  const auto start = std::chrono::steady_clock::now();
  SolveReport best = hs_3approx(instance);
  SolveStats stats;
  if (best.cost > 0.0) {
    const double inner = eps / 3.0;
    const std::size_t d = instance.dim();
    double lo = best.cost / 3.0;
    double hi = best.cost;
    BranchBudget budget(options.limits);
    const std::size_t probes = probe_budget(eps);
    for (std::size_t probe = 0; probe < probes; ++probe) {
      if (best.cost <= (1.0 + eps) * lo) break;
      const double radius = std::sqrt(lo * hi);
      ++stats.probes;
      const auto clients = scaled(instance.clients, 1.0 / radius);
      const auto facilities = scaled(instance.facilities, 1.0 / radius);
      const FilterOutput cf = filter_clients(clients, inner);
      std::optional<Centers> found;
      if (size_guard(cf.kept.size(), instance.k, inner, d)) {
        const FilterOutput ff = filter_facilities(facilities, cf.kept, inner);
        try {
          found = run_search(cf.kept, ff.kept, instance.k, inner, mix_seed(seed, probe), options,
                             budget, stats);
        } catch (BudgetExceeded&) {
          stats.wall_ms = elapsed_ms(start);
          throw;
        }
        if (found) {
          for (std::size_t& f : *found) f = ff.kept_indices[f];
        }
      }
      if (found) {
        SolveReport candidate = report_from_indices(instance, *found);
        if (!leq_tol(candidate.cost, (1.0 + 2.0 * inner) * radius)) {
          throw std::logic_error("solve_ksupplier: probe solution exceeds its guarantee");
        }
        if (candidate.cost < best.cost) best = std::move(candidate);
        hi = radius;
      } else {
        lo = radius;
      }
    }
  }
  pad_to_k(instance, best);
  best.stats = stats;
  best.stats.wall_ms = elapsed_ms(start);
  return best;
}

SolveReport solve_kcenter(std::span<const Point> clients, std::size_t k, double eps,
                          std::uint64_t seed, const SearchOptions& options) {
  if (clients.empty()) throw std::invalid_argument("solve_kcenter: no clients");
  if (k == 0) throw std::invalid_argument("solve_kcenter: k must be at least 1");
  check_eps(eps);
  const std::size_t d = clients.front().dim();
  require_dimension(clients, d);
  const auto start = std::chrono::steady_clock::now();

  SolveReport best = gonzalez_2approx(clients, k, seed);
  SolveStats stats;
  if (best.cost > 0.0) {
    const double inner = eps / 3.0;
    double lo = best.cost / 2.0;
    double hi = best.cost;
    BranchBudget budget(options.limits);
    const Point origin = Point::zeros(d);
    const std::size_t probes = probe_budget(eps);
    for (std::size_t probe = 0; probe < probes; ++probe) {
      if (best.cost <= (1.0 + eps) * lo) break;
      const double radius = std::sqrt(lo * hi);
      ++stats.probes;
      const auto scaled_clients = scaled(clients, 1.0 / radius);
      const FilterOutput cf = filter_clients(scaled_clients, inner);
      std::optional<Centers> found;
      std::vector<Point> candidates;
      if (size_guard(cf.kept.size(), k, inner, d)) {
        for (const Point& p : cf.kept) {
          auto net = ball_epsilon_net(p, 1.0 + inner, inner, origin);
          candidates.insert(candidates.end(), std::make_move_iterator(net.begin()),
                            std::make_move_iterator(net.end()));
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        // Net points that reach no filtered client can never be useful.
        std::erase_if(candidates, [&](const Point& c) {
          return !leq_tol(distance_to_set(c, cf.kept), 1.0 + inner);
        });
        found = run_search(cf.kept, candidates, k, inner, mix_seed(seed, probe), options, budget,
                           stats);
      }
      if (found) {
        SolveReport candidate;
        for (std::size_t f : *found) candidate.centers.push_back(candidates[f].scaled(radius));
        candidate.cost = clustering_cost(clients, candidate.centers);
        candidate.feasible = true;
        if (!leq_tol(candidate.cost, (1.0 + 2.0 * inner) * radius)) {
          throw std::logic_error("solve_kcenter: probe solution exceeds its guarantee");
        }
        if (candidate.cost < best.cost) best = std::move(candidate);
        hi = radius;
      } else {
        lo = radius;
      }
    }
  }
  best.stats = stats;
  best.stats.wall_ms = elapsed_ms(start);
  return best;
}

}  // namespace geocluster
