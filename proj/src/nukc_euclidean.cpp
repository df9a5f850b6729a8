#include "geocluster/nukc_euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace geocluster {

std::size_t coreset_capacity(double eps) {
  return static_cast<std::size_t>(std::ceil(2.0 / eps - 1e-12));
}

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("eps must lie in (0, 1]");
}

class CoresetSearch {
 public:
  CoresetSearch(std::span<const Point> clients, double eps, BranchBudget& budget)
      : clients_(clients), eps_(eps), capacity_(coreset_capacity(eps)), budget_(budget) {}

  std::optional<CoresetState> run(CoresetState init, std::size_t first) {
    std::optional<CoresetState> found;
    dfs(init, first, 0.0, found);
    return found;
  }

  std::size_t capacity() const { return capacity_; }

 private:
  struct Pick {
    std::size_t point;
    double delta;
  };

  // Uncovered client farthest from the nonempty slot centres; ties by index.
  std::optional<Pick> select(const CoresetState& s) const {
    std::optional<Pick> best;
    for (std::size_t p = 0; p < clients_.size(); ++p) {
      double delta = std::numeric_limits<double>::infinity();
      bool covered = false;
      for (std::size_t j = 0; j < s.slots.size() && !covered; ++j) {
        if (s.slots[j].empty()) continue;
        const double d = distance(clients_[p], s.mebs[j].center);
        covered = leq_tol(d, (1.0 + eps_) * s.radius[j]);
        delta = std::min(delta, d);
      }
      if (covered) continue;
      if (!best || delta > best->delta) best = Pick{p, delta};
    }
    return best;
  }

  bool dfs(const CoresetState& state, std::size_t point, double delta,
           std::optional<CoresetState>& found) {
    for (std::size_t j = 0; j < state.slots.size(); ++j) {
      if (state.slots[j].size() >= capacity_) continue;
      bool twin = false;
      for (std::size_t i = 0; i < j && !twin; ++i) {
        twin = state.radius[i] == state.radius[j] && state.slots[i] == state.slots[j];
      }
      if (twin) continue;
      budget_.charge();

      const double expanded = (1.0 + eps_) * state.radius[j];
      const bool had_points = !state.slots[j].empty();
      const double previous = had_points ? state.mebs[j].radius / expanded : 0.0;

      CoresetState child = state;
      child.slots[j].push_back(point);
      std::vector<Point> members;
      for (std::size_t i : child.slots[j]) members.push_back(clients_[i]);
      child.mebs[j] = meb(members);
      // S_j no longer fits in a ball of radius rho_j.
      if (!leq_tol(child.mebs[j].radius, state.radius[j])) continue;

      CoresetStep step;
      step.slot = j;
      step.point = point;
      step.delta = delta;
      step.meb_radius = child.mebs[j].radius;
      step.lambda = step.meb_radius / expanded;
      step.slot_size = child.slots[j].size();
      if (had_points) step.recurrence_ok = step.lambda >= (1.0 + previous * previous) / 2.0 - 1e-9;
      child.trace.push_back(step);

      const auto next = select(child);
      if (!next) {
        found = std::move(child);
        return true;
      }
      if (dfs(child, next->point, next->delta, found)) return true;
    }
    return false;
  }

  std::span<const Point> clients_;
  double eps_;
  std::size_t capacity_;
  BranchBudget& budget_;
};

std::optional<EuclidCover> decide(std::span<const Point> clients, std::vector<double> radii,
                                  double eps, std::uint64_t seed, BranchBudget& budget) {
  std::sort(radii.begin(), radii.end(), std::greater<>());
  CoresetState init;
  init.radius = radii;
  init.slots.resize(radii.size());
  init.mebs.resize(radii.size());

  CoresetSearch search(clients, eps, budget);
  auto state = search.run(std::move(init), seed % clients.size());
  if (!state) return std::nullopt;

  EuclidCover cover;
  cover.slot_capacity = search.capacity();
  for (std::size_t j = 0; j < state->slots.size(); ++j) {
    if (state->slots[j].empty()) continue;
    cover.balls.push_back(Ball{state->mebs[j].center, (1.0 + eps) * state->radius[j]});
    cover.ball_slot.push_back(j);
  }
  for (const Point& p : clients) {
    const bool covered = std::any_of(cover.balls.begin(), cover.balls.end(),
                                     [&](const Ball& b) { return b.contains(p); });
    if (!covered) throw std::logic_error("nukc_euclid_decision: returned balls miss a client");
  }
  cover.state = std::move(*state);
  return cover;
}

void check_clients(std::span<const Point> clients) {
  if (clients.empty()) throw std::invalid_argument("NUkC: no clients");
  require_dimension(clients, clients.front().dim());
}

}  // namespace

std::optional<EuclidCover> nukc_euclid_decision(std::span<const Point> clients,
                                                std::vector<double> scaled_radii, double eps,
                                                std::uint64_t seed, const SearchLimits& limits) {
  check_clients(clients);
  check_eps(eps);
  if (scaled_radii.empty()) throw std::invalid_argument("nukc_euclid_decision: no radii");
  for (double r : scaled_radii) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("nukc_euclid_decision: radii must be positive");
    }
  }
  BranchBudget budget(limits);
  auto cover = decide(clients, std::move(scaled_radii), eps, seed, budget);
  if (cover) cover->branches = budget.branches();
  return cover;
}

EuclidNUkCResult solve_nukc_euclidean(std::span<const Point> clients,
                                      std::span<const double> radii,
                                      std::span<const std::size_t> counts, double eps,
                                      std::uint64_t seed, const SearchLimits& limits) {
  check_clients(clients);
  check_eps(eps);
  validate_radii(radii, counts);

  std::vector<std::size_t> slot_class;
  for (std::size_t i = 0; i < radii.size(); ++i) slot_class.insert(slot_class.end(), counts[i], i);

  EuclidNUkCResult result;
  const NUkCInstance discrete = NUkCInstance::euclidean(
      std::vector<Point>(clients.begin(), clients.end()), {},
      std::vector<double>(radii.begin(), radii.end()),
      std::vector<std::size_t>(counts.begin(), counts.end()));
  result.solution = solve_nukc_general(discrete, limits);
  const double upper = result.solution.dilation;
  if (upper == 0.0) return result;

  // Centres restricted to C lose at most a factor 2 against free centres.
  const double inner = eps / 4.0;
  double lo = upper / 2.0;
  double hi = upper;
  BranchBudget budget(limits);
  while (hi > (1.0 + inner) * lo) {
    const double alpha = std::sqrt(lo * hi);
    ++result.probes;
    std::vector<double> scaled;
    for (std::size_t c : slot_class) scaled.push_back(alpha * radii[c]);
    auto cover = decide(clients, std::move(scaled), inner, seed, budget);
    if (!cover) {
      lo = alpha;
      continue;
    }
    hi = alpha;
    NUkCSolution sol;
    for (std::size_t b = 0; b < cover->balls.size(); ++b) {
      sol.balls.push_back({kNoIndex, cover->balls[b].center, slot_class[cover->ball_slot[b]]});
    }
    sol.dilation = nukc_dilation(clients, radii, sol.balls);
    sol.alpha = alpha;
    if (!leq_tol(sol.dilation, (1.0 + inner) * alpha)) {
      throw std::logic_error("solve_nukc_euclidean: cover exceeds its radius bound");
    }
    if (sol.dilation <= result.solution.dilation) {
      result.solution = std::move(sol);
      result.cover = std::move(cover);
    }
  }
  result.solution.branches += budget.branches();
  result.lower_bound = lo;
  return result;
}

}  // namespace geocluster
