#include <doctest.h>

#include "geocluster/separator.hpp"
#include "reference.hpp"

using namespace geocluster;

namespace {

std::vector<Point> pick(const std::vector<Point>& pts, const std::vector<std::size_t>& idx) {
  std::vector<Point> out;
  for (std::size_t i : idx) out.push_back(pts[i]);
  return out;
}

}  // namespace

TEST_CASE("balance constant") {
  CHECK(c_d(1) == 3);
  CHECK(c_d(2) == 10);
  CHECK(c_d(3) == 65);
  CHECK(balance_bound(20, 2) == 18);
}

TEST_CASE("crossing_check") {
  const std::vector<Point> x1{{0}}, x2{{1}};
  CHECK(crossing_check(std::vector<Point>{{0.5}}, x1, x2));
  CHECK_FALSE(crossing_check(std::vector<Point>{{10}}, x1, x2));
}

TEST_CASE("separator on a grid") {
  std::vector<Point> grid;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 4; ++y) grid.push_back(Point{double(x), double(y)});
  const SeparatorResult r = voronoi_separator(grid, 0);
  CHECK(r.x1.size() <= 18);
  CHECK(r.x2.size() <= 18);
  CHECK(r.x1.size() + r.x2.size() == grid.size());
  CHECK(crossing_check(r.z, pick(grid, r.x1), pick(grid, r.x2)));
}

TEST_CASE("separator on two points") {
  const std::vector<Point> pts{{0}, {1}};
  const SeparatorResult r = voronoi_separator(pts, 4);
  CHECK(r.x1.size() == 1);
  CHECK(r.x2.size() == 1);
  CHECK(crossing_check(r.z, pick(pts, r.x1), pick(pts, r.x2)));
}

TEST_CASE("separator on random points in three dimensions") {
  Rng rng(21);
  const auto pts = ref::random_points(rng, 50, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SeparatorResult r = voronoi_separator(pts, seed);
    CHECK(crossing_check(r.z, pick(pts, r.x1), pick(pts, r.x2)));
    CHECK(r.x1.size() <= balance_bound(50, 3));
    CHECK(r.x2.size() <= balance_bound(50, 3));
  }
}

TEST_CASE("separator is deterministic and rejects duplicates") {
  Rng rng(2);
  const auto pts = ref::random_points(rng, 40, 2);
  const SeparatorResult a = voronoi_separator(pts, 99);
  const SeparatorResult b = voronoi_separator(pts, 99);
  CHECK(a.z == b.z);
  CHECK(a.x1 == b.x1);
  CHECK(a.x2 == b.x2);
  CHECK_THROWS(voronoi_separator(std::vector<Point>{{1, 1}, {1, 1}}, 0));
  CHECK_THROWS(voronoi_separator(std::vector<Point>{{1, 1}}, 0));
}
