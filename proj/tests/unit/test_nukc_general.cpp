#include <doctest.h>

#include "geocluster/nukc_general.hpp"
#include "geocluster/oracles.hpp"
#include "reference.hpp"

using namespace geocluster;

namespace {

NUkCInstance line_example() {
  return NUkCInstance::euclidean({{0}, {4}, {10}}, {}, {3, 1}, {1, 1});
}

}  // namespace

TEST_CASE("radii validation") {
  CHECK_THROWS(validate_radii(std::vector<double>{1, 2}, std::vector<std::size_t>{1, 1}));
  CHECK_THROWS(validate_radii(std::vector<double>{2, 1}, std::vector<std::size_t>{1, 0}));
  CHECK_THROWS(validate_radii(std::vector<double>{-1}, std::vector<std::size_t>{1}));
  CHECK_NOTHROW(validate_radii(std::vector<double>{2, 1}, std::vector<std::size_t>{2, 1}));
}

TEST_CASE("decision on the line example") {
  const NUkCInstance inst = line_example();
  CHECK(inst.cf_equal);
  const auto ok = nukc_cover_decision(inst, 4.0 / 3.0);
  REQUIRE(ok.has_value());
  CHECK(ok->balls.size() <= 2);
  CHECK(ok->dilation <= 2 * 4.0 / 3.0 + 1e-9);
  CHECK_FALSE(nukc_cover_decision(inst, 0.1).has_value());
}

TEST_CASE("decision on coincident clients") {
  const NUkCInstance inst = NUkCInstance::euclidean({{1, 1}, {1, 1}}, {{1, 1}}, {1}, {1});
  const auto ok = nukc_cover_decision(inst, 0.01);
  REQUIRE(ok.has_value());
  CHECK(ok->balls.size() == 1);
}

TEST_CASE("solve_nukc_general examples") {
  const NUkCInstance inst = line_example();
  const NUkCSolution s = solve_nukc_general(inst);
  CHECK(s.dilation <= 8.0 / 3.0 + 1e-9);
  CHECK(brute_nukc(inst).dilation == doctest::Approx(4.0 / 3.0));

  const NUkCInstance square =
      NUkCInstance::euclidean({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {}, {1}, {2});
  CHECK(solve_nukc_general(square).dilation <= 2.0 + 1e-9);
  CHECK(brute_nukc(square).dilation == doctest::Approx(1.0));

  // Every facility can be opened.
  const NUkCInstance all =
      NUkCInstance::euclidean({{0, 0}, {3, 0}}, {{0, 0}, {3, 0}}, {100, 50}, {1, 1});
  CHECK(solve_nukc_general(all).dilation == doctest::Approx(0.0));
}

TEST_CASE("metric instances") {
  const NUkCInstance inst = NUkCInstance::from_matrix(
      DistanceMatrix({{0, 4, 10}, {4, 0, 6}, {10, 6, 0}}), {3, 1}, {1, 1});
  const NUkCSolution s = solve_nukc_general(inst);
  CHECK(s.dilation <= 2 * brute_nukc(inst).dilation + 1e-9);
}

TEST_CASE("general solver within its factor of the exhaustive optimum") {
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const bool same = trial % 2 == 0;
    auto c = ref::random_points(rng, 4 + rng.below(8), 2);
    auto f = same ? std::vector<Point>{} : ref::random_points(rng, 3 + rng.below(6), 2);
    const std::vector<double> radii = trial % 3 == 0 ? std::vector<double>{1.0}
                                                     : std::vector<double>{1.0, 0.4};
    const std::vector<std::size_t> counts =
        radii.size() == 1 ? std::vector<std::size_t>{2} : std::vector<std::size_t>{1, 1};
    const NUkCInstance inst = NUkCInstance::euclidean(c, f, radii, counts);
    const double opt = brute_nukc(inst).dilation;
    const NUkCSolution s = solve_nukc_general(inst);
    CHECK(s.dilation <= (same ? 2.0 : 3.0) * opt + 1e-9);
    CHECK(s.dilation == doctest::Approx(nukc_dilation(inst, s.balls)));
  }
}
