#include <doctest.h>

#include <sstream>

#include "geocluster/instance_io.hpp"
#include "geocluster/instances.hpp"

using namespace geocluster;

namespace {

ProblemFile parse(const std::string& text) {
  std::istringstream in(text);
  return read_problem(in, "t");
}

ProblemFile round_trip(const ProblemFile& f) {
  std::ostringstream out;
  write_problem(out, f, {"generated"});
  return parse(out.str());
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  for (double v : {1.0 / 3.0, 2.5e-300, 123456789.123456789, -0.0, 1e22}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("generator outputs round-trip") {
  for (Family fam : {Family::uniform_box, Family::gaussian_clusters, Family::grid}) {
    const auto g = gen_random(fam, 17, 3, 2, 4);
    ProblemFile f;
    f.kind = FileKind::ksupplier;
    f.dim = 3;
    f.k = 2;
    f.clients = g.points;
    f.facilities_same = true;
    CHECK(round_trip(f) == f);
  }
  ProblemFile n;
  n.kind = FileKind::nukc;
  n.dim = 2;
  n.k = 3;
  n.clients = {{0.1, 0.2}, {1.0 / 3.0, 7}};
  n.facilities = {{5, 5}};
  n.radii = {2.5, 1.0 / 7.0};
  n.counts = {1, 2};
  CHECK(round_trip(n) == n);

  ProblemFile m;
  m.kind = FileKind::nukc_metric;
  m.dim = 3;
  m.k = 2;
  m.matrix = {{0, 4, 10}, {4, 0, 6}, {10, 6, 0}};
  m.radii = {3, 1};
  m.counts = {1, 1};
  CHECK(round_trip(m) == m);
}

TEST_CASE("diagnostics name the offending line") {
  const std::string head = "NUKC 1 2 2\nCLIENTS 2\n0\n1\nFACILITIES SAME\n";
  CHECK(error_line(head + "RADII 1 2\nCOUNTS 1 1\n") == 6);
  CHECK(error_line(head + "RADII 2 1\nCOUNTS 1 2\n") == 7);
  CHECK(error_line("KSUPPLIER 2 1\nCLIENTS 1\n0 0 0\nFACILITIES SAME\n") == 3);
  CHECK(error_line("KSUPPLIER 2 1\n# note\nCLIENTS 1\n0 x\nFACILITIES SAME\n") == 4);
  CHECK(error_line("BOGUS 2 1\n") == 1);
  CHECK(error_line("KSUPPLIER 1 1\nCLIENTS 2\n0\n") == 4);
  CHECK(error_line(head + "RADII 2 1\nCOUNTS 1 1\n") == 0);
}

TEST_CASE("solution files and verification") {
  const ProblemFile p = parse(
      "KSUPPLIER 2 2\nCLIENTS 2\n0 0\n10 0\nFACILITIES 2\n0 1\n10 1\n");
  SolutionFile s{1.0, {{{0, 1}, 1.0}, {{10, 1}, 1.0}}};
  std::ostringstream out;
  write_solution(out, s);
  std::istringstream in(out.str());
  const SolutionFile back = read_solution(in);
  CHECK(back.cost == 1.0);
  CHECK(back.balls.size() == 2);
  CHECK(verify_solution(p, back, Problem::ksupplier).ok);

  SolutionFile tampered = back;
  tampered.cost = 0.9;
  CHECK_FALSE(verify_solution(p, tampered, Problem::ksupplier).ok);

  SolutionFile off = back;
  off.balls[0].values = {0, 0};
  CHECK_FALSE(verify_solution(p, off, Problem::ksupplier).ok);
  // Continuous centres are fine for k-center.
  CHECK(verify_solution(p, SolutionFile{1.0, {{{0, 0}, 1.0}, {{10, 1}, 1.0}}}, Problem::kcenter)
            .ok);

  SolutionFile many = back;
  many.balls.push_back(many.balls[0]);
  CHECK_FALSE(verify_solution(p, many, Problem::ksupplier).ok);
}

TEST_CASE("problem names") {
  for (Problem pr : {Problem::ksupplier, Problem::kcenter, Problem::nukc_general,
                     Problem::nukc_euclid}) {
    CHECK(parse_problem(problem_name(pr)) == pr);
  }
  CHECK_THROWS(parse_problem("x"));
}
