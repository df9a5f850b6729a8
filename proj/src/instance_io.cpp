#include "geocluster/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace geocluster {

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) +
                         (column > 0 ? ":" + std::to_string(column) : std::string()) + ": " +
                         message),
      line_(line),
      column_(column) {}

std::string format_double(double value) {
  // Shortest of 15, 16 or 17 significant digits that reads back exactly.
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (precision == 17 || std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  /// Next line with at least one token, or nothing at end of input.
  std::optional<Line> next() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      Line line;
      line.number = number_;
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        const std::size_t start = i;
        while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        if (i > start) line.tokens.push_back({raw.substr(start, i - start), start + 1});
      }
      if (!line.tokens.empty()) return line;
    }
    return std::nullopt;
  }

  Line require(const std::string& what) {
    auto line = next();
    if (!line) throw error(number_ + 1, 0, "unexpected end of file, expected " + what);
    return *line;
  }

  ParseError error(std::size_t line, std::size_t column, const std::string& message) const {
    return ParseError(source_, line, column, message);
  }
  ParseError error(const Line& line, std::size_t token, const std::string& message) const {
    const std::size_t col = token < line.tokens.size() ? line.tokens[token].column : 0;
    return ParseError(source_, line.number, col, message);
  }

  double number(const Line& line, std::size_t token) const {
    const std::string& t = line.tokens[token].text;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
      throw error(line, token, "expected a finite decimal, got '" + t + "'");
    }
    return v;
  }

  std::size_t count(const Line& line, std::size_t token) const {
    const std::string& t = line.tokens[token].text;
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw error(line, token, "expected a nonnegative integer, got '" + t + "'");
    }
    try {
      return std::stoul(t);
    } catch (const std::exception&) {
      throw error(line, token, "integer out of range '" + t + "'");
    }
  }

  void expect_tokens(const Line& line, std::size_t n, const std::string& what) const {
    if (line.tokens.size() < n) {
      throw error(line.number, 0, "expected " + what);
    }
    if (line.tokens.size() > n) throw error(line, n, "unexpected token after " + what);
  }

  void expect_keyword(const Line& line, const std::string& keyword) const {
    if (line.tokens[0].text != keyword) {
      throw error(line, 0, "expected " + keyword + ", got '" + line.tokens[0].text + "'");
    }
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t number_ = 0;
};

std::vector<Point> read_points(LineReader& r, std::size_t m, std::size_t d) {
  std::vector<Point> pts;
  pts.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Line line = r.require("a point with " + std::to_string(d) + " coordinates");
    if (line.tokens.size() != d) {
      throw r.error(line, std::min(line.tokens.size(), d),
                    "dimension mismatch: expected " + std::to_string(d) + " coordinates, got " +
                        std::to_string(line.tokens.size()));
    }
    std::vector<double> c(d);
    for (std::size_t a = 0; a < d; ++a) c[a] = r.number(line, a);
    pts.emplace_back(std::move(c));
  }
  return pts;
}

void read_radii_counts(LineReader& r, ProblemFile& f, std::size_t t) {
  Line line = r.require("RADII");
  r.expect_keyword(line, "RADII");
  r.expect_tokens(line, t + 1, "RADII with " + std::to_string(t) + " values");
  for (std::size_t i = 0; i < t; ++i) {
    const double v = r.number(line, i + 1);
    if (!(v > 0.0)) throw r.error(line, i + 1, "radii must be positive");
    if (i > 0 && !(v < f.radii.back())) {
      throw r.error(line, i + 1, "radii must be strictly decreasing");
    }
    f.radii.push_back(v);
  }
  line = r.require("COUNTS");
  r.expect_keyword(line, "COUNTS");
  r.expect_tokens(line, t + 1, "COUNTS with " + std::to_string(t) + " values");
  std::size_t sum = 0;
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t c = r.count(line, i + 1);
    if (c == 0) throw r.error(line, i + 1, "counts must be positive");
    f.counts.push_back(c);
    sum += c;
  }
  if (sum != f.k) {
    throw r.error(line.number, 0,
                  "counts sum to " + std::to_string(sum) + " but k is " + std::to_string(f.k));
  }
}

}  // namespace

ProblemFile read_problem(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  ProblemFile f;
  const Line header = r.require("a header line");
  const std::string& tag = header.tokens[0].text;
  std::size_t t = 0;
  if (tag == "KSUPPLIER") {
    f.kind = FileKind::ksupplier;
    r.expect_tokens(header, 3, "KSUPPLIER d k");
  } else if (tag == "NUKC") {
    f.kind = FileKind::nukc;
    r.expect_tokens(header, 4, "NUKC d k t");
  } else if (tag == "NUKC-METRIC") {
    f.kind = FileKind::nukc_metric;
    r.expect_tokens(header, 4, "NUKC-METRIC n k t");
  } else {
    throw r.error(header, 0, "unknown header '" + tag + "'");
  }
  f.dim = r.count(header, 1);
  f.k = r.count(header, 2);
  if (f.dim == 0) throw r.error(header, 1, "dimension must be positive");
  if (f.k == 0) throw r.error(header, 2, "k must be positive");
  if (f.kind != FileKind::ksupplier) {
    t = r.count(header, 3);
    if (t == 0 || t > f.k) throw r.error(header, 3, "need 1 <= t <= k");
  }

  if (f.kind == FileKind::nukc_metric) {
    const Line m = r.require("MATRIX");
    r.expect_keyword(m, "MATRIX");
    r.expect_tokens(m, 1, "MATRIX");
    for (std::size_t i = 0; i < f.dim; ++i) {
      const Line row = r.require("a matrix row");
      if (row.tokens.size() != f.dim) {
        throw r.error(row, std::min(row.tokens.size(), f.dim),
                      "matrix row needs " + std::to_string(f.dim) + " entries");
      }
      std::vector<double> values(f.dim);
      for (std::size_t j = 0; j < f.dim; ++j) values[j] = r.number(row, j);
      f.matrix.push_back(std::move(values));
    }
    try {
      DistanceMatrix check(f.matrix);
    } catch (const std::invalid_argument& e) {
      throw r.error(m.number, 0, std::string("invalid matrix: ") + e.what());
    }
    read_radii_counts(r, f, t);
  } else {
    Line line = r.require("CLIENTS");
    r.expect_keyword(line, "CLIENTS");
    r.expect_tokens(line, 2, "CLIENTS m");
    const std::size_t m = r.count(line, 1);
    if (m == 0) throw r.error(line, 1, "at least one client is required");
    f.clients = read_points(r, m, f.dim);

    line = r.require("FACILITIES");
    r.expect_keyword(line, "FACILITIES");
    r.expect_tokens(line, 2, "FACILITIES m or FACILITIES SAME");
    if (line.tokens[1].text == "SAME") {
      f.facilities_same = true;
    } else {
      f.facilities = read_points(r, r.count(line, 1), f.dim);
    }
    if (f.kind == FileKind::nukc) read_radii_counts(r, f, t);
  }
  if (auto extra = r.next()) throw r.error(*extra, 0, "unexpected content after the instance");
  return f;
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_problem(in, path);
}

namespace {

void write_point(std::ostream& out, const Point& p) {
  for (std::size_t a = 0; a < p.dim(); ++a) out << (a ? " " : "") << format_double(p[a]);
  out << '\n';
}

void write_radii_counts(std::ostream& out, const ProblemFile& f) {
  out << "RADII";
  for (double r : f.radii) out << ' ' << format_double(r);
  out << "\nCOUNTS";
  for (std::size_t c : f.counts) out << ' ' << c;
  out << '\n';
}

}  // namespace

void write_problem(std::ostream& out, const ProblemFile& f,
                   const std::vector<std::string>& comments) {
  for (const std::string& c : comments) out << "# " << c << '\n';
  switch (f.kind) {
    case FileKind::ksupplier: out << "KSUPPLIER " << f.dim << ' ' << f.k << '\n'; break;
    case FileKind::nukc: out << "NUKC " << f.dim << ' ' << f.k << ' ' << f.radii.size() << '\n'; break;
    case FileKind::nukc_metric:
      out << "NUKC-METRIC " << f.dim << ' ' << f.k << ' ' << f.radii.size() << '\n';
      break;
  }
  if (f.kind == FileKind::nukc_metric) {
    out << "MATRIX\n";
    for (const auto& row : f.matrix) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << format_double(row[j]);
      out << '\n';
    }
    write_radii_counts(out, f);
    return;
  }
  out << "CLIENTS " << f.clients.size() << '\n';
  for (const Point& p : f.clients) write_point(out, p);
  if (f.facilities_same) {
    out << "FACILITIES SAME\n";
  } else {
    out << "FACILITIES " << f.facilities.size() << '\n';
    for (const Point& p : f.facilities) write_point(out, p);
  }
  if (f.kind == FileKind::nukc) write_radii_counts(out, f);
}

void write_problem_file(const std::string& path, const ProblemFile& file,
                        const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  write_problem(out, file, comments);
}

const std::vector<Point>& ProblemFile::facility_points() const {
  return facilities_same ? clients : facilities;
}

KSupplierInstance ProblemFile::ksupplier() const {
  if (kind != FileKind::ksupplier) throw std::invalid_argument("not a KSUPPLIER file");
  KSupplierInstance inst{clients, facility_points(), k};
  inst.validate();
  return inst;
}

NUkCInstance ProblemFile::nukc() const {
  if (kind == FileKind::nukc_metric) {
    return NUkCInstance::from_matrix(DistanceMatrix(matrix), radii, counts);
  }
  if (kind != FileKind::nukc) throw std::invalid_argument("not a NUKC file");
  return NUkCInstance::euclidean(clients, facilities_same ? std::vector<Point>{} : facilities,
                                 radii, counts);
}

ProblemFile ksupplier_file(const KSupplierInstance& instance, bool facilities_same) {
  ProblemFile f;
  f.kind = FileKind::ksupplier;
  f.dim = instance.dim();
  f.k = instance.k;
  f.clients = instance.clients;
  f.facilities_same = facilities_same;
  if (!facilities_same) f.facilities = instance.facilities;
  return f;
}

SolutionFile read_solution(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  SolutionFile s;
  const Line header = r.require("SOLUTION cost");
  r.expect_keyword(header, "SOLUTION");
  r.expect_tokens(header, 2, "SOLUTION cost");
  s.cost = r.number(header, 1);
  while (auto line = r.next()) {
    r.expect_keyword(*line, "BALL");
    if (line->tokens.size() < 3) throw r.error(line->number, 0, "BALL needs a centre and a radius");
    SolutionBall b;
    for (std::size_t i = 1; i + 1 < line->tokens.size(); ++i) b.values.push_back(r.number(*line, i));
    b.radius = r.number(*line, line->tokens.size() - 1);
    s.balls.push_back(std::move(b));
  }
  return s;
}

SolutionFile read_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_solution(in, path);
}

void write_solution(std::ostream& out, const SolutionFile& s,
                    const std::vector<std::string>& comments) {
  for (const std::string& c : comments) out << "# " << c << '\n';
  out << "SOLUTION " << format_double(s.cost) << '\n';
  for (const SolutionBall& b : s.balls) {
    out << "BALL";
    for (double v : b.values) out << ' ' << format_double(v);
    out << ' ' << format_double(b.radius) << '\n';
  }
}

Problem parse_problem(const std::string& name) {
  if (name == "ksupplier") return Problem::ksupplier;
  if (name == "kcenter") return Problem::kcenter;
  if (name == "nukc-general") return Problem::nukc_general;
  if (name == "nukc-euclid") return Problem::nukc_euclid;
  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::string problem_name(Problem problem) {
  switch (problem) {
    case Problem::ksupplier: return "ksupplier";
    case Problem::kcenter: return "kcenter";
    case Problem::nukc_general: return "nukc-general";
    case Problem::nukc_euclid: return "nukc-euclid";
  }
  return "";
}

namespace {

bool close(double claimed, double actual) {
  return std::abs(claimed - actual) <= 1e-7 * std::max(1.0, std::abs(actual));
}

VerifyResult fail(std::string message, double recomputed = 0.0) {
  return VerifyResult{false, recomputed, std::move(message)};
}

}  // namespace

VerifyResult verify_solution(const ProblemFile& problem, const SolutionFile& solution,
                             Problem kind) {
  const bool uniform = kind == Problem::ksupplier || kind == Problem::kcenter;
  if (uniform != (problem.kind == FileKind::ksupplier)) {
    return fail("problem type " + problem_name(kind) + " does not match the instance file");
  }
  if (kind == Problem::nukc_euclid && problem.kind != FileKind::nukc) {
    return fail("nukc-euclid needs a Euclidean NUKC file");
  }
  if (solution.balls.empty()) return fail("solution has no balls");
  if (solution.balls.size() > problem.k) {
    return fail("solution opens " + std::to_string(solution.balls.size()) + " balls, k is " +
                std::to_string(problem.k));
  }

  const bool metric = problem.kind == FileKind::nukc_metric;
  std::vector<Point> centers;
  std::vector<std::size_t> indices;
  for (const SolutionBall& b : solution.balls) {
    if (metric) {
      if (b.values.size() != 1 || b.values[0] < 0 || b.values[0] != std::floor(b.values[0]) ||
          b.values[0] >= double(problem.dim)) {
        return fail("metric ball centre must be a ground-set index");
      }
      indices.push_back(static_cast<std::size_t>(b.values[0]));
      continue;
    }
    if (b.values.size() != problem.dim) return fail("ball centre has the wrong dimension");
    Point c(b.values);
    const bool discrete = kind == Problem::ksupplier || kind == Problem::nukc_general;
    if (discrete) {
      const auto& f = problem.facility_points();
      if (std::find(f.begin(), f.end(), c) == f.end()) {
        return fail("ball centre is not one of the facilities");
      }
    }
    centers.push_back(std::move(c));
  }

  auto dist = [&](std::size_t client, std::size_t ball) {
    return metric ? problem.matrix[client][indices[ball]]
                  : distance(problem.clients[client], centers[ball]);
  };
  const std::size_t nc = metric ? problem.dim : problem.clients.size();

  if (uniform) {
    double cost = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      double near = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < centers.size(); ++b) near = std::min(near, dist(c, b));
      cost = std::max(cost, near);
    }
    if (!close(solution.cost, cost)) {
      return fail("claimed cost " + format_double(solution.cost) + " but recomputed " +
                      format_double(cost),
                  cost);
    }
    return VerifyResult{true, cost, "ok"};
  }

  // Radius class of each ball from radius = dilation * r_i.
  std::vector<std::size_t> cls(solution.balls.size(), 0);
  std::vector<std::size_t> used(problem.radii.size(), 0);
  for (std::size_t b = 0; b < solution.balls.size(); ++b) {
    if (solution.cost == 0.0) continue;
    bool found = false;
    for (std::size_t i = 0; i < problem.radii.size() && !found; ++i) {
      if (close(solution.balls[b].radius, solution.cost * problem.radii[i])) {
        cls[b] = i;
        found = true;
      }
    }
    if (!found) return fail("ball radius matches no radius class at the claimed dilation");
    if (++used[cls[b]] > problem.counts[cls[b]]) {
      return fail("radius class " + std::to_string(cls[b] + 1) + " exceeds its count");
    }
  }
  double dilation = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    double near = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < solution.balls.size(); ++b) {
      near = std::min(near, dist(c, b) / problem.radii[cls[b]]);
    }
    dilation = std::max(dilation, near);
  }
  if (!close(solution.cost, dilation)) {
    return fail("claimed dilation " + format_double(solution.cost) + " but recomputed " +
                    format_double(dilation),
                dilation);
  }
  return VerifyResult{true, dilation, "ok"};
}

}  // namespace geocluster
