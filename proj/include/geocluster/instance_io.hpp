#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "geocluster/geometry.hpp"
#include "geocluster/nukc_general.hpp"
#include "geocluster/supplier_solver.hpp"

namespace geocluster {

/// Malformed file; line and column are 1-based (column 0 means the whole line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class FileKind { ksupplier, nukc, nukc_metric };

/// Contents of an instance file.
struct ProblemFile {
  FileKind kind = FileKind::ksupplier;
  std::size_t dim = 0;  // point dimension, or ground-set size for metric files
  std::size_t k = 0;
  std::vector<Point> clients;
  std::vector<Point> facilities;
  bool facilities_same = false;
  std::vector<double> radii;
  std::vector<std::size_t> counts;
  std::vector<std::vector<double>> matrix;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;

  /// Facilities, or the clients when the file says FACILITIES SAME.
  const std::vector<Point>& facility_points() const;
  KSupplierInstance ksupplier() const;
  NUkCInstance nukc() const;
};

ProblemFile read_problem(std::istream& in, const std::string& source = "<input>");
ProblemFile read_problem_file(const std::string& path);
/// Writes the file format with round-trip exact decimals; `comments` become leading `#` lines.
void write_problem(std::ostream& out, const ProblemFile& file,
                   const std::vector<std::string>& comments = {});
void write_problem_file(const std::string& path, const ProblemFile& file,
                        const std::vector<std::string>& comments = {});

ProblemFile ksupplier_file(const KSupplierInstance& instance, bool facilities_same);

/// A solution: `SOLUTION cost` followed by one `BALL v1 ... vm radius` line per
/// ball, where v is the centre (or a single ground-set index for metric files).
struct SolutionBall {
  std::vector<double> values;
  double radius = 0.0;
};

struct SolutionFile {
  double cost = 0.0;
  std::vector<SolutionBall> balls;
};

SolutionFile read_solution(std::istream& in, const std::string& source = "<solution>");
SolutionFile read_solution_file(const std::string& path);
void write_solution(std::ostream& out, const SolutionFile& solution,
                    const std::vector<std::string>& comments = {});

/// Shortest decimal (at most 17 significant digits) that reads back to `value`.
std::string format_double(double value);

enum class Problem { ksupplier, kcenter, nukc_general, nukc_euclid };

Problem parse_problem(const std::string& name);
std::string problem_name(Problem problem);

struct VerifyResult {
  bool ok = false;
  double recomputed = 0.0;
  std::string message;
};

/// Recomputes the cost (or dilation) of `solution` and checks it against the
/// claimed value (1e-7 relative), the centre constraints and the ball budgets.
VerifyResult verify_solution(const ProblemFile& problem, const SolutionFile& solution,
                             Problem kind);

}  // namespace geocluster
