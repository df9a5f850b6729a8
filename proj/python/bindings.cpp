#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "geocluster/cli.hpp"
#include "geocluster/geometry.hpp"
#include "geocluster/instances.hpp"
#include "geocluster/nukc_euclidean.hpp"
#include "geocluster/nukc_general.hpp"
#include "geocluster/oracles.hpp"
#include "geocluster/separator.hpp"
#include "geocluster/supplier_solver.hpp"

namespace py = pybind11;
using namespace geocluster;

namespace {

using Coords = std::vector<std::vector<double>>;

std::vector<Point> to_points(const Coords& coords) {
  std::vector<Point> pts;
  pts.reserve(coords.size());
  for (const auto& c : coords) pts.emplace_back(c);
  return pts;
}

Coords to_coords(std::span<const Point> pts) {
  Coords out;
  for (const Point& p : pts) out.push_back(p.data());
  return out;
}

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["cost"] = r.cost;
  d["centers"] = to_coords(r.centers);
  d["center_indices"] = r.center_indices;
  d["probes"] = r.stats.probes;
  d["branches"] = r.stats.branches;
  return d;
}

py::dict nukc_dict(const NUkCSolution& s) {
  py::dict d;
  d["dilation"] = s.dilation;
  py::list balls;
  for (const NUkCBall& b : s.balls) {
    balls.append(py::make_tuple(b.point.data(), b.radius_index));
  }
  d["balls"] = balls;
  d["branches"] = s.branches;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "k-center, k-supplier and non-uniform k-center solvers";

  m.def("meb", [](const Coords& pts) {
    const Ball b = meb(to_points(pts));
    return py::make_tuple(b.center.data(), b.radius);
  }, py::arg("points"));

  m.def("c_d", &c_d, py::arg("d"));

  m.def("voronoi_separator", [](const Coords& pts, std::uint64_t seed) {
    const SeparatorResult r = voronoi_separator(to_points(pts), seed);
    py::dict d;
    d["z"] = to_coords(r.z);
    d["x1"] = r.x1;
    d["x2"] = r.x2;
    d["size_ratio"] = r.size_ratio;
    return d;
  }, py::arg("points"), py::arg("seed") = 0);

  m.def("crossing_check", [](const Coords& z, const Coords& x1, const Coords& x2) {
    return crossing_check(to_points(z), to_points(x1), to_points(x2));
  }, py::arg("z"), py::arg("x1"), py::arg("x2"));

  m.def("solve_ksupplier", [](const Coords& c, const Coords& f, std::size_t k, double eps,
                              std::uint64_t seed) {
    return report_dict(solve_ksupplier({to_points(c), to_points(f), k}, eps, seed));
  }, py::arg("clients"), py::arg("facilities"), py::arg("k"), py::arg("epsilon") = 0.2,
     py::arg("seed") = 0);

  m.def("hs_3approx", [](const Coords& c, const Coords& f, std::size_t k) {
    return report_dict(hs_3approx({to_points(c), to_points(f), k}));
  }, py::arg("clients"), py::arg("facilities"), py::arg("k"));

  m.def("solve_kcenter", [](const Coords& c, std::size_t k, double eps, std::uint64_t seed) {
    return report_dict(solve_kcenter(to_points(c), k, eps, seed));
  }, py::arg("clients"), py::arg("k"), py::arg("epsilon") = 0.2, py::arg("seed") = 0);

  m.def("gonzalez_2approx", [](const Coords& c, std::size_t k, std::uint64_t seed) {
    return report_dict(gonzalez_2approx(to_points(c), k, seed));
  }, py::arg("clients"), py::arg("k"), py::arg("seed") = 0);

  m.def("brute_ksupplier", [](const Coords& c, const Coords& f, std::size_t k) {
    const OracleResult r = brute_ksupplier({to_points(c), to_points(f), k});
    return py::make_tuple(r.cost, to_coords(r.centers));
  }, py::arg("clients"), py::arg("facilities"), py::arg("k"));

  m.def("brute_kcenter_continuous", [](const Coords& c, std::size_t k) {
    const OracleResult r = brute_kcenter_continuous(to_points(c), k);
    return py::make_tuple(r.cost, to_coords(r.centers));
  }, py::arg("clients"), py::arg("k"));

  m.def("solve_nukc_general", [](const Coords& c, const Coords& f, std::vector<double> radii,
                                 std::vector<std::size_t> counts) {
    return nukc_dict(solve_nukc_general(
        NUkCInstance::euclidean(to_points(c), to_points(f), std::move(radii), std::move(counts))));
  }, py::arg("clients"), py::arg("facilities"), py::arg("radii"), py::arg("counts"),
     "Facilities may be empty, meaning the clients themselves.");

  m.def("solve_nukc_euclidean", [](const Coords& c, const std::vector<double>& radii,
                                   const std::vector<std::size_t>& counts, double eps,
                                   std::uint64_t seed) {
    return nukc_dict(solve_nukc_euclidean(to_points(c), radii, counts, eps, seed).solution);
  }, py::arg("clients"), py::arg("radii"), py::arg("counts"), py::arg("epsilon") = 0.25,
     py::arg("seed") = 0);

  m.def("brute_nukc_euclidean", [](const Coords& c, const std::vector<double>& radii,
                                   const std::vector<std::size_t>& counts) {
    return nukc_dict(brute_nukc_euclidean(to_points(c), radii, counts).solution);
  }, py::arg("clients"), py::arg("radii"), py::arg("counts"));

  m.def("vc_gadget", [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                        std::size_t k) {
    const KSupplierInstance inst = vc_gadget(Graph{n, edges}, k);
    return py::make_tuple(to_coords(inst.clients), to_coords(inst.facilities));
  }, py::arg("n"), py::arg("edges"), py::arg("k"));

  m.def("jl_project", [](const Coords& pts, std::size_t target_dim, std::uint64_t seed,
                         std::size_t max_resamples) {
    const JLResult r = jl_project(to_points(pts), target_dim, seed, max_resamples);
    py::dict d;
    d["points"] = to_coords(r.points);
    d["min_ratio"] = r.report.min_ratio;
    d["max_ratio"] = r.report.max_ratio;
    d["accepted"] = r.report.accepted;
    d["resamples"] = r.report.resamples;
    return d;
  }, py::arg("points"), py::arg("target_dim"), py::arg("seed") = 0, py::arg("max_resamples") = 20);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
