#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "modlim/discrete.hpp"
#include "modlim/error.hpp"

using namespace modlim;
using namespace modlim::domain;
using namespace modlim::discrete;

namespace {

GraphDomain square() { return GraphDomain(BoundaryFunction::constant({0.0, 1.0}, 1.0)); }
GraphDomain step12() { return GraphDomain(BoundaryFunction::step({0.0, 2.0}, {1.0}, {1.0, 2.0})); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("rasterize the unit square at h = 0.1") {
  const auto g = rasterize(square(), 0.1, full_arcs(square()));
  CHECK(g.column_count() == 11);
  for (int c = 0; c < g.column_count(); ++c) CHECK(g.column_size(c) == 11);
  CHECK(g.node_count() == 121);
  CHECK(g.sources.size() == 11);
  CHECK(g.sinks.size() == 11);
  for (int v : g.sources) CHECK(g.nodes[v].y == 0.0);
  for (int v : g.sinks) CHECK(g.nodes[v].y == 1.0);
  const double area = std::accumulate(g.node_area.begin(), g.node_area.end(), 0.0);
  CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rasterize puts the breakpoint on a column") {
  const auto d = step12();
  const auto g = rasterize(d, 0.5, full_arcs(d));
  CHECK(std::find(g.column_x.begin(), g.column_x.end(), 1.0) != g.column_x.end());
  const double area = std::accumulate(g.node_area.begin(), g.node_area.end(), 0.0);
  CHECK(area == doctest::Approx(3.0).epsilon(1e-12));
  // The riser at x = 1 carries the node at the lower limit.
  const auto it = std::find(g.column_x.begin(), g.column_x.end(), 1.0);
  const int c = static_cast<int>(it - g.column_x.begin());
  bool has_lower = false;
  for (int v = g.column_begin[c]; v < g.column_begin[c + 1]; ++v) has_lower |= g.nodes[v].y == 1.0;
  CHECK(has_lower);
  CHECK(g.nodes[g.top_node(c)].y == 2.0);
}

TEST_CASE("node areas sum to the domain area") {
  const auto tent =
      GraphDomain(BoundaryFunction::piecewise_linear({0.0, 1.0, 2.0}, {0.5, 1.5, 0.5}));
  const auto g = rasterize(tent, 0.05, full_arcs(tent));
  const double area = std::accumulate(g.node_area.begin(), g.node_area.end(), 0.0);
  CHECK(area == doctest::Approx(tent.area()).epsilon(1e-9));
}

TEST_CASE("rasterize rejects coarse cells") {
  CHECK(code_of([] { rasterize(square(), 1.5, full_arcs(square())); }) ==
        Errc::kResolutionTooCoarse);
  const auto thin = GraphDomain(BoundaryFunction::step({0.0, 1.0}, {0.5, 0.6}, {1.0, 1.0, 1.0}));
  CHECK(code_of([&] { rasterize(thin, 0.2, full_arcs(thin)); }) == Errc::kResolutionTooCoarse);
}

TEST_CASE("unit square and rectangle calibration") {
  for (double h : {1.0 / 25, 1.0 / 50, 1.0 / 100}) {
    const auto g = rasterize(square(), h, full_arcs(square()));
    const auto e = solve_modulus(g);
    CHECK(e.converged);
    CHECK(std::abs(e.value - 1.0) <= 0.02);
    CHECK(e.gap <= 1e-3 * e.value);
    CHECK(e.lower_bound <= e.value);
    CHECK(e.upper_bound == e.value);
  }
  const auto rect = GraphDomain(BoundaryFunction::constant({0.0, 1.0}, 2.0));
  const auto e = solve_modulus(rasterize(rect, 0.01, full_arcs(rect)));
  CHECK(std::abs(e.value - 0.5) <= 0.02 * 0.5);
}

TEST_CASE("returned density is admissible and active paths are tight") {
  const auto d = step12();
  const auto g = rasterize(d, 0.05, full_arcs(d));
  SolveOptions opts;
  const auto e = solve_modulus(g, opts);
  CHECK(shortest_length(g, e.density) >= 1.0 - 1e-9);
  CHECK(energy(g, e.density) == doctest::Approx(e.value).epsilon(1e-12));
  CHECK(e.lower_bound <= e.value);
  CHECK(e.gap >= 0.0);
  CHECK_FALSE(e.active_paths.empty());
  for (const Path& p : e.active_paths) {
    const double len = path_length(g, e.density, p);
    CHECK(len >= 1.0 - opts.tol);
    CHECK(len <= 1.0 + opts.tol);
  }
  for (double rho : e.density) CHECK(rho >= 0.0);
}

TEST_CASE("half-plane quadrilateral surrogate") {
  // The box (0, 2R) x (0, R) with the points 0, 1, 2 placed at R, R + 1, R + 2.
  // The far boundary stands in for infinity and belongs to the [2, inf) arc.
  const double R = 16.0, h = 0.25;
  const auto box = GraphDomain(BoundaryFunction::constant({0.0, 2 * R}, R));
  auto g = rasterize(box, h, make_quadruple(R, R + 1, 2 * R, R + 2));
  std::vector<int> sinks = bottom_nodes(g, R + 2, 2 * R);
  const int last = g.column_count() - 1;
  for (int v = g.column_begin[last]; v < g.column_begin[last + 1]; ++v) sinks.push_back(v);
  for (int c = 0; c <= last; ++c) {
    if (g.column_x[c] >= R) sinks.push_back(g.top_node(c));
  }
  std::sort(sinks.begin(), sinks.end());
  sinks.erase(std::unique(sinks.begin(), sinks.end()), sinks.end());
  g.sinks = sinks;
  REQUIRE(g.sources == bottom_nodes(g, R, R + 1));

  SolveOptions opts;
  opts.tol = 1e-2;
  const auto e = solve_modulus(g, opts);
  MESSAGE("truncation radius " << R << ", h " << h << ": value " << e.value << ", lower "
                               << e.lower_bound);
  CHECK(std::abs(e.value - 1.0) <= 0.05);
}

TEST_CASE("restricted solver") {
  const auto g = rasterize(square(), 0.02, full_arcs(square()));
  const auto full = solve_modulus(g);
  SolveOptions wide;
  wide.eta = 1.5;
  const auto r = solve_modulus(g, wide);
  CHECK(std::abs(r.value - full.value) <= full.gap + r.gap + 1e-12);

  SolveOptions narrow;
  narrow.eta = 3 * g.h;
  const auto n = solve_modulus_restricted(g, narrow);
  CHECK(std::abs(n.value - 1.0) <= 0.03);
  CHECK(shortest_length(g, n.density, narrow.eta) >= 1.0 - 1e-9);

  SolveOptions bad;
  bad.eta = 0.5 * g.h;
  CHECK(code_of([&] { solve_modulus_restricted(g, bad); }) == Errc::kInfeasibleEta);
}

TEST_CASE("restricted step sweep is nonincreasing as eta shrinks") {
  const auto d = step12();
  const auto g = rasterize(d, 0.025, full_arcs(d));
  double prev = INFINITY, prev_gap = 0.0;
  for (double eta : {0.4, 0.2, 0.1}) {
    SolveOptions opts;
    opts.eta = eta;
    const auto e = solve_modulus_restricted(g, opts);
    CHECK(e.value <= prev + prev_gap + e.gap);
    CHECK(e.value >= 1.5 - e.gap - 0.03 * 1.5);
    prev = e.value;
    prev_gap = e.gap;
  }
  CHECK(std::abs(prev - 1.5) <= 0.06 * 1.5);
}

TEST_CASE("wide family") {
  const auto g = rasterize(square(), 0.05, full_arcs(square()));
  SolveOptions opts;
  opts.eta = 0.5;
  const auto w = solve_modulus_wide(g, opts);
  // A subfamily of the full family, and a proper one: short vertical curves
  // are excluded.
  CHECK(w.value > 0.0);
  const auto full = solve_modulus(g);
  CHECK(w.value < full.lower_bound);
}

TEST_CASE("disconnected instance") {
  auto g = rasterize(square(), 0.1, full_arcs(square()));
  g.sinks.clear();
  CHECK(code_of([&] { solve_modulus(g); }) == Errc::kDisconnected);
}

TEST_CASE("iteration limit carries the best estimate") {
  const auto d = step12();
  const auto g = rasterize(d, 0.05, full_arcs(d));
  SolveOptions opts;
  opts.max_iter = 2;
  try {
    solve_modulus(g, opts);
    FAIL("expected IterationLimit");
  } catch (const IterationLimitError& e) {
    CHECK(e.code() == Errc::kIterationLimit);
    CHECK(e.best().iterations == 2);
    CHECK(e.best().lower_bound <= e.best().value);
    CHECK_FALSE(e.best().converged);
  }
}

TEST_CASE("determinism and dumps") {
  const auto d = step12();
  const auto g = rasterize(d, 0.1, full_arcs(d));
  const auto a = solve_modulus(g), b = solve_modulus(g);
  CHECK(a.value == b.value);
  CHECK(a.density == b.density);
  const std::string csv = density_csv(g, a.density);
  CHECK(csv.rfind("x,y,rho\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == g.node_count() + 1);
  const std::string cert = certificate_text(a);
  CHECK(static_cast<std::size_t>(std::count(cert.begin(), cert.end(), '\n')) ==
        a.active_paths.size());
}

TEST_CASE("row_nodes and bottom_nodes") {
  const auto g = rasterize(square(), 0.1, full_arcs(square()));
  CHECK(bottom_nodes(g, 0.0, 0.5).size() == 6);
  const auto row = row_nodes(g, 0.5);
  CHECK(row.size() == 11);
  for (int v : row) CHECK(g.nodes[v].y == doctest::Approx(0.5));
}
