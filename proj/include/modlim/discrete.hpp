#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modlim/domain.hpp"
#include "modlim/error.hpp"

namespace modlim::discrete {

struct Node {
  double x = 0.0;
  double y = 0.0;
  int column = 0;
};

struct Arc {
  int to = 0;
  double length = 0.0;
};

/// Column-structured raster of a graph domain.
///
/// Columns sit on a non-uniform x-grid that contains the interval ends, every
/// breakpoint of f and every quadruple coordinate; each gap between those is
/// split into equal cells no wider than h. Within a column, nodes are spaced
/// h apart starting at y = 0 and end at the closure height of the column;
/// jump columns also carry a node at the lower one-sided limit.
///
/// Arcs join consecutive nodes of a column and nodes of adjacent columns whose
/// heights differ by at most 1.5 h, provided the straight segment stays in the
/// closed domain.
struct DiscreteDomain {
  double h = 0.0;
  std::vector<double> column_x;
  std::vector<int> column_begin;  // nodes of column c are [column_begin[c], column_begin[c+1])
  std::vector<Node> nodes;
  std::vector<int> arc_begin;  // CSR offsets into `arcs`
  std::vector<Arc> arcs;
  std::vector<double> node_area;
  std::vector<int> sources;
  std::vector<int> sinks;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int column_count() const { return static_cast<int>(column_x.size()); }
  int column_size(int c) const { return column_begin[c + 1] - column_begin[c]; }
  int top_node(int c) const { return column_begin[c + 1] - 1; }
};

DiscreteDomain rasterize(const domain::GraphDomain& d, double h, const domain::BoundaryQuadruple& q);

/// Bottom nodes with x in [lo, hi].
std::vector<int> bottom_nodes(const DiscreteDomain& g, double lo, double hi);
/// Nodes at height y (within h/4) across every column tall enough to hold one.
std::vector<int> row_nodes(const DiscreteDomain& g, double y);

struct SolveOptions {
  double tol = 1e-3;  // relative duality gap
  int max_iter = 2000;
  std::optional<double> eta;  // restrict to curves of horizontal extent < eta
  std::uint64_t seed = 1;
  int max_sweeps = 10;  // coordinate-descent passes per outer iteration
};

using Path = std::vector<int>;

struct ModulusEstimate {
  double value = 0.0;  // energy of the returned admissible density
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double gap = 0.0;
  std::vector<double> density;  // admissible: every oracle path has rho-length >= 1
  std::vector<Path> active_paths;
  int iterations = 0;
  int paths_generated = 0;
  bool converged = false;
};

class IterationLimitError : public Error {
 public:
  IterationLimitError(const std::string& what, ModulusEstimate best)
      : Error(Errc::kIterationLimit, what), best_(std::move(best)) {}
  const ModulusEstimate& best() const { return best_; }

 private:
  ModulusEstimate best_;
};

/// p = 2 modulus of the source-to-sink paths of g.
ModulusEstimate solve_modulus(const DiscreteDomain& g, const SolveOptions& opts = {});

/// Same, restricted to paths whose column x-range is shorter than opts.eta.
ModulusEstimate solve_modulus_restricted(const DiscreteDomain& g, const SolveOptions& opts);

/// Complementary family: paths whose x-range is at least opts.eta.
ModulusEstimate solve_modulus_wide(const DiscreteDomain& g, const SolveOptions& opts);

/// Shortest source-to-sink rho-length. With `eta`, over paths of x-range
/// below eta. +inf when no path exists.
double shortest_length(const DiscreteDomain& g, const std::vector<double>& rho,
                       std::optional<double> eta = std::nullopt);

/// rho-length of a node path with averaged edge weights.
double path_length(const DiscreteDomain& g, const std::vector<double>& rho, const Path& p);

double energy(const DiscreteDomain& g, const std::vector<double>& rho);

/// CSV "x,y,rho" with a header row.
std::string density_csv(const DiscreteDomain& g, const std::vector<double>& rho);
/// One path per line, node indices separated by spaces.
std::string certificate_text(const ModulusEstimate& est);

}  // namespace modlim::discrete
