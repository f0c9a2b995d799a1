#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace modlim::domain {

/// Closed/open x-range (lo, hi); both finite, lo < hi.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double x, double slack = 0.0) const {
    return x >= lo - slack && x <= hi + slack;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval make_interval(double lo, double hi);

enum class FunctionKind { kStep, kPiecewiseLinear, kSampledContinuous };

std::string_view kind_name(FunctionKind kind);
std::optional<FunctionKind> parse_kind(std::string_view name);

/// Unvalidated description of a boundary function, as read from a domain
/// spec file.
///
/// step: `breakpoints` are the interior jump locations, `values` holds one
/// value per piece (breakpoints.size() + 1). `breakpoint_values`, when given,
/// stores f at each breakpoint; it must equal the smaller one-sided limit.
///
/// piecewise-linear / sampled-continuous: `breakpoints` are knots covering
/// the interval (first == lo, last == hi) and `values` holds f at each knot.
/// Sampled functions are interpolated by monotone cubic Hermite (PCHIP).
struct FunctionSpec {
  FunctionKind kind = FunctionKind::kStep;
  std::vector<double> breakpoints;
  std::vector<double> values;
  std::optional<std::vector<double>> breakpoint_values;
};

/// A validated lower-semicontinuous function on a closed interval. Values at
/// the interval endpoints are the one-sided limits from inside.
///
/// The function carries a multiplicative vertical scale so that vertical
/// stretches compose exactly.
class BoundaryFunction {
 public:
  /// Validates `spec` on `interval`. With `require_positive` false the
  /// positivity check is skipped (lower boundaries of strip domains).
  static BoundaryFunction build(const FunctionSpec& spec, Interval interval,
                                bool require_positive = true);

  static BoundaryFunction constant(Interval interval, double value);
  static BoundaryFunction step(Interval interval, std::vector<double> breakpoints,
                               std::vector<double> values);
  static BoundaryFunction piecewise_linear(std::vector<double> knots,
                                           std::vector<double> values);

  FunctionKind kind() const { return kind_; }
  const Interval& interval() const { return interval_; }
  double scale() const { return scale_; }

  /// step: interior jump points; other kinds: the knots (including ends).
  std::span<const double> breakpoints() const { return breakpoints_; }
  /// Piece values (step) or knot values (other kinds), with scale applied.
  std::vector<double> values() const;

  /// The lsc value f(x). At breakpoints of a step function this is the
  /// smaller one-sided limit.
  double operator()(double x) const;
  double left_limit(double x) const;
  double right_limit(double x) const;
  /// Closure height: the larger of the two one-sided limits.
  double upper(double x) const;
  /// min of f over the closed range [a, b] (attained since f is lsc).
  double min_on(double a, double b) const;
  double min_value() const { return min_on(interval_.lo, interval_.hi); }

  /// Exact integral of f over [a, b].
  double integral(double a, double b) const;
  double integral() const { return integral(interval_.lo, interval_.hi); }

  /// Sorted points where f is not smooth (piece boundaries), within [a, b],
  /// always including a and b.
  std::vector<double> split_points(double a, double b) const;

  /// true when x is a step breakpoint with differing one-sided limits.
  bool is_jump(double x, double tol = 1e-12) const;

  BoundaryFunction scaled(double eps) const;
  BoundaryFunction reflected() const;

  /// Minimum width between consecutive breakpoints, including the ends.
  double min_piece_width() const;

 private:
  BoundaryFunction() = default;

  std::size_t piece_index(double x) const;  // step: index of piece containing x (right-continuous)
  std::size_t segment_index(double x) const;  // knot kinds
  double raw_eval_segment(std::size_t seg, double x) const;
  double raw_segment_integral(std::size_t seg, double a, double b) const;

  FunctionKind kind_ = FunctionKind::kStep;
  Interval interval_;
  std::vector<double> breakpoints_;
  std::vector<double> raw_values_;
  std::vector<double> slopes_;  // PCHIP derivatives; empty otherwise
  double scale_ = 1.0;
};

/// Region {(x, y) : x in (lo, hi), 0 < y < f(x)}.
class GraphDomain {
 public:
  explicit GraphDomain(BoundaryFunction f);

  const Interval& interval() const { return f_.interval(); }
  const BoundaryFunction& boundary() const { return f_; }
  double area() const { return area_; }

 private:
  BoundaryFunction f_;
  double area_;
};

GraphDomain build_graph_domain(const FunctionSpec& spec, Interval interval);

/// T_eps(x, y) = (x, eps * y).
GraphDomain scale_vertical(const GraphDomain& d, double eps);

/// Region between a lower graph g and an upper graph f on a common interval.
class StripDomain {
 public:
  StripDomain(BoundaryFunction upper, BoundaryFunction lower);

  const Interval& interval() const { return upper_.interval(); }
  const BoundaryFunction& upper() const { return upper_; }
  const BoundaryFunction& lower() const { return lower_; }
  double gap(double x) const { return upper_(x) - lower_(x); }

 private:
  BoundaryFunction upper_;
  BoundaryFunction lower_;
};

enum class Edge { kBottom, kTop };
enum class Side { kNone, kLeft, kRight };

struct PrimeEnd {
  double x = 0.0;
  Edge edge = Edge::kBottom;
  Side side = Side::kNone;
};

/// Four prime ends in counterclockwise order: (a, b) on the bottom edge,
/// (c, d) on the top edge, so a.x < b.x and c.x >= d.x.
struct BoundaryQuadruple {
  PrimeEnd a, b, c, d;
};

BoundaryQuadruple make_quadruple(double a, double b, double c, double d);
/// Whole bottom edge against the whole top edge.
BoundaryQuadruple full_arcs(const GraphDomain& d);

/// Throws InvalidQuadruple if `q` is not a valid configuration for `d`.
void validate_quadruple(const GraphDomain& d, const BoundaryQuadruple& q);

/// [a.x, b.x] intersected with [d.x, c.x]; empty when the intersection has
/// zero length.
std::optional<Interval> overlap_interval(const GraphDomain& d, const BoundaryQuadruple& q);

/// Mirror image under x -> lo + hi - x, with the quadruple relabeled so it
/// stays counterclockwise.
GraphDomain reflect(const GraphDomain& d);
BoundaryQuadruple reflect(const GraphDomain& d, const BoundaryQuadruple& q);

}  // namespace modlim::domain
