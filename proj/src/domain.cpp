#include "modlim/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "modlim/error.hpp"

namespace modlim::domain {
namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool strictly_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) return false;
  }
  return true;
}

void check_values(const std::vector<double>& values, bool require_positive,
                  const char* field) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::isnan(v)) {
      raise(Errc::kMalformedSpec, std::string(field) + "[" + std::to_string(i) + "] is NaN");
    }
    if (std::isinf(v)) {
      raise(Errc::kInfiniteArea, std::string(field) + "[" + std::to_string(i) +
                                     "] is infinite; the domain would have infinite area");
    }
    if (require_positive && v <= 0.0) {
      raise(Errc::kNonPositive, std::string(field) + "[" + std::to_string(i) +
                                    "] = " + fmt_num(v) + " must be > 0");
    }
  }
}

// Fritsch-Carlson style derivatives (the same shape-preserving rule as the
// common PCHIP implementations).
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) {
      d[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
  }
  auto edge = [](double h0, double h1, double m0, double m1) {
    double dd = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (std::signbit(dd) != std::signbit(m0) || m0 == 0.0) {
      dd = 0.0;
    } else if (std::signbit(m0) != std::signbit(m1) && std::abs(dd) > 3.0 * std::abs(m0)) {
      dd = 3.0 * m0;
    }
    return dd;
  };
  d[0] = edge(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

Side mirror(Side s) {
  switch (s) {
    case Side::kLeft: return Side::kRight;
    case Side::kRight: return Side::kLeft;
    case Side::kNone: return Side::kNone;
  }
  return Side::kNone;
}

}  // namespace

Interval make_interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    raise(Errc::kUnboundedInterval, "interval [" + fmt_num(lo) + ", " + fmt_num(hi) +
                                        "] must be bounded");
  }
  if (!(lo < hi)) {
    raise(Errc::kMalformedSpec, "interval requires lo < hi, got [" + fmt_num(lo) + ", " +
                                    fmt_num(hi) + "]");
  }
  return Interval{lo, hi};
}

std::string_view kind_name(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::kStep: return "step";
    case FunctionKind::kPiecewiseLinear: return "piecewise-linear";
    case FunctionKind::kSampledContinuous: return "sampled-continuous";
  }
  return "unknown";
}

std::optional<FunctionKind> parse_kind(std::string_view name) {
  if (name == "step") return FunctionKind::kStep;
  if (name == "piecewise-linear") return FunctionKind::kPiecewiseLinear;
  if (name == "sampled-continuous") return FunctionKind::kSampledContinuous;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// BoundaryFunction

BoundaryFunction BoundaryFunction::build(const FunctionSpec& spec, Interval interval,
                                         bool require_positive) {
  interval = make_interval(interval.lo, interval.hi);
  BoundaryFunction f;
  f.kind_ = spec.kind;
  f.interval_ = interval;

  check_values(spec.values, require_positive, "values");
  for (double b : spec.breakpoints) {
    if (!std::isfinite(b)) raise(Errc::kMalformedSpec, "breakpoints must be finite");
  }
  if (!strictly_increasing(spec.breakpoints)) {
    raise(Errc::kMalformedSpec, "breakpoints must be strictly ascending");
  }

  if (spec.kind == FunctionKind::kStep) {
    if (spec.values.size() != spec.breakpoints.size() + 1) {
      raise(Errc::kMalformedSpec, "step function needs breakpoints.size()+1 = " +
                                      std::to_string(spec.breakpoints.size() + 1) +
                                      " values, got " + std::to_string(spec.values.size()));
    }
    for (double b : spec.breakpoints) {
      if (!(b > interval.lo && b < interval.hi)) {
        raise(Errc::kMalformedSpec, "step breakpoint " + fmt_num(b) +
                                        " must lie strictly inside the interval");
      }
    }
    if (spec.breakpoint_values) {
      const auto& bv = *spec.breakpoint_values;
      if (bv.size() != spec.breakpoints.size()) {
        raise(Errc::kMalformedSpec, "breakpoint_values must have one entry per breakpoint");
      }
      check_values(bv, require_positive, "breakpoint_values");
      for (std::size_t i = 0; i < bv.size(); ++i) {
        const double lower = std::min(spec.values[i], spec.values[i + 1]);
        const double tol = 1e-12 * std::max(1.0, std::abs(lower));
        if (bv[i] > lower + tol) {
          raise(Errc::kNotLsc, "value " + fmt_num(bv[i]) + " at breakpoint x=" +
                                   fmt_num(spec.breakpoints[i]) +
                                   " exceeds the one-sided limit " + fmt_num(lower));
        }
        if (bv[i] < lower - tol) {
          raise(Errc::kMalformedSpec,
                "value " + fmt_num(bv[i]) + " at breakpoint x=" + fmt_num(spec.breakpoints[i]) +
                    " is below both one-sided limits; slit domains are not representable");
        }
      }
    }
  } else {
    if (spec.breakpoint_values) {
      raise(Errc::kMalformedSpec, "breakpoint_values only applies to step functions");
    }
    if (spec.breakpoints.size() < 2) {
      raise(Errc::kMalformedSpec, "continuous kinds need at least two knots");
    }
    if (spec.values.size() != spec.breakpoints.size()) {
      raise(Errc::kMalformedSpec, "continuous kinds need one value per knot");
    }
    const double tol = 1e-12 * std::max(1.0, interval.length());
    if (std::abs(spec.breakpoints.front() - interval.lo) > tol ||
        std::abs(spec.breakpoints.back() - interval.hi) > tol) {
      raise(Errc::kMalformedSpec, "knots must start at the interval's lo and end at its hi");
    }
  }

  f.breakpoints_ = spec.breakpoints;
  f.raw_values_ = spec.values;
  if (spec.kind != FunctionKind::kStep) {
    f.breakpoints_.front() = interval.lo;
    f.breakpoints_.back() = interval.hi;
  }
  if (spec.kind == FunctionKind::kSampledContinuous) {
    f.slopes_ = pchip_slopes(f.breakpoints_, f.raw_values_);
  }
  return f;
}

BoundaryFunction BoundaryFunction::constant(Interval interval, double value) {
  return build(FunctionSpec{FunctionKind::kStep, {}, {value}, std::nullopt}, interval);
}

BoundaryFunction BoundaryFunction::step(Interval interval, std::vector<double> breakpoints,
                                        std::vector<double> values) {
  return build(FunctionSpec{FunctionKind::kStep, std::move(breakpoints), std::move(values),
                            std::nullopt},
               interval);
}

BoundaryFunction BoundaryFunction::piecewise_linear(std::vector<double> knots,
                                                    std::vector<double> values) {
  if (knots.size() < 2) raise(Errc::kMalformedSpec, "need at least two knots");
  const Interval iv{knots.front(), knots.back()};
  return build(FunctionSpec{FunctionKind::kPiecewiseLinear, std::move(knots), std::move(values),
                            std::nullopt},
               iv);
}

std::vector<double> BoundaryFunction::values() const {
  std::vector<double> out(raw_values_);
  for (double& v : out) v *= scale_;
  return out;
}

std::size_t BoundaryFunction::piece_index(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin());
}

std::size_t BoundaryFunction::segment_index(double x) const {
  const auto n = breakpoints_.size();
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  std::size_t i = it == breakpoints_.begin() ? 0 : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return std::min(i, n - 2);
}

double BoundaryFunction::raw_eval_segment(std::size_t seg, double x) const {
  const double x0 = breakpoints_[seg], x1 = breakpoints_[seg + 1];
  const double y0 = raw_values_[seg], y1 = raw_values_[seg + 1];
  const double h = x1 - x0;
  const double t = std::clamp((x - x0) / h, 0.0, 1.0);
  if (kind_ == FunctionKind::kPiecewiseLinear) {
    return y0 + (y1 - y0) * t;
  }
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y0 + h10 * h * slopes_[seg] + h01 * y1 + h11 * h * slopes_[seg + 1];
}

double BoundaryFunction::raw_segment_integral(std::size_t seg, double a, double b) const {
  if (b <= a) return 0.0;
  if (kind_ == FunctionKind::kPiecewiseLinear) {
    return 0.5 * (b - a) * (raw_eval_segment(seg, a) + raw_eval_segment(seg, b));
  }
  // Two-point Gauss-Legendre is exact for the cubic pieces.
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const double off = half / std::sqrt(3.0);
  return half * (raw_eval_segment(seg, mid - off) + raw_eval_segment(seg, mid + off));
}

double BoundaryFunction::left_limit(double x) const {
  if (kind_ != FunctionKind::kStep) return (*this)(x);
  if (x <= interval_.lo) return right_limit(x);
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return scale_ * raw_values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double BoundaryFunction::right_limit(double x) const {
  if (kind_ != FunctionKind::kStep) return (*this)(x);
  if (x >= interval_.hi) return left_limit(x);
  return scale_ * raw_values_[piece_index(x)];
}

double BoundaryFunction::operator()(double x) const {
  if (kind_ == FunctionKind::kStep) {
    return std::min(left_limit(x), right_limit(x));
  }
  return scale_ * raw_eval_segment(segment_index(x), x);
}

double BoundaryFunction::upper(double x) const {
  return std::max(left_limit(x), right_limit(x));
}

double BoundaryFunction::min_on(double a, double b) const {
  a = std::max(a, interval_.lo);
  b = std::min(b, interval_.hi);
  if (b < a) std::swap(a, b);
  double m = std::min((*this)(a), (*this)(b));
  if (kind_ == FunctionKind::kStep) {
    if (b > a) {
      const std::size_t first = piece_index(a);
      auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), b);
      const auto last = static_cast<std::size_t>(it - breakpoints_.begin());
      for (std::size_t k = first; k <= last && k < raw_values_.size(); ++k) {
        m = std::min(m, scale_ * raw_values_[k]);
      }
    }
  } else {
    // Each PCHIP/linear segment is monotone, so interior extrema sit on knots.
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
      if (breakpoints_[k] > a && breakpoints_[k] < b) m = std::min(m, scale_ * raw_values_[k]);
    }
  }
  return m;
}

double BoundaryFunction::integral(double a, double b) const {
  a = std::max(a, interval_.lo);
  b = std::min(b, interval_.hi);
  if (b <= a) return 0.0;
  double total = 0.0;
  if (kind_ == FunctionKind::kStep) {
    double left = interval_.lo;
    for (std::size_t k = 0; k < raw_values_.size(); ++k) {
      const double right = k < breakpoints_.size() ? breakpoints_[k] : interval_.hi;
      const double lo = std::max(a, left), hi = std::min(b, right);
      if (hi > lo) total += (hi - lo) * raw_values_[k];
      left = right;
    }
  } else {
    for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
      const double lo = std::max(a, breakpoints_[k]), hi = std::min(b, breakpoints_[k + 1]);
      if (hi > lo) total += raw_segment_integral(k, lo, hi);
    }
  }
  return scale_ * total;
}

std::vector<double> BoundaryFunction::split_points(double a, double b) const {
  std::vector<double> pts{a};
  for (double x : breakpoints_) {
    if (x > a && x < b) pts.push_back(x);
  }
  pts.push_back(b);
  return pts;
}

bool BoundaryFunction::is_jump(double x, double tol) const {
  if (kind_ != FunctionKind::kStep) return false;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (std::abs(breakpoints_[i] - x) <= tol * std::max(1.0, std::abs(x))) {
      return raw_values_[i] != raw_values_[i + 1];
    }
  }
  return false;
}

BoundaryFunction BoundaryFunction::scaled(double eps) const {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    raise(Errc::kNonPositive, "vertical scale factor must be a positive finite number, got " +
                                  fmt_num(eps));
  }
  BoundaryFunction g(*this);
  g.scale_ = scale_ * eps;
  return g;
}

BoundaryFunction BoundaryFunction::reflected() const {
  BoundaryFunction g(*this);
  const double s = interval_.lo + interval_.hi;
  std::reverse(g.breakpoints_.begin(), g.breakpoints_.end());
  for (double& x : g.breakpoints_) x = s - x;
  std::reverse(g.raw_values_.begin(), g.raw_values_.end());
  if (kind_ != FunctionKind::kStep) {
    g.breakpoints_.front() = interval_.lo;
    g.breakpoints_.back() = interval_.hi;
  }
  if (kind_ == FunctionKind::kSampledContinuous) {
    g.slopes_ = pchip_slopes(g.breakpoints_, g.raw_values_);
  }
  return g;
}

double BoundaryFunction::min_piece_width() const {
  std::vector<double> pts{interval_.lo};
  for (double x : breakpoints_) {
    if (x > interval_.lo && x < interval_.hi) pts.push_back(x);
  }
  pts.push_back(interval_.hi);
  double w = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < pts.size(); ++i) w = std::min(w, pts[i] - pts[i - 1]);
  return w;
}

// ---------------------------------------------------------------------------
// Domains

GraphDomain::GraphDomain(BoundaryFunction f) : f_(std::move(f)), area_(f_.integral()) {
  if (!std::isfinite(area_)) raise(Errc::kInfiniteArea, "domain area is not finite");
  if (!(area_ > 0.0)) raise(Errc::kNonPositive, "domain area must be positive");
}

GraphDomain build_graph_domain(const FunctionSpec& spec, Interval interval) {
  return GraphDomain(BoundaryFunction::build(spec, interval));
}

GraphDomain scale_vertical(const GraphDomain& d, double eps) {
  return GraphDomain(d.boundary().scaled(eps));
}

StripDomain::StripDomain(BoundaryFunction upper, BoundaryFunction lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  const Interval& iu = upper_.interval();
  const Interval& il = lower_.interval();
  const double tol = 1e-12 * std::max(1.0, iu.length());
  if (std::abs(iu.lo - il.lo) > tol || std::abs(iu.hi - il.hi) > tol) {
    raise(Errc::kMalformedSpec, "strip boundaries must share an interval");
  }
  auto pts = upper_.split_points(iu.lo, iu.hi);
  auto more = lower_.split_points(iu.lo, iu.hi);
  pts.insert(pts.end(), more.begin(), more.end());
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i];
    if (upper_.left_limit(x) < lower_.left_limit(x) ||
        upper_.right_limit(x) < lower_.right_limit(x)) {
      raise(Errc::kDegenerateStrip, "lower boundary exceeds upper boundary near x=" + fmt_num(x));
    }
    if (i + 1 < pts.size() && pts[i + 1] > x) {
      const double mid = 0.5 * (x + pts[i + 1]);
      if (upper_(mid) < lower_(mid)) {
        raise(Errc::kDegenerateStrip,
              "lower boundary exceeds upper boundary near x=" + fmt_num(mid));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Prime ends

BoundaryQuadruple make_quadruple(double a, double b, double c, double d) {
  return BoundaryQuadruple{PrimeEnd{a, Edge::kBottom, Side::kNone},
                           PrimeEnd{b, Edge::kBottom, Side::kNone},
                           PrimeEnd{c, Edge::kTop, Side::kNone},
                           PrimeEnd{d, Edge::kTop, Side::kNone}};
}

BoundaryQuadruple full_arcs(const GraphDomain& d) {
  const Interval& iv = d.interval();
  return make_quadruple(iv.lo, iv.hi, iv.hi, iv.lo);
}

void validate_quadruple(const GraphDomain& d, const BoundaryQuadruple& q) {
  const Interval& iv = d.interval();
  const double slack = 1e-12 * std::max(1.0, iv.length());
  const PrimeEnd* ends[] = {&q.a, &q.b, &q.c, &q.d};
  const char* names[] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i) {
    const PrimeEnd& e = *ends[i];
    if (!std::isfinite(e.x) || !iv.contains(e.x, slack)) {
      raise(Errc::kInvalidQuadruple, std::string("prime end ") + names[i] + " at x=" +
                                         fmt_num(e.x) + " lies outside the domain interval");
    }
    const Edge expected = i < 2 ? Edge::kBottom : Edge::kTop;
    if (e.edge != expected) {
      raise(Errc::kInvalidQuadruple,
            std::string("prime end ") + names[i] + " must lie on the " +
                (expected == Edge::kBottom ? "bottom" : "top") +
                " edge; only the bottom-arc/top-arc configuration is supported");
    }
    if (e.side != Side::kNone) {
      if (e.edge == Edge::kBottom || !d.boundary().is_jump(e.x)) {
        raise(Errc::kInvalidQuadruple, std::string("prime end ") + names[i] +
                                           " carries a side tag but x=" + fmt_num(e.x) +
                                           " is not a jump of the boundary");
      }
    }
  }
  if (!(q.a.x < q.b.x)) {
    raise(Errc::kInvalidQuadruple, "bottom arc needs a.x < b.x (counterclockwise order)");
  }
  if (q.c.x < q.d.x) {
    raise(Errc::kInvalidQuadruple, "top arc needs c.x >= d.x (counterclockwise order)");
  }
  if (q.c.x == q.d.x) {
    // Only a riser (the vertical boundary segment at a jump) is a nondegenerate
    // top arc with a single x-coordinate.
    if (!(d.boundary().is_jump(q.c.x) && q.c.side == Side::kRight && q.d.side == Side::kLeft)) {
      raise(Errc::kInvalidQuadruple, "top arc endpoints c and d coincide");
    }
  }
}

std::optional<Interval> overlap_interval(const GraphDomain& d, const BoundaryQuadruple& q) {
  validate_quadruple(d, q);
  const double p = std::max(q.a.x, q.d.x);
  const double r = std::min(q.b.x, q.c.x);
  if (!(r > p)) return std::nullopt;
  return Interval{p, r};
}

GraphDomain reflect(const GraphDomain& d) { return GraphDomain(d.boundary().reflected()); }

BoundaryQuadruple reflect(const GraphDomain& d, const BoundaryQuadruple& q) {
  const double s = d.interval().lo + d.interval().hi;
  BoundaryQuadruple r;
  r.a = PrimeEnd{s - q.b.x, Edge::kBottom, Side::kNone};
  r.b = PrimeEnd{s - q.a.x, Edge::kBottom, Side::kNone};
  r.c = PrimeEnd{s - q.d.x, Edge::kTop, mirror(q.d.side)};
  r.d = PrimeEnd{s - q.c.x, Edge::kTop, mirror(q.c.side)};
  return r;
}

}  // namespace modlim::domain
