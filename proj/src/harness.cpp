#include "modlim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modlim/error.hpp"
#include "modlim/vertical.hpp"

namespace modlim::harness {

using domain::BoundaryFunction;
using domain::FunctionKind;
using domain::GraphDomain;
using domain::BoundaryQuadruple;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double hull_min(const GraphDomain& d, const BoundaryQuadruple& q) {
  const double lo = std::min(q.a.x, q.d.x), hi = std::max(q.b.x, q.c.x);
  return d.boundary().min_on(lo, hi);
}

void check_decreasing(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] < xs[i - 1])) {
      raise(Errc::kInvalidArgument, std::string(what) + " must be strictly decreasing");
    }
  }
  for (double x : xs) {
    if (!(x > 0.0)) raise(Errc::kInvalidArgument, std::string(what) + " entries must be positive");
  }
}

}  // namespace

double coupled_h(const GraphDomain& d, const BoundaryQuadruple& q, double eps,
                 double cells_per_min_height) {
  return eps * hull_min(d, q) / cells_per_min_height;
}

Extrapolation richardson(const std::vector<double>& eps, const std::vector<double>& values,
                         const std::vector<double>& gaps) {
  if (eps.size() != values.size() || eps.size() < 3) {
    raise(Errc::kInvalidArgument, "extrapolation needs at least 3 points");
  }
  const std::size_t n = eps.size();
  const double e[3] = {eps[n - 3], eps[n - 2], eps[n - 1]};
  const double v[3] = {values[n - 3], values[n - 2], values[n - 1]};
  Extrapolation out;
  for (int i = 0; i < 3; ++i) {
    // Lagrange weight of point i at eps = 0.
    double w = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j != i) w *= (0.0 - e[j]) / (e[i] - e[j]);
    }
    out.limit += w * v[i];
    if (!gaps.empty()) out.limit_gap += std::abs(w) * gaps[n - 3 + i];
  }
  const double d1 = v[0] - v[1], d2 = v[1] - v[2];
  out.observed_rate = (d1 != 0.0 && d2 != 0.0)
                          ? std::log(std::abs(d1 / d2)) / std::log(e[0] / e[1])
                          : std::numeric_limits<double>::quiet_NaN();
  return out;
}

SweepReport epsilon_sweep(const GraphDomain& d, const BoundaryQuadruple& q,
                          const std::vector<double>& eps_list, const HSchedule& schedule,
                          const discrete::SolveOptions& opts) {
  domain::validate_quadruple(d, q);
  if (eps_list.size() < 3) raise(Errc::kInvalidArgument, "extrapolation needs at least 3 points");
  check_decreasing(eps_list, "eps_list");
  if (!schedule.h.empty() && schedule.h.size() != eps_list.size()) {
    raise(Errc::kInvalidArgument, "h schedule needs one cell size per eps");
  }
  if (schedule.cells_per_min_height < kMinCellsPerHeight) {
    raise(Errc::kScheduleTooCoarse, "at least 8 cells across the thinnest stretched height");
  }

  SweepReport rep;
  rep.target = vertical::modulus_vertical(vertical::vertical_family(d, q));
  const double allowance = kDiscretizationAllowance * rep.target;
  const double mf = hull_min(d, q);

  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const double eps = eps_list[i];
    const double cap = eps * mf / kMinCellsPerHeight;
    double h = coupled_h(d, q, eps, schedule.cells_per_min_height);
    if (!schedule.h.empty()) {
      h = schedule.h[i];
      if (h > cap * (1.0 + 1e-12)) {
        raise(Errc::kScheduleTooCoarse, "h = " + std::to_string(h) + " exceeds eps min f / 8 = " +
                                            std::to_string(cap) + " at eps = " +
                                            std::to_string(eps));
      }
    }
    const GraphDomain stretched = domain::scale_vertical(d, eps);
    const auto g = discrete::rasterize(stretched, h, q);
    SweepRow row;
    row.eps = eps;
    row.h = h;
    discrete::ModulusEstimate est;
    try {
      est = discrete::solve_modulus(g, opts);
    } catch (const discrete::IterationLimitError& e) {
      est = e.best();
      row.converged = false;
      rep.complete = false;
    }
    row.raw_modulus = est.value;
    row.eps_times_modulus = eps * est.value;
    row.lower_bound = eps * est.lower_bound;
    row.gap = eps * est.gap;
    row.allowance = allowance;
    row.iterations = est.iterations;
    row.above_vertical = row.eps_times_modulus >= rep.target - row.gap - allowance;
    rep.rows_above_vertical = rep.rows_above_vertical && row.above_vertical;
    rep.rows.push_back(row);
  }

  std::vector<double> es, vs, gs;
  for (const SweepRow& r : rep.rows) {
    es.push_back(r.eps);
    vs.push_back(r.eps_times_modulus);
    gs.push_back(r.gap);
  }
  const Extrapolation ex = richardson(es, vs, gs);
  rep.extrapolated_limit = ex.limit;
  rep.observed_rate = ex.observed_rate;
  rep.limit_gap = ex.limit_gap;
  rep.relative_error = rep.target > 0.0 ? std::abs(ex.limit - rep.target) / rep.target
                                        : std::abs(ex.limit);
  const std::size_t n = vs.size();
  const double d1 = vs[n - 3] - vs[n - 2], d2 = vs[n - 2] - vs[n - 1];
  const double noise = gs[n - 3] + gs[n - 2] + gs[n - 1];
  rep.monotone_tail = !(d1 * d2 < 0.0 && std::min(std::abs(d1), std::abs(d2)) > noise);
  return rep;
}

// ---------------------------------------------------------------------------

double riemann_upper_bound(const GraphDomain& d, const BoundaryQuadruple& q, double eta,
                           int grid) {
  const BoundaryFunction& f = d.boundary();
  const auto& iv = d.interval();
  const double P = std::max(q.a.x, q.d.x - eta), Q = std::min(q.b.x, q.c.x + eta);
  if (!(Q > P)) return 0.0;

  std::vector<double> pts{P, Q};
  for (int k = 1; k < grid; ++k) pts.push_back(P + (Q - P) * k / grid);
  for (double b : f.breakpoints()) {
    for (double x : {b, b - eta, b + eta}) {
      if (x > P && x < Q) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const std::size_t m = pts.size();
  std::vector<double> best(m, kInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double lo = std::max(pts[i] - eta, iv.lo), hi = std::min(pts[j] + eta, iv.hi);
      const double cost = (hi - lo) / f.min_on(lo, hi);
      best[j] = std::min(best[j], best[i] + cost);
    }
  }
  return best[m - 1];
}

EtaReport eta_sweep(const GraphDomain& d, const BoundaryQuadruple& q,
                    const std::vector<double>& eta_list, double h,
                    const discrete::SolveOptions& opts) {
  check_decreasing(eta_list, "eta_list");
  const auto g = discrete::rasterize(d, h, q);
  EtaReport rep;
  rep.h = h;
  for (double eta : eta_list) {
    discrete::SolveOptions o = opts;
    o.eta = eta;
    const auto est = discrete::solve_modulus_restricted(g, o);
    EtaRow row;
    row.eta = eta;
    row.restricted_modulus = est.value;
    row.lower_bound = est.lower_bound;
    row.gap = est.gap;
    row.iterations = est.iterations;
    row.riemann_bound = riemann_upper_bound(d, q, eta);
    rep.below_riemann = rep.below_riemann &&
                        est.lower_bound <= row.riemann_bound * (1.0 + kDiscretizationAllowance);
    rep.rows.push_back(row);
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const EtaRow& wide = rep.rows[i - 1];
    const EtaRow& narrow = rep.rows[i];
    if (narrow.restricted_modulus > wide.restricted_modulus + wide.gap + narrow.gap) {
      rep.monotone = false;
    }
  }
  rep.limit_estimate = rep.rows.back().restricted_modulus;
  return rep;
}

SandwichVerdict sandwich_check(const GraphDomain& d, const BoundaryQuadruple& q,
                               const std::vector<double>& eps_list,
                               const std::vector<double>& eta_list, double eta_h,
                               const HSchedule& schedule, const discrete::SolveOptions& opts) {
  SandwichVerdict v;
  v.sweep = epsilon_sweep(d, q, eps_list, schedule, opts);
  v.eta = eta_sweep(d, q, eta_list, eta_h, opts);
  v.vertical = v.sweep.target;
  v.eps_limit = v.sweep.extrapolated_limit;
  v.eta_limit = v.eta.limit_estimate;
  v.tol_chain = v.sweep.limit_gap + v.eta.rows.back().gap + kDiscretizationAllowance * v.vertical;
  v.lower_holds = v.vertical <= v.eps_limit + v.tol_chain;
  v.upper_holds = v.eps_limit <= v.eta_limit + v.tol_chain;
  v.eta_monotone = v.eta.monotone;
  return v;
}

WideCheck wide_family_check(const GraphDomain& d, const BoundaryQuadruple& q, double eps,
                            double eta, double h, const discrete::SolveOptions& opts) {
  const GraphDomain stretched = domain::scale_vertical(d, eps);
  const auto g = discrete::rasterize(stretched, h, q);
  discrete::SolveOptions o = opts;
  o.eta = eta;
  WideCheck w;
  w.eps = eps;
  w.eta = eta;
  w.bound = eps * eps * d.area() / (eta * eta);
  try {
    const auto est = discrete::solve_modulus_wide(g, o);
    w.eps_times_modulus = eps * est.value;
    w.gap = eps * est.gap;
  } catch (const Error& e) {
    if (e.code() != Errc::kDisconnected) throw;
    w.eps_times_modulus = 0.0;  // no wide curve at all
  }
  w.holds = w.eps_times_modulus - w.gap <= w.bound;
  return w;
}

// ---------------------------------------------------------------------------

double reciprocal_integral(const BoundaryFunction& f, double a, double b) {
  if (f.kind() == FunctionKind::kSampledContinuous) {
    raise(Errc::kUnsupportedKind, "closed-form 1/f integral needs a step or piecewise-linear f");
  }
  const auto pts = f.split_points(a, b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double x0 = pts[i], x1 = pts[i + 1];
    const double f0 = f.right_limit(x0), f1 = f.left_limit(x1);
    const double w = x1 - x0;
    if (std::abs(f1 - f0) <= 1e-14 * std::max(f0, f1)) {
      total += w / (0.5 * (f0 + f1));
    } else {
      total += w * (std::log(f1) - std::log(f0)) / (f1 - f0);
    }
  }
  return total;
}

BoundaryFunction lsc_approximant(const BoundaryFunction& f, double n, double floor) {
  if (f.kind() != FunctionKind::kStep) {
    raise(Errc::kUnsupportedKind, "lsc approximation takes a step function");
  }
  if (!(n > 0.0)) raise(Errc::kInvalidArgument, "slope n must be positive");
  const auto& iv = f.interval();
  const auto vals = f.values();
  std::vector<double> l{iv.lo}, r;
  for (double b : f.breakpoints()) {
    r.push_back(b);
    l.push_back(b);
  }
  r.push_back(iv.hi);
  const std::size_t K = vals.size();

  auto eval = [&](double x) {
    double m = kInf;
    for (std::size_t k = 0; k < K; ++k) {
      const double dist = x < l[k] ? l[k] - x : (x > r[k] ? x - r[k] : 0.0);
      m = std::min(m, vals[k] + n * dist);
    }
    return std::max(m, floor);
  };

  // Kinks of the lower envelope: piece ends, crossings of a rising cone side
  // with a falling one or a flat top, and crossings with the floor.
  std::vector<double> xs{iv.lo, iv.hi};
  for (std::size_t k = 0; k < K; ++k) {
    xs.push_back(l[k]);
    xs.push_back(r[k]);
    xs.push_back(r[k] + (floor - vals[k]) / n);
    xs.push_back(l[k] - (floor - vals[k]) / n);
    for (std::size_t j = 0; j < K; ++j) {
      if (j == k) continue;
      xs.push_back(r[k] + (vals[j] - vals[k]) / n);
      xs.push_back(l[k] - (vals[j] - vals[k]) / n);
      if (j > k) xs.push_back((vals[j] - vals[k] + n * (l[j] + r[k])) / (2.0 * n));
    }
  }
  std::vector<double> knots;
  for (double x : xs) {
    if (x >= iv.lo && x <= iv.hi) knots.push_back(x);
  }
  std::sort(knots.begin(), knots.end());
  const double snap = 1e-13 * std::max(1.0, iv.length());
  std::vector<double> kept;
  for (double x : knots) {
    if (kept.empty() || x - kept.back() > snap) kept.push_back(x);
  }
  kept.front() = iv.lo;
  kept.back() = iv.hi;
  std::vector<double> ys;
  for (double x : kept) ys.push_back(eval(x));
  return BoundaryFunction::piecewise_linear(std::move(kept), std::move(ys));
}

LscReport lsc_approximation(const BoundaryFunction& f, const std::vector<double>& n_list,
                            std::optional<domain::Interval> overlap, int samples) {
  if (f.kind() != FunctionKind::kStep) {
    raise(Errc::kUnsupportedKind, "lsc approximation takes a step function");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (!(n_list[i] > n_list[i - 1])) {
      raise(Errc::kInvalidArgument, "n_list must be strictly increasing");
    }
  }
  const domain::Interval ov = overlap.value_or(f.interval());
  LscReport rep;
  rep.floor = f.min_on(ov.lo, ov.hi);
  rep.target = reciprocal_integral(f, ov.lo, ov.hi);
  rep.samples = samples;
  for (double n : n_list) {
    rep.approximants.push_back(lsc_approximant(f, n, rep.floor));
    LscRow row;
    row.n = n;
    row.integral = reciprocal_integral(rep.approximants.back(), ov.lo, ov.hi);
    row.error = std::abs(row.integral - rep.target);
    rep.rows.push_back(row);
  }

  const auto& iv = f.interval();
  for (int s = 0; s < samples; ++s) {
    const double x = iv.lo + iv.length() * (s + 0.5) / samples;
    const double fx = f(x);
    for (std::size_t i = 0; i < rep.approximants.size(); ++i) {
      const double fn = rep.approximants[i](x);
      const double slack = 1e-12 * std::max(1.0, fx);
      // Above the floor f_n <= f only where f itself clears the floor.
      if (fn > std::max(fx, rep.floor) + slack) rep.monotone = false;
      if (i + 1 < rep.approximants.size() && fn > rep.approximants[i + 1](x) + slack) {
        rep.monotone = false;
      }
    }
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (!(rep.rows[i].error < rep.rows[i - 1].error)) rep.errors_decreasing = false;
  }
  return rep;
}

}  // namespace modlim::harness
