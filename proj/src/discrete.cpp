#include "modlim/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

namespace modlim::discrete {

using domain::BoundaryFunction;
using domain::FunctionKind;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Integral over [x0, x1] of clamp(g - lo, 0, hi - lo) for g linear from g0 to g1.
double clipped_linear(double x0, double x1, double g0, double g1, double lo, double hi) {
  if (x1 <= x0) return 0.0;
  std::vector<double> ts{0.0, 1.0};
  for (double level : {lo, hi}) {
    if (std::isfinite(level) && (g0 - level) * (g1 - level) < 0.0) {
      ts.push_back((level - g0) / (g1 - g0));
    }
  }
  std::sort(ts.begin(), ts.end());
  auto clip = [&](double t) {
    const double g = g0 + (g1 - g0) * t;
    return std::clamp(g - lo, 0.0, hi - lo);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    total += 0.5 * (ts[i + 1] - ts[i]) * (clip(ts[i]) + clip(ts[i + 1]));
  }
  return total * (x1 - x0);
}

// Area of {(x, y) : p < x < q, lo < y < min(f(x), hi)}.
double clipped_area(const BoundaryFunction& f, double p, double q, double lo, double hi) {
  if (q <= p) return 0.0;
  const auto pts = f.split_points(p, q);
  const int sub = f.kind() == FunctionKind::kSampledContinuous ? 8 : 1;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (int k = 0; k < sub; ++k) {
      const double s0 = pts[i] + (pts[i + 1] - pts[i]) * k / sub;
      const double s1 = pts[i] + (pts[i + 1] - pts[i]) * (k + 1) / sub;
      total += clipped_linear(s0, s1, f.right_limit(s0), f.left_limit(s1), lo, hi);
    }
  }
  return total;
}

std::vector<double> column_grid(const domain::GraphDomain& d, double h,
                                const domain::BoundaryQuadruple& q) {
  const auto& iv = d.interval();
  const BoundaryFunction& f = d.boundary();
  const double snap = 1e-12 * std::max(1.0, iv.length());

  std::vector<double> hard{iv.lo, iv.hi, q.a.x, q.b.x, q.c.x, q.d.x};
  if (f.kind() == FunctionKind::kStep) {
    for (double b : f.breakpoints()) hard.push_back(b);
  }
  std::sort(hard.begin(), hard.end());
  std::vector<double> lines;
  for (double x : hard) {
    if (lines.empty() || x - lines.back() > snap) lines.push_back(x);
  }
  // A quadruple point within roundoff of a jump sits on the jump itself.
  if (f.kind() == FunctionKind::kStep) {
    for (double b : f.breakpoints()) {
      for (double& x : lines) {
        if (std::abs(x - b) <= snap) x = b;
      }
    }
  }
  // Knots of continuous kinds become grid lines when they are not crowded.
  if (f.kind() != FunctionKind::kStep) {
    std::vector<double> soft;
    for (double k : f.breakpoints()) {
      auto it = std::lower_bound(lines.begin(), lines.end(), k);
      const double right = it == lines.end() ? kInf : *it - k;
      const double left = it == lines.begin() ? kInf : k - *(it - 1);
      if (std::min(left, right) > 0.5 * h) soft.push_back(k);
    }
    lines.insert(lines.end(), soft.begin(), soft.end());
    std::sort(lines.begin(), lines.end());
  }

  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    const double w = lines[i + 1] - lines[i];
    const int n = std::max(1, static_cast<int>(std::ceil(w / h - 1e-9)));
    for (int k = 0; k < n; ++k) xs.push_back(lines[i] + w * k / n);
  }
  xs.push_back(lines.back());
  return xs;
}

bool segment_inside(const BoundaryFunction& f, const Node& u, const Node& v, double h) {
  // Exact at both ends using the one-sided limits into the cell; interior
  // samples catch curved boundaries between grid lines.
  const double tol = 1e-12 * std::max(1.0, std::max(u.y, v.y));
  if (u.y > f.right_limit(u.x) + tol || v.y > f.left_limit(v.x) + tol) return false;
  for (int k = 1; k < 8; ++k) {
    const double t = k / 8.0;
    const double x = u.x + (v.x - u.x) * t;
    const double y = u.y + (v.y - u.y) * t;
    if (y > f(x) + 0.05 * h) return false;
  }
  return true;
}

void riser_sinks(const DiscreteDomain& g, const BoundaryFunction& f, int c, double top_lo,
                 double top_hi, std::vector<int>& out) {
  const double tol = 1e-9 * std::max(1.0, top_hi);
  for (int v = g.column_begin[c]; v < g.column_begin[c + 1]; ++v) {
    const double y = g.nodes[v].y;
    if (y >= top_lo - tol && y <= top_hi + tol && y >= f(g.column_x[c]) - tol) out.push_back(v);
  }
}

}  // namespace

DiscreteDomain rasterize(const domain::GraphDomain& d, double h,
                         const domain::BoundaryQuadruple& q) {
  domain::validate_quadruple(d, q);
  if (!(h > 0.0) || !std::isfinite(h)) {
    raise(Errc::kInvalidArgument, "cell size must be positive, got " + num(h));
  }
  const BoundaryFunction& f = d.boundary();
  const auto overlap = domain::overlap_interval(d, q);
  const double min_f = overlap ? f.min_on(overlap->lo, overlap->hi) : f.min_value();
  if (!(h < min_f)) {
    raise(Errc::kResolutionTooCoarse, "cell size " + num(h) + " is not below the minimum height " +
                                          num(min_f) + " on the overlap interval");
  }
  if (f.kind() == FunctionKind::kStep && !(h < f.min_piece_width())) {
    raise(Errc::kResolutionTooCoarse, "cell size " + num(h) +
                                          " is not below the narrowest piece width " +
                                          num(f.min_piece_width()));
  }

  DiscreteDomain g;
  g.h = h;
  g.column_x = column_grid(d, h, q);
  const int C = g.column_count();

  // Nodes, column by column.
  g.column_begin.push_back(0);
  for (int c = 0; c < C; ++c) {
    const double x = g.column_x[c];
    const double top = f.upper(x);
    const double low = f(x);
    const bool jump = top - low > 0.25 * h;
    std::vector<double> ys;
    for (int j = 0; j * h < top - 0.25 * h; ++j) {
      const double y = j * h;
      if (jump && std::abs(y - low) < 0.25 * h && j > 0) continue;
      ys.push_back(y);
    }
    if (jump) ys.push_back(low);
    ys.push_back(top);
    std::sort(ys.begin(), ys.end());
    for (double y : ys) g.nodes.push_back({x, y, c});
    g.column_begin.push_back(g.node_count());
  }

  // Node areas: clipped cells around each node.
  g.node_area.assign(g.nodes.size(), 0.0);
  for (int c = 0; c < C; ++c) {
    const double xl = c > 0 ? 0.5 * (g.column_x[c - 1] + g.column_x[c]) : g.column_x[c];
    const double xr = c + 1 < C ? 0.5 * (g.column_x[c] + g.column_x[c + 1]) : g.column_x[c];
    const int b = g.column_begin[c], e = g.column_begin[c + 1];
    for (int v = b; v < e; ++v) {
      const double lo = v == b ? 0.0 : 0.5 * (g.nodes[v - 1].y + g.nodes[v].y);
      const double hi = v + 1 == e ? kInf : 0.5 * (g.nodes[v].y + g.nodes[v + 1].y);
      g.node_area[v] = clipped_area(f, xl, g.column_x[c], lo, hi) +
                       clipped_area(f, g.column_x[c], xr, lo, hi);
    }
  }
  for (int v = 0; v < g.node_count(); ++v) {
    if (!(g.node_area[v] > 0.0)) {
      // Can only happen for a node pinned to a boundary corner; give it a
      // sliver so the energy stays strictly convex.
      g.node_area[v] = 1e-6 * h * h;
    }
  }

  // Arcs.
  std::vector<std::vector<Arc>> adj(g.nodes.size());
  auto link = [&](int u, int v) {
    const double len = std::hypot(g.nodes[u].x - g.nodes[v].x, g.nodes[u].y - g.nodes[v].y);
    adj[u].push_back({v, len});
    adj[v].push_back({u, len});
  };
  for (int c = 0; c < C; ++c) {
    for (int v = g.column_begin[c]; v + 1 < g.column_begin[c + 1]; ++v) link(v, v + 1);
    if (c + 1 == C) continue;
    for (int u = g.column_begin[c]; u < g.column_begin[c + 1]; ++u) {
      for (int v = g.column_begin[c + 1]; v < g.column_begin[c + 2]; ++v) {
        if (std::abs(g.nodes[u].y - g.nodes[v].y) > 1.5 * h + 1e-12) continue;
        if (segment_inside(f, g.nodes[u], g.nodes[v], h)) link(u, v);
      }
    }
  }
  g.arc_begin.push_back(0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
    g.arcs.insert(g.arcs.end(), list.begin(), list.end());
    g.arc_begin.push_back(static_cast<int>(g.arcs.size()));
  }

  // Boundary node sets.
  g.sources = bottom_nodes(g, q.a.x, q.b.x);
  const double snap = 1e-12 * std::max(1.0, d.interval().length());
  for (int c = 0; c < C; ++c) {
    const double x = g.column_x[c];
    if (x < q.d.x - snap || x > q.c.x + snap) continue;
    const bool at_c = std::abs(x - q.c.x) <= snap;
    const bool at_d = std::abs(x - q.d.x) <= snap;
    if (!f.is_jump(x)) {
      g.sinks.push_back(g.top_node(c));
      continue;
    }
    // The top arc runs right to left; along a riser it goes from the right
    // limit's height to the left limit's height.
    const double fr = f.right_limit(x), fl = f.left_limit(x);
    double from = fr, to = fl;
    if (at_c && q.c.side == domain::Side::kLeft) from = fl;
    if (at_d && q.d.side == domain::Side::kRight) to = fr;
    riser_sinks(g, f, c, std::min(from, to), std::max(from, to), g.sinks);
  }
  std::sort(g.sinks.begin(), g.sinks.end());
  g.sinks.erase(std::unique(g.sinks.begin(), g.sinks.end()), g.sinks.end());
  if (g.sources.empty() || g.sinks.empty()) {
    raise(Errc::kResolutionTooCoarse, "boundary arcs contain no grid nodes at h = " + num(h));
  }
  return g;
}

std::vector<int> bottom_nodes(const DiscreteDomain& g, double lo, double hi) {
  const double snap = 1e-12 * std::max(1.0, std::abs(hi - lo));
  std::vector<int> out;
  for (int c = 0; c < g.column_count(); ++c) {
    const double x = g.column_x[c];
    if (x >= lo - snap && x <= hi + snap) out.push_back(g.column_begin[c]);
  }
  return out;
}

std::vector<int> row_nodes(const DiscreteDomain& g, double y) {
  std::vector<int> out;
  for (int c = 0; c < g.column_count(); ++c) {
    for (int v = g.column_begin[c]; v < g.column_begin[c + 1]; ++v) {
      if (std::abs(g.nodes[v].y - y) <= 0.25 * g.h) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shortest paths

namespace {

struct Candidate {
  double length;
  Path path;
};

// Label-setting search on (node, state) pairs. State bits record whether the
// path has touched a column <= left_col (bit 0) and >= right_col (bit 1);
// with states == 1 no bits are tracked. Columns outside [c0, c1] are barred.
class Search {
 public:
  explicit Search(const DiscreteDomain& g) : g_(g), is_sink_(g.nodes.size(), 0) {
    for (int t : g.sinks) is_sink_[t] = 1;
  }

  void set_weights(const std::vector<double>& rho) {
    w_.resize(g_.arcs.size());
    for (int u = 0; u < g_.node_count(); ++u) {
      for (int a = g_.arc_begin[u]; a < g_.arc_begin[u + 1]; ++a) {
        w_[a] = 0.5 * (rho[u] + rho[g_.arcs[a].to]) * g_.arcs[a].length;
      }
    }
  }

  /// Best path to each sink (in goal state). Sinks without one are skipped.
  std::vector<Candidate> run(int c0, int c1, int states, int left_col, int right_col) {
    const int n = g_.node_count();
    const std::size_t size = static_cast<std::size_t>(n) * states;
    if (dist_.size() < size) {
      dist_.assign(size, kInf);
      eu_.assign(size, kInf);
      pred_.assign(size, -1);
      done_.assign(size, 0);
    }
    touched_.clear();

    auto bits = [&](int node) {
      if (states == 1) return 0;
      const int col = g_.nodes[node].column;
      return (col <= left_col ? 1 : 0) | (col >= right_col ? 2 : 0);
    };
    const int goal = states == 1 ? 0 : 3;

    using Item = std::tuple<double, double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    auto relax = [&](int s, double d, double e, int from) {
      if (d < dist_[s] || (d == dist_[s] && (e < eu_[s] || (e == eu_[s] && from < pred_[s])))) {
        if (dist_[s] == kInf) touched_.push_back(s);
        dist_[s] = d;
        eu_[s] = e;
        pred_[s] = from;
        pq.emplace(d, e, s);
      }
    };
    for (int src : g_.sources) {
      const int col = g_.nodes[src].column;
      if (col < c0 || col > c1) continue;
      relax(src * states + bits(src), 0.0, 0.0, -1);
    }
    while (!pq.empty()) {
      auto [d, e, s] = pq.top();
      pq.pop();
      if (done_[s] || d != dist_[s] || e != eu_[s]) continue;
      done_[s] = 1;
      const int u = s / states;
      const int su = s % states;
      if (is_sink_[u]) continue;  // paths end at the first sink they meet
      for (int a = g_.arc_begin[u]; a < g_.arc_begin[u + 1]; ++a) {
        const int v = g_.arcs[a].to;
        const int col = g_.nodes[v].column;
        if (col < c0 || col > c1) continue;
        const int sv = su | bits(v);
        relax(v * states + sv, d + w_[a], e + g_.arcs[a].length, s);
      }
    }

    std::vector<Candidate> out;
    for (int t : g_.sinks) {
      const int col = g_.nodes[t].column;
      if (col < c0 || col > c1) continue;
      const int s = t * states + goal;
      if (dist_[s] == kInf) continue;
      Candidate cand;
      cand.length = dist_[s];
      for (int k = s; k >= 0; k = pred_[k]) cand.path.push_back(k / states);
      std::reverse(cand.path.begin(), cand.path.end());
      out.push_back(std::move(cand));
    }
    for (int s : touched_) {
      dist_[s] = kInf;
      eu_[s] = kInf;
      pred_[s] = -1;
      done_[s] = 0;
    }
    return out;
  }

 private:
  const DiscreteDomain& g_;
  std::vector<char> is_sink_;
  std::vector<double> w_;
  std::vector<double> dist_, eu_;
  std::vector<int> pred_;
  std::vector<char> done_;
  std::vector<int> touched_;
};

enum class Family { kAll, kNarrow, kWide };

struct OracleResult {
  double shortest = kInf;
  std::vector<Candidate> candidates;
};

// Column windows [c0, c1] with x[c1] - x[c0] < eta, maximal and distinct.
std::vector<std::pair<int, int>> narrow_windows(const DiscreteDomain& g, double eta) {
  std::vector<std::pair<int, int>> out;
  const int C = g.column_count();
  int c1 = 0, last = -1;
  for (int c0 = 0; c0 < C; ++c0) {
    c1 = std::max(c1, c0);
    while (c1 + 1 < C && g.column_x[c1 + 1] - g.column_x[c0] < eta) ++c1;
    if (c1 > last) {
      out.emplace_back(c0, c1);
      last = c1;
    }
  }
  return out;
}

class Oracle {
 public:
  Oracle(const DiscreteDomain& g, Family family, double eta)
      : g_(g), family_(family), search_(g) {
    if (family == Family::kNarrow) windows_ = narrow_windows(g, eta);
    if (family == Family::kWide) {
      const int C = g.column_count();
      for (int c0 = 0; c0 < C; ++c0) {
        int cr = c0;
        while (cr < C && g.column_x[cr] - g.column_x[c0] < eta) ++cr;
        if (cr < C) thresholds_.emplace_back(c0, cr);
      }
    }
  }

  OracleResult operator()(const std::vector<double>& rho) {
    search_.set_weights(rho);
    OracleResult r;
    const int C = g_.column_count();
    if (family_ == Family::kAll) {
      r.candidates = search_.run(0, C - 1, 1, 0, 0);
    } else {
      // Best path per sink across all runs, plus the best path of each run.
      std::unordered_map<int, Candidate> per_sink;
      std::vector<Candidate> per_run;
      auto absorb = [&](std::vector<Candidate> found) {
        const Candidate* best = nullptr;
        for (const Candidate& cand : found) {
          if (!best || cand.length < best->length) best = &cand;
        }
        if (best) per_run.push_back(*best);
        for (Candidate& cand : found) {
          auto it = per_sink.find(cand.path.back());
          if (it == per_sink.end() || cand.length < it->second.length) {
            per_sink[cand.path.back()] = std::move(cand);
          }
        }
      };
      if (family_ == Family::kNarrow) {
        for (auto [c0, c1] : windows_) absorb(search_.run(c0, c1, 1, 0, 0));
      } else {
        for (auto [cl, cr] : thresholds_) absorb(search_.run(cl, C - 1, 4, cl, cr));
      }
      std::vector<int> keys;
      for (auto& kv : per_sink) keys.push_back(kv.first);
      std::sort(keys.begin(), keys.end());
      for (int k : keys) r.candidates.push_back(std::move(per_sink[k]));
      r.candidates.insert(r.candidates.end(), per_run.begin(), per_run.end());
    }
    for (const Candidate& cand : r.candidates) r.shortest = std::min(r.shortest, cand.length);
    return r;
  }

 private:
  const DiscreteDomain& g_;
  Family family_;
  Search search_;
  std::vector<std::pair<int, int>> windows_;
  std::vector<std::pair<int, int>> thresholds_;
};

// ---------------------------------------------------------------------------
// Dual coordinate descent over path multipliers.
//
// Primal: min sum a_v rho_v^2  s.t.  N rho >= 1 on the active paths.
// For multipliers lambda >= 0 the primal minimizer is
// rho = A^{-1} N^T lambda / 2, which is nonnegative, and the dual objective at
// the best rescaling of lambda is (sum lambda)^2 / (4 E(rho)).

struct Row {
  Path nodes;
  std::vector<double> coef;  // N_pv: half the lengths of incident path arcs
  double q = 0.0;            // sum N_pv^2 / a_v
  double lambda = 0.0;
  std::uint64_t hash = 0;
};

std::uint64_t path_hash(const Path& p) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int v : p) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return h;
}

double arc_length(const DiscreteDomain& g, int u, int v) {
  return std::hypot(g.nodes[u].x - g.nodes[v].x, g.nodes[u].y - g.nodes[v].y);
}

Row make_row(const DiscreteDomain& g, Path p) {
  Row r;
  r.hash = path_hash(p);
  r.coef.assign(p.size(), 0.0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double half = 0.5 * arc_length(g, p[i], p[i + 1]);
    r.coef[i] += half;
    r.coef[i + 1] += half;
  }
  for (std::size_t i = 0; i < p.size(); ++i) r.q += r.coef[i] * r.coef[i] / g.node_area[p[i]];
  r.nodes = std::move(p);
  return r;
}

double row_length(const Row& r, const std::vector<double>& rho) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.coef[i] * rho[r.nodes[i]];
  return s;
}

ModulusEstimate solve(const DiscreteDomain& g, const SolveOptions& opts, Family family) {
  if (!(opts.tol > 0.0)) raise(Errc::kInvalidArgument, "tol must be positive");
  double eta = kInf;
  if (family != Family::kAll) {
    if (!opts.eta) raise(Errc::kInvalidArgument, "restricted solve needs eta");
    eta = *opts.eta;
    if (!(eta >= g.h)) {
      raise(Errc::kInfeasibleEta, "eta = " + num(eta) + " is below the cell size " + num(g.h));
    }
  }
  Oracle oracle(g, family, eta);
  std::mt19937_64 rng(opts.seed);

  const int n = g.node_count();
  std::vector<double> rho(n, 0.0);
  std::vector<Row> rows;
  std::unordered_map<std::uint64_t, int> seen;

  ModulusEstimate best;
  best.upper_bound = kInf;
  double best_lower = 0.0;
  int generated = 0;

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const OracleResult found = oracle(rho);
    if (found.candidates.empty()) {
      raise(Errc::kDisconnected, "no admissible source-to-sink path; the modulus is 0");
    }
    const double E = energy(g, rho);
    double S = 0.0;
    for (const Row& r : rows) S += r.lambda;
    if (E > 0.0) best_lower = std::max(best_lower, S * S / (4.0 * E));
    if (found.shortest > 0.0) {
      const double upper = E / (found.shortest * found.shortest);
      if (upper < best.upper_bound) {
        best.upper_bound = upper;
        best.density = rho;
        for (double& x : best.density) x /= found.shortest;
      }
    }
    best.iterations = iter;
    if (std::isfinite(best.upper_bound) &&
        best.upper_bound - best_lower <= opts.tol * best.upper_bound) {
      best.converged = true;
      break;
    }

    for (const Candidate& cand : found.candidates) {
      if (cand.length >= 1.0) continue;
      const std::uint64_t hsh = path_hash(cand.path);
      if (seen.count(hsh)) continue;
      seen.emplace(hsh, 1);
      rows.push_back(make_row(g, cand.path));
      ++generated;
    }

    std::vector<std::size_t> order(rows.size());
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      double worst = 0.0;
      for (std::size_t k : order) {
        Row& r = rows[k];
        const double len = row_length(r, rho);
        worst = std::max(worst, r.lambda > 0.0 ? std::abs(1.0 - len) : std::max(0.0, 1.0 - len));
        const double next = std::max(0.0, r.lambda + 2.0 * (1.0 - len) / r.q);
        const double delta = next - r.lambda;
        if (delta == 0.0) continue;
        r.lambda = next;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
          rho[r.nodes[i]] += delta * r.coef[i] / (2.0 * g.node_area[r.nodes[i]]);
        }
      }
      if (worst <= 0.25 * opts.tol) break;
    }
    // Constraints whose multiplier stayed at zero through the last pass.
    std::vector<Row> kept;
    kept.reserve(rows.size());
    for (Row& r : rows) {
      if (r.lambda > 0.0) {
        kept.push_back(std::move(r));
      } else {
        seen.erase(r.hash);
      }
    }
    rows = std::move(kept);
    for (int v = 0; v < n; ++v) rho[v] = std::max(rho[v], 0.0);
  }

  best.lower_bound = std::min(best_lower, best.upper_bound);
  best.value = best.upper_bound;
  best.gap = best.upper_bound - best.lower_bound;
  best.paths_generated = generated;
  for (const Row& r : rows) {
    const double len = path_length(g, best.density, r.nodes);
    if (len >= 1.0 - opts.tol && len <= 1.0 + opts.tol) best.active_paths.push_back(r.nodes);
  }
  if (!best.converged) {
    throw IterationLimitError("no certificate within tol " + num(opts.tol) + " after " +
                                  std::to_string(opts.max_iter) + " iterations (gap " +
                                  num(best.gap) + ")",
                              best);
  }
  return best;
}

}  // namespace

ModulusEstimate solve_modulus(const DiscreteDomain& g, const SolveOptions& opts) {
  if (opts.eta) return solve(g, opts, Family::kNarrow);
  return solve(g, opts, Family::kAll);
}

ModulusEstimate solve_modulus_restricted(const DiscreteDomain& g, const SolveOptions& opts) {
  return solve(g, opts, Family::kNarrow);
}

ModulusEstimate solve_modulus_wide(const DiscreteDomain& g, const SolveOptions& opts) {
  return solve(g, opts, Family::kWide);
}

double shortest_length(const DiscreteDomain& g, const std::vector<double>& rho,
                       std::optional<double> eta) {
  Oracle oracle(g, eta ? Family::kNarrow : Family::kAll, eta.value_or(kInf));
  return oracle(rho).shortest;
}

double path_length(const DiscreteDomain& g, const std::vector<double>& rho, const Path& p) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    s += 0.5 * (rho[p[i]] + rho[p[i + 1]]) * arc_length(g, p[i], p[i + 1]);
  }
  return s;
}

double energy(const DiscreteDomain& g, const std::vector<double>& rho) {
  double e = 0.0;
  for (int v = 0; v < g.node_count(); ++v) e += g.node_area[v] * rho[v] * rho[v];
  return e;
}

std::string density_csv(const DiscreteDomain& g, const std::vector<double>& rho) {
  std::string out = "x,y,rho\n";
  for (int v = 0; v < g.node_count(); ++v) {
    out += num(g.nodes[v].x) + "," + num(g.nodes[v].y) + "," + num(rho[v]) + "\n";
  }
  return out;
}

std::string certificate_text(const ModulusEstimate& est) {
  std::string out;
  for (const Path& p : est.active_paths) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(p[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace modlim::discrete
