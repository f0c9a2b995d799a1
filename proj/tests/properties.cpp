#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "modlim/discrete.hpp"
#include "modlim/domain.hpp"

namespace modlim::testing {

using namespace modlim::domain;
using namespace modlim::discrete;

namespace {

// Step function on (0, 1) with up to three jumps, pieces at least 0.1 wide,
// heights in [0.5, 1].
GraphDomain random_domain(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_real_distribution<double> height(0.5, 1.0);
  const int k = count(rng);
  std::vector<double> bps;
  while (static_cast<int>(bps.size()) < k) {
    std::uniform_int_distribution<int> slot(2, 18);
    const double x = slot(rng) / 20.0;
    bool ok = true;
    for (double b : bps) ok &= std::abs(b - x) >= 0.1;
    if (ok) bps.push_back(x);
  }
  std::sort(bps.begin(), bps.end());
  std::vector<double> vals(bps.size() + 1);
  for (double& v : vals) v = height(rng);
  return GraphDomain(BoundaryFunction::step({0.0, 1.0}, bps, vals));
}

std::vector<int> top_nodes(const DiscreteDomain& g, double lo, double hi) {
  std::vector<int> out;
  for (int c = 0; c < g.column_count(); ++c) {
    if (g.column_x[c] >= lo - 1e-12 && g.column_x[c] <= hi + 1e-12) out.push_back(g.top_node(c));
  }
  return out;
}

// Returns the solve or, for an empty family, a zero estimate.
ModulusEstimate solve_or_zero(const DiscreteDomain& g) {
  try {
    return solve_modulus(g);
  } catch (const Error& e) {
    if (e.code() != Errc::kDisconnected) throw;
    return ModulusEstimate{};
  }
}

void record(PropertyOutcome& out, double excess, const std::string& what) {
  ++out.instances;
  if (out.instances == 1 || excess > out.worst_excess) out.worst_excess = excess;
  if (excess > 0.0) {
    if (out.violations == 0) out.detail = what;
    ++out.violations;
  }
}

std::string describe(int k, double a, double b) {
  std::ostringstream os;
  os << "instance " << k << ": " << a << " vs " << b;
  return os.str();
}

}  // namespace

PropertyOutcome monotonicity_suite(int instances, double h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cut(1, 9);
  PropertyOutcome out;
  for (int k = 0; k < instances; ++k) {
    const auto d = random_domain(rng);
    auto g = rasterize(d, h, full_arcs(d));
    double lo = cut(rng) / 10.0, hi = cut(rng) / 10.0;
    if (lo > hi) std::swap(lo, hi);
    hi = std::max(hi, lo + 0.1);
    g.sinks = top_nodes(g, lo, hi);
    const auto small = solve_or_zero(g);
    g.sinks = top_nodes(g, std::max(0.0, lo - 0.2), std::min(1.0, hi + 0.2));
    const auto large = solve_or_zero(g);
    // mod(small sinks) <= mod(large sinks), within the brackets.
    record(out, small.lower_bound - large.value, describe(k, small.value, large.value));
  }
  return out;
}

PropertyOutcome subadditivity_suite(int instances, double h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cut(2, 8);
  PropertyOutcome out;
  for (int k = 0; k < instances; ++k) {
    const auto d = random_domain(rng);
    auto g = rasterize(d, h, full_arcs(d));
    const auto joint = solve_or_zero(g);
    const double m = cut(rng) / 10.0;
    const auto all = g.sources;
    g.sources = bottom_nodes(g, 0.0, m);
    const auto left = solve_or_zero(g);
    g.sources = bottom_nodes(g, m, 1.0);
    const auto right = solve_or_zero(g);
    g.sources = all;
    record(out, joint.lower_bound - (left.value + right.value),
           describe(k, joint.value, left.value + right.value));
  }
  return out;
}

PropertyOutcome overflowing_suite(int instances, double h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  for (int k = 0; k < instances; ++k) {
    const auto d = random_domain(rng);
    auto g = rasterize(d, h, full_arcs(d));
    const auto to_top = solve_or_zero(g);
    // A lattice row at least two cells below the lowest top: every path to
    // the top passes through one of its nodes.
    const int rows = static_cast<int>(std::floor(d.boundary().min_value() / h)) - 2;
    std::uniform_int_distribution<int> pick(std::max(1, rows / 3), std::max(1, rows));
    g.sinks = row_nodes(g, pick(rng) * h);
    const auto to_row = solve_or_zero(g);
    record(out, to_top.lower_bound - to_row.value, describe(k, to_top.value, to_row.value));
  }
  return out;
}

PropertyOutcome reflection_suite(int instances, double h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cut(0, 10);
  PropertyOutcome out;
  for (int k = 0; k < instances; ++k) {
    const auto d = random_domain(rng);
    double a = cut(rng) / 10.0, b = cut(rng) / 10.0, c = cut(rng) / 10.0, e = cut(rng) / 10.0;
    if (a > b) std::swap(a, b);
    if (e > c) std::swap(c, e);
    if (b - a < 0.2) b = std::min(1.0, a + 0.2), a = b - 0.2;
    if (c - e < 0.2) c = std::min(1.0, e + 0.2), e = c - 0.2;
    const auto q = make_quadruple(a, b, c, e);
    const auto r = reflect(d);
    const auto est = solve_or_zero(rasterize(d, h, q));
    const auto ref = solve_or_zero(rasterize(r, h, reflect(d, q)));
    // The two brackets must overlap.
    const double excess = std::max(est.lower_bound - ref.value, ref.lower_bound - est.value);
    record(out, excess - 1e-9, describe(k, est.value, ref.value));
  }
  return out;
}

}  // namespace modlim::testing
