#include "modlim/vertical.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "modlim/error.hpp"

namespace modlim::vertical {

using domain::BoundaryFunction;
using domain::FunctionKind;
using domain::Interval;

namespace {

// Breakpoints of the length function inside each support interval.
std::vector<double> support_points(const VerticalFamily& v, const Interval& iv) {
  return v.length().split_points(iv.lo, iv.hi);
}

}  // namespace

VerticalFamily::VerticalFamily(std::vector<Interval> support, BoundaryFunction length)
    : length_(std::move(length)) {
  std::sort(support.begin(), support.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  const Interval& dom = length_.interval();
  for (const Interval& iv : support) {
    if (!(iv.hi > iv.lo)) continue;
    if (!dom.contains(iv.lo, 1e-12) || !dom.contains(iv.hi, 1e-12)) {
      raise(Errc::kInvalidArgument, "vertical family support leaves the length function's interval");
    }
    if (!support_.empty() && iv.lo <= support_.back().hi) {
      support_.back().hi = std::max(support_.back().hi, iv.hi);
    } else {
      support_.push_back(Interval{std::max(iv.lo, dom.lo), std::min(iv.hi, dom.hi)});
    }
  }
  for (const Interval& iv : support_) {
    if (!(length_.min_on(iv.lo, iv.hi) > 0.0)) {
      raise(Errc::kNonPositive, "segment lengths must be positive on the support");
    }
  }
}

bool VerticalFamily::contains(double x) const {
  return std::any_of(support_.begin(), support_.end(),
                     [x](const Interval& iv) { return x >= iv.lo && x <= iv.hi; });
}

double VerticalFamily::measure() const {
  double m = 0.0;
  for (const Interval& iv : support_) m += iv.length();
  return m;
}

VerticalFamily vertical_family(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q) {
  const auto overlap = domain::overlap_interval(d, q);
  std::vector<Interval> support;
  if (overlap) support.push_back(*overlap);
  return VerticalFamily(std::move(support), d.boundary());
}

double modulus_vertical(const VerticalFamily& v, const quadrature::Options& opts) {
  const BoundaryFunction& f = v.length();
  double total = 0.0;
  if (f.kind() == FunctionKind::kStep) {
    // Sum of width / height over the pieces met by the support.
    for (const Interval& iv : v.support()) {
      const auto pts = support_points(v, iv);
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        total += (pts[i + 1] - pts[i]) / f(mid);
      }
    }
    return total;
  }
  for (const Interval& iv : v.support()) {
    const auto pts = support_points(v, iv);
    quadrature::Options local = opts;
    local.abs_tol = opts.abs_tol / static_cast<double>(v.support().size());
    total += quadrature::integrate([&f](double x) { return 1.0 / f(x); }, pts, local).value;
  }
  return total;
}

// ---------------------------------------------------------------------------

ExtremalDensity::ExtremalDensity(VerticalFamily family) : family_(std::move(family)) {
  if (family_.empty()) raise(Errc::kEmptyFamily, "extremal density of an empty family");
}

ExtremalDensity extremal_density(const VerticalFamily& v) { return ExtremalDensity(v); }

double ExtremalDensity::operator()(double x, double y) const {
  if (!family_.contains(x)) return 0.0;
  const double len = family_.length()(x);
  if (y <= 0.0 || y >= len) return 0.0;
  return 1.0 / len;
}

double ExtremalDensity::line_integral(double x) const {
  const double len = family_.length()(x);
  quadrature::Options o;
  o.abs_tol = 1e-13;
  return quadrature::integrate([&](double y) { return (*this)(x, y); }, 0.0, len, o).value;
}

double ExtremalDensity::pairing(const std::function<double(double, double)>& h,
                                const std::vector<double>& cuts) const {
  double total = 0.0;
  for (const Interval& iv : family_.support()) {
    auto pts = family_.length().split_points(iv.lo, iv.hi);
    for (double c : cuts) {
      if (c > iv.lo && c < iv.hi) pts.push_back(c);
    }
    std::sort(pts.begin(), pts.end());
    auto inner = [&](double x) {
      const double len = family_.length()(x);
      quadrature::Options o;
      o.abs_tol = 1e-13;
      return quadrature::integrate([&](double y) { return h(x, y) * (*this)(x, y); }, 0.0, len, o)
          .value;
    };
    quadrature::Options outer;
    outer.abs_tol = 1e-11;
    total += quadrature::integrate(inner, pts, outer).value;
  }
  return total;
}

double ExtremalDensity::energy() const {
  return pairing([this](double x, double y) { return (*this)(x, y); });
}

// ---------------------------------------------------------------------------
// Beurling probes

namespace {

// h(x, y) = q(x, t) - mean_t q(x, .) + m(x) with t = y / |gamma(x)|; the first
// two terms integrate to zero along every vertical, m >= 0 sets the mean.
struct RandomProbe {
  double c[3][4];      // q(x, t) = sum c[i][j] x^i t^j
  std::vector<double> cuts;   // partition of the support for m
  std::vector<double> m_b, m_c, m_x0;  // m(x) = b (x - x0)^2 + c on each piece

  double m(double x) const {
    std::size_t k = static_cast<std::size_t>(
        std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
    k = std::min(k, m_b.size() - 1);
    const double dx = x - m_x0[k];
    return m_b[k] * dx * dx + m_c[k];
  }

  double operator()(const BoundaryFunction& len, double x, double y) const {
    const double t = y / len(x);
    double q = 0.0, mean = 0.0, xp = 1.0;
    for (int i = 0; i < 3; ++i) {
      double tp = 1.0;
      for (int j = 0; j < 4; ++j) {
        q += c[i][j] * xp * tp;
        mean += c[i][j] * xp / (j + 1);
        tp *= t;
      }
      xp *= x;
    }
    return q - mean + m(x);
  }
};

RandomProbe draw_probe(std::mt19937_64& rng, const VerticalFamily& v) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0), unit(0.0, 1.0);
  RandomProbe p{};
  for (auto& row : p.c)
    for (double& cij : row) cij = coef(rng);
  const double lo = v.support().front().lo, hi = v.support().back().hi;
  const int pieces = 1 + static_cast<int>(unit(rng) * 3.0);
  for (int k = 1; k < pieces; ++k) p.cuts.push_back(lo + (hi - lo) * unit(rng));
  std::sort(p.cuts.begin(), p.cuts.end());
  for (int k = 0; k < pieces; ++k) {
    // Roughly a third of the pieces get m = 0, i.e. exactly zero vertical mean.
    const bool zero = unit(rng) < 0.35;
    p.m_b.push_back(zero ? 0.0 : unit(rng));
    p.m_c.push_back(zero ? 0.0 : 0.5 * unit(rng));
    p.m_x0.push_back(lo + (hi - lo) * unit(rng));
  }
  return p;
}

std::vector<double> sample_verticals(const VerticalFamily& v, int n) {
  std::vector<double> xs;
  const double total = v.measure();
  for (int k = 0; k < n; ++k) {
    double s = (k + 0.5) / n * total;
    for (const Interval& iv : v.support()) {
      if (s <= iv.length()) {
        xs.push_back(iv.lo + s);
        break;
      }
      s -= iv.length();
    }
  }
  return xs;
}

double vertical_integral(const std::function<double(double, double)>& h, double x, double len) {
  quadrature::Options o;
  o.abs_tol = 1e-13;
  return quadrature::integrate([&](double y) { return h(x, y); }, 0.0, len, o).value;
}

}  // namespace

bool BeurlingReport::passed() const {
  return unit_line_integrals &&
         std::all_of(probes.begin(), probes.end(), [](const ProbeResult& p) { return p.passed; });
}

int BeurlingReport::probes_passed() const {
  return static_cast<int>(
      std::count_if(probes.begin(), probes.end(), [](const ProbeResult& p) { return p.passed; }));
}

BeurlingReport check_beurling(const ExtremalDensity& rho, const VerticalFamily& v,
                              const BeurlingProbes& probes) {
  if (v.empty()) raise(Errc::kEmptyFamily, "Beurling check on an empty family");
  BeurlingReport report;
  const auto xs = sample_verticals(v, std::max(probes.verticals, 1));
  report.verticals_checked = static_cast<int>(xs.size());
  for (double x : xs) {
    const double err = std::abs(rho.line_integral(x) - 1.0);
    report.max_line_integral_error = std::max(report.max_line_integral_error, err);
  }
  report.unit_line_integrals = report.max_line_integral_error <= 1e-10;

  // Vertical means are checked on a coarser subset; they cost a quadrature each.
  const auto mean_xs = sample_verticals(v, std::min(std::max(probes.verticals, 1), 200));
  auto run = [&](const std::string& label, const std::function<double(double, double)>& h,
                 const std::vector<double>& cuts) {
    ProbeResult r;
    r.label = label;
    r.min_vertical_integral = std::numeric_limits<double>::infinity();
    for (double x : mean_xs) {
      r.min_vertical_integral =
          std::min(r.min_vertical_integral, vertical_integral(h, x, v.length()(x)));
    }
    r.admissible_probe = r.min_vertical_integral >= -1e-12;
    r.pairing = rho.pairing(h, cuts);
    // A probe that violates the hypothesis says nothing about extremality.
    r.passed = !r.admissible_probe || r.pairing >= kPairingFloor;
    report.probes.push_back(r);
  };

  for (const TestFunction& t : probes.extra) run(t.label, t.h, t.cuts);
  std::mt19937_64 rng(probes.seed);
  for (int k = 0; k < probes.random_tests; ++k) {
    const RandomProbe p = draw_probe(rng, v);
    const BoundaryFunction& len = v.length();
    run("random#" + std::to_string(k), [p, &len](double x, double y) { return p(len, x, y); },
        p.cuts);
  }
  return report;
}

// ---------------------------------------------------------------------------

double transverse_measure(const domain::StripDomain& s, Interval I,
                          const quadrature::Options& opts) {
  const Interval& dom = s.interval();
  if (!(I.hi > I.lo) || !dom.contains(I.lo, 1e-12) || !dom.contains(I.hi, 1e-12)) {
    raise(Errc::kInvalidArgument, "transverse interval must be a nonempty subinterval of the strip");
  }
  auto pts = s.upper().split_points(I.lo, I.hi);
  auto more = s.lower().split_points(I.lo, I.hi);
  pts.insert(pts.end(), more.begin(), more.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const double scale = std::max(1.0, std::abs(s.upper().min_value()));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    bool degenerate = true;
    for (int k = 1; k <= 5 && degenerate; ++k) {
      const double x = pts[i] + (pts[i + 1] - pts[i]) * k / 6.0;
      degenerate = s.gap(x) <= 1e-14 * scale;
    }
    if (degenerate) {
      std::ostringstream os;
      os << "upper and lower boundaries coincide on [" << pts[i] << ", " << pts[i + 1] << "]";
      raise(Errc::kDegenerateStrip, os.str());
    }
  }

  if (s.upper().kind() == FunctionKind::kStep && s.lower().kind() == FunctionKind::kStep) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      total += (pts[i + 1] - pts[i]) / s.gap(0.5 * (pts[i] + pts[i + 1]));
    }
    return total;
  }
  return quadrature::integrate([&s](double x) { return 1.0 / std::abs(s.gap(x)); }, pts, opts)
      .value;
}

}  // namespace modlim::vertical
