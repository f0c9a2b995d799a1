// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance              all criteria
//   acceptance -c 5         just criterion 5

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modlim/analytic.hpp"
#include "modlim/discrete.hpp"
#include "modlim/domain.hpp"
#include "modlim/error.hpp"
#include "modlim/harness.hpp"
#include "modlim/vertical.hpp"
#include "properties.hpp"

using namespace modlim;
using namespace modlim::domain;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (!failed_.empty()) failed_ += "; ";
      failed_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  Outcome done() {
    out_.detail = out_.pass ? notes_ : "failed: " + failed_ + (notes_.empty() ? "" : " | " + notes_);
    return out_;
  }

 private:
  Outcome out_;
  std::string failed_, notes_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

GraphDomain square() { return GraphDomain(BoundaryFunction::constant({0.0, 1.0}, 1.0)); }
GraphDomain step12() { return GraphDomain(BoundaryFunction::step({0.0, 2.0}, {1.0}, {1.0, 2.0})); }
GraphDomain tent() {
  return GraphDomain(BoundaryFunction::piecewise_linear({0.0, 1.0, 2.0}, {0.5, 1.5, 0.5}));
}

const std::vector<double> kEps = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
const std::vector<double> kEta = {0.8, 0.4, 0.2, 0.1};
constexpr double kEtaH = 0.02;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Modulus-function anchors
Outcome criterion1() {
  Checker ck;
  const auto t0 = std::chrono::steady_clock::now();
  const double m = analytic::grotzsch_mu(1.0 / std::sqrt(2.0));
  ck.expect(std::abs(m - pi / 2) <= 1e-12, "mu(1/sqrt 2) = " + num(m));
  const double q = analytic::quad_modulus(analytic::make_triple(0, 1, 2));
  ck.expect(std::abs(q - 1.0) <= 1e-10, "quad_modulus(0,1,2) = " + num(q));
  for (double r : {0.2, 0.5, 0.9}) {
    const double p = analytic::grotzsch_mu(r) * analytic::grotzsch_mu(std::sqrt(1 - r * r));
    ck.expect(std::abs(p - pi * pi / 4) <= 1e-10, "product at r=" + num(r));
  }
  const double t = seconds_since(t0);
  ck.expect(t < 1.0, "runtime " + num(t) + " s");
  ck.note("runtime " + num(t) + " s");
  return ck.done();
}

// 2. Liouville-mass asymptotics
Outcome criterion2() {
  Checker ck;
  const auto t0 = std::chrono::steady_clock::now();
  const double w2s[] = {0.99, 0.999, 0.9999};
  const double bounds[] = {0.01, 0.001, 0.0001};
  for (int i = 0; i < 3; ++i) {
    const double d = analytic::asymptotic_defect(analytic::make_triple(0, w2s[i], 1));
    ck.expect(std::abs(d) < bounds[i], "defect at w2=" + num(w2s[i]) + " is " + num(d));
    ck.note("w2=" + num(w2s[i]) + " defect " + num(d));
  }
  const double t = seconds_since(t0);
  ck.expect(t < 1.0, "runtime " + num(t) + " s");
  return ck.done();
}

// 3. Vertical family closed forms and the extremality check
Outcome criterion3() {
  Checker ck;
  const auto st = step12();
  const auto vs = vertical::vertical_family(st, full_arcs(st));
  const double ms = vertical::modulus_vertical(vs);
  ck.expect(ms == 1.5, "step modulus " + num(ms));

  const auto ramp = GraphDomain(BoundaryFunction::piecewise_linear({0.0, 1.0}, {1.0, 2.0}));
  const auto vr = vertical::vertical_family(ramp, full_arcs(ramp));
  const double mr = vertical::modulus_vertical(vr);
  ck.expect(std::abs(mr - std::log(2.0)) <= 1e-10, "ramp modulus " + num(mr));

  for (const auto* v : {&vs, &vr}) {
    const auto rho = vertical::extremal_density(*v);
    const double e = rho.energy(), m = vertical::modulus_vertical(*v);
    ck.expect(std::abs(e - m) <= 1e-10, "energy " + num(e) + " vs modulus " + num(m));
  }

  vertical::BeurlingProbes probes;
  probes.random_tests = 100;
  const auto rep = vertical::check_beurling(vertical::extremal_density(vs), vs, probes);
  double min_pairing = INFINITY;
  for (const auto& p : rep.probes) min_pairing = std::min(min_pairing, p.pairing);
  ck.expect(rep.unit_line_integrals, "unit line integrals");
  ck.expect(rep.probes_passed() == 100, std::to_string(rep.probes_passed()) + "/100 probes");
  ck.expect(min_pairing >= vertical::kPairingFloor, "min pairing " + num(min_pairing));
  ck.note(std::to_string(rep.probes_passed()) + "/100 probes, min pairing " + num(min_pairing));
  return ck.done();
}

// 4. Discrete solver calibration
Outcome criterion4() {
  Checker ck;
  constexpr double kNoise = 1e-12;
  double prev_err = INFINITY;
  for (double h : {1.0 / 25, 1.0 / 50, 1.0 / 100}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto e = discrete::solve_modulus(discrete::rasterize(square(), h, full_arcs(square())));
    const double t = seconds_since(t0);
    const double err = std::abs(e.value - 1.0);
    ck.expect(err <= prev_err + kNoise, "square error grew at h=" + num(h));
    prev_err = err;
    ck.expect(t <= 120.0, "runtime " + num(t) + " s");
    if (h == 1.0 / 100) {
      ck.expect(err <= 0.02, "square value " + num(e.value));
      ck.expect(e.gap <= 1e-3 * e.value, "square gap " + num(e.gap));
      ck.note("square " + num(e.value) + " gap " + num(e.gap));
    }
  }
  const auto rect = GraphDomain(BoundaryFunction::constant({0.0, 1.0}, 2.0));
  const auto r = discrete::solve_modulus(discrete::rasterize(rect, 0.01, full_arcs(rect)));
  ck.expect(std::abs(r.value - 0.5) <= 0.02 * 0.5, "rectangle value " + num(r.value));
  ck.note("rectangle " + num(r.value));
  return ck.done();
}

// 5. Stretch limit
Outcome criterion5() {
  Checker ck;
  const auto t0 = std::chrono::steady_clock::now();
  const auto st = harness::epsilon_sweep(step12(), full_arcs(step12()), kEps);
  ck.expect(st.relative_error <= 0.02, "step limit " + num(st.extrapolated_limit));
  ck.note("step " + num(st.extrapolated_limit));
  const auto sq = harness::epsilon_sweep(square(), full_arcs(square()), kEps);
  ck.expect(sq.relative_error <= 0.02, "square limit " + num(sq.extrapolated_limit));
  ck.note("square " + num(sq.extrapolated_limit));
  const auto dj = harness::epsilon_sweep(square(), make_quadruple(0.0, 0.4, 1.0, 0.6), kEps);
  const double last = dj.rows.back().eps_times_modulus;
  ck.expect(last < 0.05, "disjoint final row " + num(last));
  ck.note("disjoint final " + num(last));
  const double t = seconds_since(t0);
  ck.expect(t <= 900.0, "runtime " + num(t) + " s");
  ck.note(num(t) + " s");
  return ck.done();
}

// 6. Sandwich
Outcome criterion6() {
  Checker ck;
  const std::pair<const char*, GraphDomain> cases[] = {
      {"square", square()}, {"step", step12()}, {"tent", tent()}};
  for (const auto& [name, d] : cases) {
    const auto v = harness::sandwich_check(d, full_arcs(d), kEps, kEta, kEtaH);
    ck.expect(v.lower_holds, std::string(name) + " vertical > eps limit");
    ck.expect(v.upper_holds, std::string(name) + " eps limit > eta limit");
    ck.expect(v.eta_monotone, std::string(name) + " eta rows not monotone");
    ck.note(std::string(name) + " " + num(v.vertical) + " <= " + num(v.eps_limit) + " <= " +
            num(v.eta_limit) + " (tol " + num(v.tol_chain) + ")");
  }
  return ck.done();
}

// 7. Continuous approximation of the step boundary
Outcome criterion7() {
  Checker ck;
  const auto f = BoundaryFunction::step({0.0, 2.0}, {1.0}, {1.0, 2.0});
  const auto r = harness::lsc_approximation(f, {4.0, 16.0, 64.0});
  ck.expect(r.samples >= 1000, "samples " + std::to_string(r.samples));
  ck.expect(r.monotone, "f_n <= f_{n+1} <= f");
  ck.expect(r.errors_decreasing, "errors not decreasing");
  const double last = r.rows.back().error;
  ck.expect(last < 1e-3, "error at n=64 is " + num(last));
  for (const auto& row : r.rows) ck.note("n=" + num(row.n) + " error " + num(row.error));
  return ck.done();
}

// 8. Modulus axioms
Outcome criterion8() {
  Checker ck;
  using testing::PropertyOutcome;
  const std::pair<const char*, std::function<PropertyOutcome()>> suites[] = {
      {"monotonicity", [] { return testing::monotonicity_suite(50, 1.0 / 50, 101); }},
      {"subadditivity", [] { return testing::subadditivity_suite(50, 1.0 / 50, 202); }},
      {"overflowing", [] { return testing::overflowing_suite(50, 1.0 / 50, 303); }},
      {"reflection", [] { return testing::reflection_suite(50, 1.0 / 50, 404); }},
  };
  for (const auto& [name, run] : suites) {
    const auto o = run();
    ck.expect(o.instances == 50 && o.violations == 0,
              std::string(name) + " " + std::to_string(o.violations) + " violations (" + o.detail +
                  ")");
    ck.note(std::string(name) + " " + std::to_string(o.instances - o.violations) + "/" +
            std::to_string(o.instances));
  }

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5.0, 5.0), pos(0.1, 10.0);
  int checked = 0;
  double worst = 0.0;
  while (checked < 100) {
    double w[3] = {u(rng), u(rng), u(rng)};
    std::sort(w, w + 3);
    if (w[1] - w[0] < 1e-3 || w[2] - w[1] < 1e-3) continue;
    const double a = pos(rng), b = u(rng);
    const double m = analytic::quad_modulus(analytic::make_triple(w[0], w[1], w[2]));
    const double ma =
        analytic::quad_modulus(analytic::make_triple(a * w[0] + b, a * w[1] + b, a * w[2] + b));
    worst = std::max(worst, std::abs(ma - m) / m);
    ++checked;
  }
  ck.expect(worst <= 1e-12, "affine invariance " + num(worst));
  ck.note("affine worst " + num(worst));
  return ck.done();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> only;
  app.add_option("-c,--criterion", only, "criterion numbers to run (default: all)")
      ->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);
  if (only.empty()) only = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (int n : only) {
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all &= o.pass;
  }
  return all ? 0 : 1;
}
