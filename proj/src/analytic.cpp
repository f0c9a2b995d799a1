#include "modlim/analytic.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "modlim/error.hpp"

namespace modlim::analytic {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCoincide = 1e-12;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double reduce_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// Counterclockwise offset from `from` to `to`, in [0, 2 pi).
double ccw_offset(double from, double to) { return reduce_angle(reduce_angle(to) - reduce_angle(from)); }

}  // namespace

HalfPlaneTriple make_triple(double w1, double w2, double w3) {
  if (!std::isfinite(w1) || !std::isfinite(w2) || !std::isfinite(w3) || !(w1 < w2) ||
      !(w2 < w3)) {
    raise(Errc::kInvalidArgument,
          "half-plane triple needs finite w1 < w2 < w3, got (" + num(w1) + ", " + num(w2) + ", " +
              num(w3) + ")");
  }
  return HalfPlaneTriple{w1, w2, w3};
}

CircleQuadruple make_circle_quadruple(double a, double b, double c, double d) {
  for (double t : {a, b, c, d}) {
    if (!std::isfinite(t)) raise(Errc::kInvalidArgument, "circle angles must be finite");
  }
  const double angles[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double chord = std::abs(std::polar(1.0, angles[i]) - std::polar(1.0, angles[j]));
      if (chord < kCoincide) {
        raise(Errc::kDegenerateQuadruple, "circle points coincide within tolerance");
      }
    }
  }
  const double ob = ccw_offset(a, b), oc = ccw_offset(a, c), od = ccw_offset(a, d);
  if (!(ob < oc && oc < od)) {
    raise(Errc::kInvalidArgument, "circle quadruple is not in counterclockwise order");
  }
  return CircleQuadruple{a, b, c, d};
}

double agm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) raise(Errc::kOutOfRange, "agm needs positive arguments");
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * a) break;
  }
  return 0.5 * (a + b);
}

LiouvilleMass liouville_mass_halfplane(const HalfPlaneTriple& t) {
  return LiouvilleMass{std::log((t.w3 - t.w1) / (t.w3 - t.w2))};
}

LiouvilleMass liouville_mass_circle(const CircleQuadruple& q) {
  make_circle_quadruple(q.a, q.b, q.c, q.d);
  using C = std::complex<double>;
  const C a = std::polar(1.0, q.a), b = std::polar(1.0, q.b);
  const C c = std::polar(1.0, q.c), d = std::polar(1.0, q.d);
  const C ratio = (a - c) * (b - d) / ((a - d) * (b - c));
  // For concyclic points in cyclic order the cross-ratio is real and > 1.
  return LiouvilleMass{std::log(std::abs(ratio))};
}

HalfPlaneTriple normalize_to_halfplane(const CircleQuadruple& q) {
  make_circle_quadruple(q.a, q.b, q.c, q.d);
  // z -> i (d + z) / (d - z) maps the circle onto the real line with d at
  // infinity; the point at ccw offset t from d lands on -cot(t / 2).
  auto image = [&](double theta) { return -1.0 / std::tan(0.5 * ccw_offset(q.d, theta)); };
  return make_triple(image(q.a), image(q.b), image(q.c));
}

double grotzsch_mu(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    raise(Errc::kOutOfRange, "grotzsch_mu needs 0 < r < 1, got " + num(r));
  }
  if (r < kMuAsymptoticThreshold) return std::log(4.0 / r);
  const double rp = std::sqrt((1.0 - r) * (1.0 + r));
  return 0.5 * std::numbers::pi * agm(1.0, rp) / agm(1.0, r);
}

double quad_modulus(const HalfPlaneTriple& t) {
  const double r = std::sqrt((t.w3 - t.w2) / (t.w3 - t.w1));
  return 2.0 / std::numbers::pi * grotzsch_mu(r);
}

double conjugate_modulus(const HalfPlaneTriple& t) {
  // z -> -1 / (z - w1) sends w1 to infinity and keeps the remaining points in
  // order: w2, w3, inf land on -1/(w2-w1) < -1/(w3-w1) < 0.
  return quad_modulus(make_triple(-1.0 / (t.w2 - t.w1), -1.0 / (t.w3 - t.w1), 0.0));
}

double quad_modulus_real(const std::array<double, 4>& z) {
  int infinite = 0;
  for (double v : z) infinite += std::isinf(v) ? 1 : 0;
  if (infinite > 1) raise(Errc::kInvalidArgument, "at most one point may be infinite");
  // r^2 = (z2 - z1)(z3 - z0) / ((z2 - z0)(z3 - z1)); factors holding the
  // infinite point cancel.
  auto diff = [&](int i, int j) { return std::isinf(z[i]) || std::isinf(z[j]) ? 1.0 : z[i] - z[j]; };
  const double r2 = diff(2, 1) * diff(3, 0) / (diff(2, 0) * diff(3, 1));
  if (!(r2 > 0.0 && r2 < 1.0)) {
    raise(Errc::kInvalidArgument, "points are not in cyclic order on the extended line");
  }
  return 2.0 / std::numbers::pi * grotzsch_mu(std::sqrt(r2));
}

double asymptotic_defect(const HalfPlaneTriple& t) {
  return quad_modulus(t) - liouville_mass_halfplane(t).value / std::numbers::pi -
         2.0 / std::numbers::pi * std::log(4.0);
}

double RealMobius::operator()(double z) const {
  if (std::isinf(z)) return c == 0.0 ? std::numeric_limits<double>::infinity() : a / c;
  const double den = c * z + d;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return (a * z + b) / den;
}

}  // namespace modlim::analytic
