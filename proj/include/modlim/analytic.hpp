#pragma once

#include <array>

namespace modlim::analytic {

/// Real points w1 < w2 < w3 with the fourth boundary point at infinity.
struct HalfPlaneTriple {
  double w1, w2, w3;
};

HalfPlaneTriple make_triple(double w1, double w2, double w3);

/// Four points on the unit circle, given by their angles (radians), in
/// counterclockwise order.
struct CircleQuadruple {
  double a, b, c, d;
};

CircleQuadruple make_circle_quadruple(double a, double b, double c, double d);

/// Liouville mass of a box of geodesics, always the log of a cross-ratio > 1.
struct LiouvilleMass {
  double value;
};

/// Arithmetic-geometric mean of two positive numbers.
double agm(double a, double b);

/// log((w3 - w1) / (w3 - w2)).
LiouvilleMass liouville_mass_halfplane(const HalfPlaneTriple& t);

/// log of (a-c)(b-d) / ((a-d)(b-c)) evaluated on the circle points.
LiouvilleMass liouville_mass_circle(const CircleQuadruple& q);

/// Disk-to-half-plane Moebius image with d sent to infinity.
HalfPlaneTriple normalize_to_halfplane(const CircleQuadruple& q);

/// Modulus function of the Groetzsch ring, mu(r) = (pi/2) K'(r) / K(r),
/// via AGM for r >= 1e-8 and log(4/r) below.
double grotzsch_mu(double r);

inline constexpr double kMuAsymptoticThreshold = 1e-8;

/// Modulus of the curves joining [w1, w2] to [w3, inf] in the upper half plane.
double quad_modulus(const HalfPlaneTriple& t);

/// Modulus of the conjugate family, joining [w2, w3] to [inf, w1]. Computed by
/// moving w1 to infinity and reusing `quad_modulus`.
double conjugate_modulus(const HalfPlaneTriple& t);

/// Modulus of the curves joining [z0, z1] to [z2, z3] for four points in
/// increasing cyclic order on the extended real line (at most one infinite).
double quad_modulus_real(const std::array<double, 4>& z);

/// quad_modulus - L / pi - (2 / pi) log 4.
double asymptotic_defect(const HalfPlaneTriple& t);

/// Orientation-preserving real Moebius map z -> (a z + b) / (c z + d),
/// ad - bc > 0, acting on the extended real line.
struct RealMobius {
  double a, b, c, d;
  double operator()(double z) const;
};

}  // namespace modlim::analytic
