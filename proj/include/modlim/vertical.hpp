#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "modlim/domain.hpp"
#include "modlim/quadrature.hpp"

namespace modlim::vertical {

/// Vertical segments {x} x (0, length(x)) for x in a finite union of
/// intervals.
class VerticalFamily {
 public:
  /// Support intervals are sorted and merged; each must lie inside the
  /// length function's interval.
  VerticalFamily(std::vector<domain::Interval> support, domain::BoundaryFunction length);

  const std::vector<domain::Interval>& support() const { return support_; }
  const domain::BoundaryFunction& length() const { return length_; }
  bool empty() const { return support_.empty(); }
  bool contains(double x) const;
  double measure() const;

 private:
  std::vector<domain::Interval> support_;
  domain::BoundaryFunction length_;
};

/// Segments of the domain joining the bottom arc to the top arc; supported
/// on the overlap interval (possibly empty).
VerticalFamily vertical_family(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q);

/// Integral of dx / |gamma(x)| over the support. Closed form for step
/// lengths, adaptive quadrature otherwise; 0 for the empty family.
double modulus_vertical(const VerticalFamily& v, const quadrature::Options& opts = {});

/// rho_0(x, y) = 1 / |gamma(x)| on the segments, 0 elsewhere.
class ExtremalDensity {
 public:
  explicit ExtremalDensity(VerticalFamily family);

  double operator()(double x, double y) const;
  const VerticalFamily& family() const { return family_; }

  /// Integral of rho along the vertical through x, by quadrature in y.
  double line_integral(double x) const;
  /// Integral of rho^2 over the plane, by nested quadrature.
  double energy() const;
  /// Integral of h * rho over the plane, by nested quadrature. `cuts` are
  /// extra x-locations where h may be discontinuous.
  double pairing(const std::function<double(double, double)>& h,
                 const std::vector<double>& cuts = {}) const;

 private:
  VerticalFamily family_;
};

ExtremalDensity extremal_density(const VerticalFamily& v);

struct TestFunction {
  std::string label;
  std::function<double(double, double)> h;
  std::vector<double> cuts;  // x-locations of discontinuities, if any
};

struct BeurlingProbes {
  int verticals = 1000;
  int random_tests = 100;
  std::uint64_t seed = 1;
  std::vector<TestFunction> extra;
};

struct ProbeResult {
  std::string label;
  double min_vertical_integral = 0.0;  // min over sampled verticals of the integral of h dy
  double pairing = 0.0;
  bool admissible_probe = true;  // vertical integrals were nonnegative
  bool passed = true;
};

struct BeurlingReport {
  int verticals_checked = 0;
  double max_line_integral_error = 0.0;
  bool unit_line_integrals = true;
  std::vector<ProbeResult> probes;
  bool passed() const;
  int probes_passed() const;
};

/// Randomized check of Beurling's extremality criterion for rho_0: unit
/// rho-length on sampled verticals, and a nonnegative pairing with every probe
/// h whose vertical integrals are nonnegative.
BeurlingReport check_beurling(const ExtremalDensity& rho, const VerticalFamily& v,
                              const BeurlingProbes& probes);

inline constexpr double kPairingFloor = -1e-10;

/// Integral of dx / |f(x) - g(x)| over I.
double transverse_measure(const domain::StripDomain& s, domain::Interval I,
                          const quadrature::Options& opts = {});

}  // namespace modlim::vertical
