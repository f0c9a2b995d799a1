#pragma once

#include <functional>
#include <span>

namespace modlim::quadrature {

struct Options {
  double abs_tol = 1e-10;
  /// Bisection depth allowed per piece; this is the evaluation budget.
  unsigned max_depth = 18;
};

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) over consecutive pieces [points[i], points[i+1]].
/// Piece boundaries are never straddled, so integrands that are smooth between
/// the given points converge quickly. Throws QuadratureFailure when the summed
/// error estimate exceeds `abs_tol` or the integrand is not finite.
Result integrate(const std::function<double(double)>& f, std::span<const double> points,
                 const Options& opts = {});

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

}  // namespace modlim::quadrature
