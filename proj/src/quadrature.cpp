#include "modlim/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "modlim/error.hpp"

namespace modlim::quadrature {

Result integrate(const std::function<double(double)>& f, std::span<const double> points,
                 const Options& opts) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  Result total;
  if (points.size() < 2) return total;
  const double per_piece = opts.abs_tol / static_cast<double>(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i], b = points[i + 1];
    if (!(b > a)) continue;
    double err = 0.0, l1 = 0.0;
    double v = Rule::integrate(f, a, b, 0, 0.0, &err, &l1);
    if (!(err <= per_piece)) {
      // Boost's tolerance is relative to the L1 norm. Translate the absolute
      // budget; integrands that are pure roundoff would otherwise never stop.
      const double rel = std::max(1e-14, 0.5 * per_piece / std::max(l1, 1e-300));
      v = Rule::integrate(f, a, b, opts.max_depth, rel, &err, &l1);
    }
    if (!std::isfinite(v) || !std::isfinite(err) || err > std::max(per_piece, 1e-15 * l1)) {
      std::ostringstream os;
      os.precision(6);
      os << "error estimate " << err << " on [" << a << ", " << b << "] exceeds budget "
         << per_piece;
      raise(Errc::kQuadratureFailure, os.str());
    }
    total.value += v;
    total.error_estimate += err;
  }
  return total;
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts) {
  const double pts[2] = {a, b};
  return integrate(f, std::span<const double>(pts, 2), opts);
}

}  // namespace modlim::quadrature
