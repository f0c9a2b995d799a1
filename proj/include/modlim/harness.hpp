#pragma once

#include <optional>
#include <vector>

#include "modlim/discrete.hpp"
#include "modlim/domain.hpp"

namespace modlim::harness {

/// Cell size for a stretched domain: eps * min f / cells, where min f is
/// taken over the x-range spanned by the quadruple.
double coupled_h(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q, double eps,
                 double cells_per_min_height = 8.0);

inline constexpr double kMinCellsPerHeight = 8.0;
inline constexpr double kDiscretizationAllowance = 0.03;

struct HSchedule {
  double cells_per_min_height = kMinCellsPerHeight;
  /// Explicit cell sizes, one per eps; each must satisfy h <= eps min f / 8.
  std::vector<double> h;
};

struct SweepRow {
  double eps = 0.0;
  double h = 0.0;
  double raw_modulus = 0.0;
  double eps_times_modulus = 0.0;
  double lower_bound = 0.0;  // eps times the solver's lower bound
  double gap = 0.0;          // eps times the solver's gap
  double allowance = 0.0;    // discretization allowance charged to this row
  int iterations = 0;
  bool converged = true;
  bool above_vertical = true;  // eps mod >= mod(vertical) - gap - allowance
};

struct Extrapolation {
  double limit = 0.0;
  double observed_rate = 0.0;  // NaN when the last differences vanish
  double limit_gap = 0.0;      // row gaps propagated through the weights
};

/// Quadratic fit L + C1 eps + C2 eps^2 through the last three points,
/// evaluated at eps = 0. Exact on first-order sequences L + C eps.
Extrapolation richardson(const std::vector<double>& eps, const std::vector<double>& values,
                         const std::vector<double>& gaps = {});

struct SweepReport {
  std::vector<SweepRow> rows;
  double extrapolated_limit = 0.0;
  double observed_rate = 0.0;
  double limit_gap = 0.0;
  double target = 0.0;
  double relative_error = 0.0;  // absolute error when the target is 0
  bool monotone_tail = true;
  bool rows_above_vertical = true;
  bool complete = true;  // false when a row hit the iteration limit
};

/// Rows need at least three eps values for the extrapolation.
SweepReport epsilon_sweep(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q,
                          const std::vector<double>& eps_list, const HSchedule& schedule = {},
                          const discrete::SolveOptions& opts = {});

struct EtaRow {
  double eta = 0.0;
  double restricted_modulus = 0.0;
  double lower_bound = 0.0;
  double gap = 0.0;
  double riemann_bound = 0.0;
  int iterations = 0;
};

struct EtaReport {
  std::vector<EtaRow> rows;
  double limit_estimate = 0.0;
  double h = 0.0;
  bool monotone = true;       // nondecreasing in eta within gaps
  bool below_riemann = true;  // each row under its Riemann-sum bound plus allowance
};

EtaReport eta_sweep(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q,
                    const std::vector<double>& eta_list, double h,
                    const discrete::SolveOptions& opts = {});

/// Best partition bound: min over partitions of the start range of the sum of
/// (padded width) / (min f over the padded piece), padding eta per side and
/// clipping to the domain. 0 when no curve of extent < eta exists.
double riemann_upper_bound(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q,
                           double eta, int grid = 256);

struct SandwichVerdict {
  double vertical = 0.0;
  double eps_limit = 0.0;
  double eta_limit = 0.0;
  double tol_chain = 0.0;
  bool lower_holds = false;  // vertical <= eps_limit + tol_chain
  bool upper_holds = false;  // eps_limit <= eta_limit + tol_chain
  bool eta_monotone = false;
  SweepReport sweep;
  EtaReport eta;
  bool holds() const { return lower_holds && upper_holds && eta_monotone; }
};

SandwichVerdict sandwich_check(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q,
                               const std::vector<double>& eps_list,
                               const std::vector<double>& eta_list, double eta_h,
                               const HSchedule& schedule = {},
                               const discrete::SolveOptions& opts = {});

struct WideCheck {
  double eps = 0.0;
  double eta = 0.0;
  double eps_times_modulus = 0.0;
  double gap = 0.0;
  double bound = 0.0;  // eps^2 area / eta^2
  bool holds = false;
};

/// eps mod of the stretched family of curves with x-extent >= eta, against
/// eps^2 A / eta^2.
WideCheck wide_family_check(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q,
                            double eps, double eta, double h,
                            const discrete::SolveOptions& opts = {});

struct LscRow {
  double n = 0.0;
  double integral = 0.0;  // of dx / f_n over the overlap
  double error = 0.0;     // |integral - integral of dx / f|
};

struct LscReport {
  std::vector<domain::BoundaryFunction> approximants;
  std::vector<LscRow> rows;
  double target = 0.0;
  double floor = 0.0;
  int samples = 0;
  bool monotone = true;         // f_n <= f_{n+1} <= f at every sample
  bool errors_decreasing = true;
};

/// f_n(x) = max(c, inf_y f(y) + n |x - y|) for a step f, as piecewise-linear
/// functions. c is min f over `overlap` (whole interval when absent).
domain::BoundaryFunction lsc_approximant(const domain::BoundaryFunction& f, double n, double floor);

LscReport lsc_approximation(const domain::BoundaryFunction& f, const std::vector<double>& n_list,
                            std::optional<domain::Interval> overlap = std::nullopt,
                            int samples = 1000);

/// Exact integral of dx / f for piecewise-linear or step f.
double reciprocal_integral(const domain::BoundaryFunction& f, double a, double b);

}  // namespace modlim::harness
