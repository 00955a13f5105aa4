#pragma once

#include "toda/conformal.hpp"
#include "toda/series.hpp"

#include <complex>
#include <string>
#include <vector>

namespace toda {

struct CheckFailure {
  std::string input;
  std::string expected;
  std::string got;
};

struct CheckReport {
  std::string name;
  long cases_run = 0;
  std::vector<CheckFailure> failures;
  double worst_residual = 0.0;
  bool advisory = false;  // conjecture scans report, they never gate
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
  void record(const std::string& input, const std::string& expected,
              const std::string& got);
};

nlohmann::json to_json(const CheckReport& r);

// Exact scan of the closed evaluation for signatures whose antiholomorphic
// side is a single index-1 column: (i-1)! on the diagonal family, 0 elsewhere.
CheckReport check_theorem2(int max_i, CoefficientCache& cache);

// The five coefficient estimates, checked as exact-rational inequalities over
// every enumerable argument of total weight <= max_weight.  e^x enters upper
// bounds only and is replaced by a truncated lower partial sum, which only
// strengthens the checked inequality.
CheckReport check_bounds(int max_weight, CoefficientCache& cache);

// Sufficient convergence region: 0 < t0 < 1 and |t_k| <= (4 n^3 2^n e^n)^{-1}
// for all k <= n, with nothing supported beyond n.
struct ConvergenceRegion {
  bool inside = false;
  double moment_bound = 0.0;               // (4 n^3 2^n e^n)^{-1}
  static double tail_bound(int K) { return std::ldexp(1.0, -K); }
};
ConvergenceRegion in_convergence_region(const MomentVector& t, int n);

// For K = 2..K_max the absolute degree-K term sum at a region point must stay
// within the 2^{-K} tail bound.
CheckReport check_tail(const MomentVector& t, int K_max,
                       CoefficientCache* cache = nullptr);

// Numeric residuals of the three dispersionless-hierarchy equations at one
// point, built from formal second derivatives of the truncated series.  The
// mixed equation is evaluated with the sign convention the series satisfies,
//   1 - e^{-D(z) Dbar(xibar) F} = (z xibar)^{-1} e^{+d0 (d0 + D + Dbar) F}.
CheckReport check_hirota_residuals(const TruncatedF& f, const MomentVector& t,
                                   std::complex<double> z, std::complex<double> xibar,
                                   double tolerance = 1e-6);

// Derivative tuples for the expansion identity, every composition of
// 2..max_total (k >= 2) plus the degenerate single-derivative tuples.
std::vector<std::vector<int>> expansion_tuples(int max_total);

// The expansion of k-fold moment derivatives into products of second-order
// data: for each tuple, applies every admissible remaining antiholomorphic
// derivative multiset, restricts to the t0 line and compares both sides as
// exact rationals.
CheckReport check_derivative_expansion(const std::vector<std::vector<int>>& tuples,
                                       CoefficientCache& cache);

// Exact agreement of build_f(2, K) with the independently expanded closed
// form for the first two moment pairs.
CheckReport check_quartic(int K, CoefficientCache* cache = nullptr);

// Boundary conditions as coefficient identities, extracted from a built
// slice of the series by formal differentiation.
CheckReport check_boundary_conditions(int max_i, CoefficientCache& cache);

// Reports any negative coefficient of weight <= max_weight; advisory.
CheckReport check_nonnegativity(int max_weight, CoefficientCache& cache);

}  // namespace toda
