#include "toda/verification.hpp"

#include <cmath>

#include "doctest.h"

using namespace toda;
using C = std::complex<double>;

namespace {

MomentVector region_point() {
  MomentVector t;
  t.t0 = 0.25;
  t.t[1] = {1e-3, 0.0};
  t.t[2] = {1e-3, 0.0};
  return t;
}

}  // namespace

TEST_CASE("theorem 2 scan") {
  CoefficientCache cache;
  const CheckReport r = check_theorem2(6, cache);
  CHECK(r.passed());
  CHECK(r.cases_run == 6 * (1 + 2 + 3 + 5 + 7 + 11));  // partitions x nbar range
}

TEST_CASE("estimate suite at weight 5") {
  CoefficientCache cache;
  const CheckReport r = check_bounds(5, cache);
  CHECK(r.passed());
  CHECK(r.cases_run > 1000);
}

TEST_CASE("convergence region predicate") {
  const double bound2 = 1.0 / (4.0 * 8.0 * 4.0 * std::exp(2.0));
  CHECK(bound2 == doctest::Approx(1.0573e-3).epsilon(1e-3));

  const ConvergenceRegion inside = in_convergence_region(region_point(), 2);
  CHECK(inside.inside);
  CHECK(inside.moment_bound == doctest::Approx(bound2).epsilon(1e-12));

  MomentVector t0_only;
  t0_only.t0 = 0.5;
  CHECK(in_convergence_region(t0_only, 2).inside);

  MomentVector at_one = region_point();
  at_one.t0 = 1.0;
  CHECK(!in_convergence_region(at_one, 2).inside);

  MomentVector beyond = region_point();
  beyond.t[3] = {1e-4, 0.0};
  CHECK(!in_convergence_region(beyond, 2).inside);

  MomentVector too_big = region_point();
  too_big.t[1] = {2e-3, 0.0};
  CHECK(!in_convergence_region(too_big, 2).inside);

  CHECK(ConvergenceRegion::tail_bound(4) == 0.0625);
}

TEST_CASE("tail check at the region point and at the bound") {
  CoefficientCache cache;
  CHECK(check_tail(region_point(), 8, &cache).passed());

  MomentVector at_bound;
  at_bound.t0 = 0.25;
  const double bound = in_convergence_region(at_bound, 2).moment_bound;
  at_bound.t[1] = {bound, 0.0};
  at_bound.t[2] = {bound, 0.0};
  CHECK(check_tail(at_bound, 8, &cache).passed());

  MomentVector zeros;
  zeros.t0 = 0.5;
  const CheckReport r = check_tail(zeros, 6, &cache);
  CHECK(r.passed());
  for (const auto& [key, v] : r.metrics) CHECK(v == 0.0);

  MomentVector outside = region_point();
  outside.t0 = 1.5;
  CHECK_THROWS_AS(check_tail(outside, 6, &cache), std::invalid_argument);
}

TEST_CASE("hirota: closed forms on the t0 line") {
  // with only t0 nonzero both sides of the mixed equation are elementary:
  // lhs = 1 - exp(-sum_{k<=n} w^k/k), rhs = t0/(z xibar), w = t0/(z xibar)
  const TruncatedF f = build_f(2, 6);
  MomentVector t;
  t.t0 = 0.25;
  const C z(10.0, 0.0), xibar(0.0, 10.0);

  const CheckReport r = check_hirota_residuals(f, t, z, xibar, 1e-6);
  CHECK(r.passed());

  const C w = t.t0 / (z * xibar);
  const C lhs_closed = 1.0 - std::exp(-(w + w * w / 2.0));
  const C rhs_closed = t.t0 / (z * xibar);
  // the measured residual must match the closed-form discrepancy to 1e-12
  CHECK(std::abs(r.metrics.at("eq3") - std::abs(lhs_closed - rhs_closed)) <= 1e-12);
  // eq (1) degenerates to (z-xi) = (z-xi) on the line
  CHECK(r.metrics.at("eq1") <= 1e-12);
  CHECK(r.metrics.at("eq2") <= 1e-12);
}

TEST_CASE("hirota: region point residuals and mirror symmetry") {
  const TruncatedF f = build_f(2, 8);
  const CheckReport r =
      check_hirota_residuals(f, region_point(), {10.0, 0.0}, {0.0, 10.0}, 1e-6);
  CHECK(r.passed());
  CHECK(r.metrics.at("eq1") <= 1e-6);
  CHECK(r.metrics.at("eq3") <= 1e-6);
  // real moment data: the antiholomorphic mirror sees the same residual
  CHECK(std::abs(r.metrics.at("eq1") - r.metrics.at("eq2")) <= 1e-12);
}

TEST_CASE("hirota: residuals survive complex moment phases") {
  const TruncatedF f = build_f(2, 8);
  MomentVector t;
  t.t0 = 0.25;
  t.t[1] = 1e-3 * std::exp(C(0.0, 0.7));
  t.t[2] = 1e-3 * std::exp(C(0.0, -1.3));
  const CheckReport r =
      check_hirota_residuals(f, t, {8.0, 6.0}, {-3.0, 9.0}, 1e-6);
  CHECK(r.passed());
  CHECK(r.worst_residual <= 1e-6);
}

TEST_CASE("derivative expansion identity for small tuples") {
  CoefficientCache cache;
  const CheckReport r = check_derivative_expansion(expansion_tuples(5), cache);
  CHECK(r.passed());
  CHECK(r.cases_run > 50);

  // an order-shuffled tuple is covered by the same identity
  const CheckReport shuffled = check_derivative_expansion({{2, 1}, {1, 2}}, cache);
  CHECK(shuffled.passed());
}

TEST_CASE("quartic closed form at K = 6") {
  CoefficientCache cache;
  const CheckReport r = check_quartic(6, &cache);
  CHECK(r.passed());
  CHECK(r.cases_run >= 10);
}

TEST_CASE("boundary conditions at max_i = 6") {
  CoefficientCache cache;
  const CheckReport r = check_boundary_conditions(6, cache);
  CHECK(r.passed());
  CHECK(r.cases_run > 60);
}

TEST_CASE("nonnegativity scan is advisory") {
  CoefficientCache cache;
  const CheckReport r = check_nonnegativity(4, cache);
  CHECK(r.advisory);
  CHECK(r.passed());  // no negative coefficient in this range
}

TEST_CASE("report JSON shape") {
  CoefficientCache cache;
  const CheckReport r = check_theorem2(3, cache);
  const nlohmann::json j = to_json(r);
  CHECK(j["name"] == "theorem2");
  CHECK(j["passed"] == true);
  CHECK(j["advisory"] == false);
  CHECK(j["failures"].is_array());
  CHECK(j["cases_run"].get<long>() == r.cases_run);
}
