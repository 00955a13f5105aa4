#include "toda/series.hpp"

#include <random>

#include "doctest.h"

using namespace toda;

namespace {

Monomial mono(int t0, std::vector<std::pair<int, int>> hol,
              std::vector<std::pair<int, int>> antihol) {
  Monomial m;
  m.t0_exp = t0;
  m.hol = std::move(hol);
  m.antihol = std::move(antihol);
  return m;
}

}  // namespace

TEST_CASE("build_f smallest truncations") {
  const TruncatedF f12 = build_f(1, 2);
  REQUIRE(f12.terms.size() == 1);
  CHECK(coefficient(f12, mono(1, {{1, 1}}, {{1, 1}})) == 1);

  const TruncatedF f22 = build_f(2, 2);
  CHECK(coefficient(f22, mono(2, {{2, 1}}, {{2, 1}})) == 2);
  CHECK(coefficient(f22, mono(1, {{1, 1}}, {{1, 1}})) == 1);

  const TruncatedF f23 = build_f(2, 3);
  CHECK(coefficient(f23, mono(1, {{1, 2}}, {{2, 1}})) == 1);
  CHECK(coefficient(f23, mono(1, {{2, 1}}, {{1, 2}})) == 1);
  CHECK(coefficient(f23, mono(1, {{1, 1}}, {{2, 1}})) == 0);  // weight mismatch

  // second order of the log expansion: (1/2)(4x)^2/2 on t0^2 t2^2 tbar2^2
  const TruncatedF f24 = build_f(2, 4);
  CHECK(coefficient(f24, mono(2, {{2, 2}}, {{2, 2}})) == 4);
}

TEST_CASE("build_f argument and capacity errors") {
  CHECK_THROWS_AS(build_f(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_f(2, 1), std::invalid_argument);
  BuildOptions opts;
  opts.signature_ceiling = 3;
  CHECK_THROWS_AS(build_f(2, 6, opts), capacity_error);
}

TEST_CASE("build_f invariants: weight grading, exponent law, hermitian symmetry") {
  const TruncatedF f = build_f(3, 6);
  CHECK(!f.terms.empty());
  for (const auto& [m, c] : f.terms) {
    CHECK(m.hol_weight() == m.antihol_weight());
    CHECK(m.t0_exp == m.hol_weight() - m.degree() + 2);
    CHECK(m.t0_exp >= 0);
    CHECK(m.max_index() <= 3);
    CHECK(m.degree() <= 6);
    // swapping the two sides leaves the coefficient unchanged
    Monomial swapped = m;
    std::swap(swapped.hol, swapped.antihol);
    CHECK(coefficient(f, swapped) == c);
  }
}

TEST_CASE("build_f is independent of the thread count") {
  BuildOptions serial, parallel;
  parallel.threads = 4;
  const TruncatedF a = build_f(2, 6, serial);
  const TruncatedF b = build_f(2, 6, parallel);
  CHECK(a.terms == b.terms);
}

TEST_CASE("differentiation on the t0 line") {
  const TruncatedF f = build_f(2, 5);
  const FormalSeries F = as_formal(f);

  // d0 F restricted to the line: t0 log t0 - t0
  const FormalSeries d0 = differentiate(F, Variable::t0());
  const FormalSeries d0_line = restrict_to_t0_line(d0);
  REQUIRE(d0_line.terms.size() == 2);
  Monomial t1log;
  t1log.t0_exp = 1;
  t1log.log_t0 = true;
  Monomial t1plain;
  t1plain.t0_exp = 1;
  CHECK(d0_line.terms.at(t1log) == 1);
  CHECK(d0_line.terms.at(t1plain) == -1);

  // d0^2 F on the line: log t0
  const FormalSeries d00_line = restrict_to_t0_line(differentiate(d0, Variable::t0()));
  REQUIRE(d00_line.terms.size() == 1);
  Monomial logonly;
  logonly.log_t0 = true;
  CHECK(d00_line.terms.at(logonly) == 1);

  // d_k F vanishes on the line for every k >= 1
  for (int k = 1; k <= 2; ++k) {
    CHECK(restrict_to_t0_line(differentiate(F, Variable::hol(k))).terms.empty());
    CHECK(restrict_to_t0_line(differentiate(F, Variable::antihol(k))).terms.empty());
  }
}

TEST_CASE("evaluate: head only, quartic point, reality") {
  const TruncatedF f = build_f(2, 6);
  const FormalSeries F = as_formal(f);

  MomentVector head_only;
  head_only.t0 = 1.0;
  CHECK(evaluate(F, head_only).real() == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(evaluate(F, head_only).imag() == doctest::Approx(0.0).epsilon(1e-14));

  // t2 = 0: F = -3/4 t^2 + 1/2 t^2 log t + t a^2 exactly (higher terms vanish)
  MomentVector p;
  p.t0 = 0.3;
  p.t[1] = {0.2, 0.0};
  const double expected = -0.75 * 0.09 + 0.5 * 0.09 * std::log(0.3) + 0.3 * 0.04;
  CHECK(evaluate(F, p).real() == doctest::Approx(expected).epsilon(1e-13));

  // conjugate-filled points give a real value
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> d(-0.05, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    MomentVector q;
    q.t0 = 0.4;
    q.t[1] = {d(rng), d(rng)};
    q.t[2] = {d(rng), d(rng)};
    CHECK(std::abs(evaluate(F, q).imag()) <= 1e-12);
  }

  MomentVector bad;
  bad.t0 = 0.0;
  CHECK_THROWS_AS(evaluate(F, bad), std::domain_error);
}

TEST_CASE("coefficient: bounds policing") {
  const TruncatedF f = build_f(2, 4);
  CHECK(coefficient(f, mono(1, {{1, 1}}, {{1, 1}})) == 1);
  CHECK_THROWS_AS(coefficient(f, mono(0, {{3, 1}}, {{3, 1}})), std::domain_error);
  CHECK_THROWS_AS(coefficient(f, mono(3, {{1, 3}}, {{1, 3}})), std::domain_error);
}

TEST_CASE("series JSON: exact strings, deterministic order") {
  const TruncatedF f = build_f(2, 4);
  const nlohmann::json j = to_json(f);
  CHECK(j["index_bound"] == 2);
  CHECK(j["degree_bound"] == 4);
  CHECK(j["head"]["t0^2*log(t0)"] == "1/2");
  CHECK(j["head"]["t0^2"] == "-3/4");
  REQUIRE(j["terms"].is_array());
  CHECK(j["terms"].size() == f.terms.size());
  // t0 t1 tbar1 is the first (lowest-degree) series term
  CHECK(j["terms"][0]["t0"] == 1);
  CHECK(j["terms"][0]["coef"] == "1");
  CHECK(j["terms"][0]["t"]["1"] == 1);
  CHECK(j["terms"][0]["tbar"]["1"] == 1);
  CHECK(to_json(f).dump() == j.dump());

  // degrees never decrease along the serialized order
  int last_degree = 0;
  for (const auto& term : j["terms"]) {
    int deg = 0;
    for (const auto& [k, e] : term["t"].items()) deg += e.get<int>();
    for (const auto& [k, e] : term["tbar"].items()) deg += e.get<int>();
    CHECK(deg >= last_degree);
    last_degree = deg;
  }
}

TEST_CASE("moment vector JSON round trip") {
  MomentVector t;
  t.t0 = 0.49;
  t.t[2] = {0.05, -0.01};
  const MomentVector back = moment_vector_from_json(to_json(t));
  CHECK(back.t0 == t.t0);
  CHECK(back.at(2) == t.at(2));
  CHECK(back.max_index() == 2);
}
