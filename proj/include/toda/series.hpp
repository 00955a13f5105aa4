#pragma once

#include "toda/coefficients.hpp"

#include <complex>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace toda {

// One term t0^t0_exp * (log t0)^[log_t0] * prod t_k^n_k * prod tbar_k^nb_k.
// Series monomials built by build_f have log_t0 = false and t0_exp >= 0; the
// formal layer also carries the log head and its derivatives.
struct Monomial {
  int t0_exp = 0;
  bool log_t0 = false;
  std::vector<std::pair<int, int>> hol;      // (index, exponent), ascending
  std::vector<std::pair<int, int>> antihol;  // (index, exponent), ascending

  int degree() const;            // sum of variable exponents
  long long hol_weight() const;
  long long antihol_weight() const;
  int max_index() const;

  // graded lexicographic: degree, then t0 exponent, hol, antihol, log flag
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const;
};

// Numeric point (t0, t_1, t_2, ...); conjugate variables are always filled as
// tbar_k = conj(t_k) at evaluation time.
struct MomentVector {
  double t0 = 0.0;
  std::map<int, std::complex<double>> t;

  int max_index() const;
  std::complex<double> at(int k) const;
};

// Series closed under formal differentiation: arbitrary integer t0 exponents
// and rational multiples of log t0.
struct FormalSeries {
  std::map<Monomial, Rational> terms;

  void add(const Monomial& m, const Rational& c);
};

// Taylor series of the string solution truncated by moment-index bound n and
// total degree bound K.  The closed head (1/2) t0^2 log t0 - (3/4) t0^2 is
// kept implicit; `terms` holds the double sum with exact coefficients.
struct TruncatedF {
  int index_bound = 0;
  int degree_bound = 0;
  std::map<Monomial, Rational> terms;

  static const Rational& head_log_coef();   // 1/2  on t0^2 log t0
  static const Rational& head_quad_coef();  // -3/4 on t0^2
};

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  int threads = 1;
  std::size_t signature_ceiling = 2'000'000;
  CoefficientCache* cache = nullptr;  // reused only when threads == 1
};

// Every monomial with indices <= n and degree <= K admitted by the series
// summation, with exact coefficients (prod i_r^{n_r}/n_r!) * N^2.
TruncatedF build_f(int n, int K, const BuildOptions& opts = {});

struct Variable {
  enum class Kind { T0, Hol, Antihol } kind;
  int index = 0;

  static Variable t0() { return {Kind::T0, 0}; }
  static Variable hol(int k) { return {Kind::Hol, k}; }
  static Variable antihol(int k) { return {Kind::Antihol, k}; }
};

FormalSeries as_formal(const TruncatedF& f);  // series terms plus the head
FormalSeries differentiate(const FormalSeries& f, Variable var);
FormalSeries restrict_to_t0_line(const FormalSeries& f);  // drop every term with moment variables

// Stored coefficient (0 when absent); querying outside the truncation bounds
// is a domain error so that "absent" and "not computed" stay distinct.
Rational coefficient(const TruncatedF& f, const Monomial& mono);

// Numeric substitution with tbar_k = conj(t_k); exact coefficients are
// converted to double only here.  Requires point.t0 > 0.
std::complex<double> evaluate(const FormalSeries& f, const MomentVector& point);

nlohmann::json to_json(const TruncatedF& f);
nlohmann::json to_json(const MomentVector& t);
MomentVector moment_vector_from_json(const nlohmann::json& j);

}  // namespace toda
