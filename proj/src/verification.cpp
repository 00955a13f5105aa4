#include "toda/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace toda {

namespace {

long long sum_of(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 0LL);
}

std::string vec_str(const std::vector<int>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string row_str(const WeightedRow& row) {
  return vec_str(row.s) + "/" + vec_str(row.l);
}

// Rational lower bound of e^x for integer x >= 0; safe inside upper bounds.
Rational exp_lower_bound(int x) {
  const int terms = std::max(60, 3 * x);
  Rational sum = 0, term = 1;
  for (int j = 0; j <= terms; ++j) {
    sum += term;
    term *= x;
    term /= j + 1;
  }
  return sum;
}

Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

void CheckReport::record(const std::string& input, const std::string& expected,
                         const std::string& got) {
  failures.push_back({input, expected, got});
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"input", f.input}, {"expected", f.expected}, {"got", f.got}});
  nlohmann::json j{{"name", r.name},
                   {"cases_run", r.cases_run},
                   {"failures", fails},
                   {"worst_residual", r.worst_residual},
                   {"advisory", r.advisory},
                   {"passed", r.passed()}};
  if (!r.metrics.empty()) j["metrics"] = r.metrics;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

CheckReport check_theorem2(int max_i, CoefficientCache& cache) {
  CheckReport report;
  report.name = "theorem2";
  for (int i = 1; i <= max_i; ++i) {
    for_each_multiset_of_weight(i, i, [&](const std::vector<std::pair<int, int>>& hol) {
      for (int nbar = 1; nbar <= max_i; ++nbar) {
        MomentSignature sig;
        sig.weight = i;
        sig.hol = hol;
        sig.antihol = {{1, nbar}};
        const bool diagonal =
            hol.size() == 1 && hol[0] == std::make_pair(i, 1) && nbar == i;
        const Rational expected = diagonal ? Rational(factorial(i - 1)) : Rational(0);
        const Rational got = cache.n2(sig);
        ++report.cases_run;
        if (got != expected)
          report.record(sig.str(), to_string(expected), to_string(got));
      }
    });
  }
  return report;
}

CheckReport check_bounds(int max_weight, CoefficientCache& cache) {
  CheckReport report;
  report.name = "bounds";

  // estimate 1: tuple counts against the unconstrained composition count
  for (int total = 2; total <= max_weight; ++total) {
    for (int m = 1; m <= total; ++m) {
      for_each_composition(total, m, [&](const Composition& s) {
        for (int i = 1; i < total; ++i) {
          const int j = total - i;
          const Int got = p_count(i, s);
          const Int bound = std::min(binomial(i - 1, m - 1), binomial(j - 1, m - 1));
          ++report.cases_run;
          if (got > bound)
            report.record("P i=" + std::to_string(i) + " s=" + vec_str(s),
                          "<= " + bound.str(), got.str());
        }
      });
    }
  }

  // estimate 2: T^1 against min(i,j)^{m-1}/m!
  for (int total = 2; total <= max_weight; ++total) {
    for (int m = 1; m <= total; ++m) {
      for_each_composition(total, m, [&](const Composition& s) {
        for (int i = 1; i < total; ++i) {
          const int j = total - i;
          const Rational got = cache.t1(i, j, s);
          const Rational bound(int_pow(Int(std::min(i, j)), m - 1), factorial(m));
          ++report.cases_run;
          if (got > bound)
            report.record("T1 i=" + std::to_string(i) + " j=" + std::to_string(j) +
                              " s=" + vec_str(s),
                          "<= " + to_string(bound), to_string(got));
        }
      });
    }
  }

  // estimate 3: T^2 against I^{m-1}(k-1)^m (k-2)!/m!
  for (int total = 2; total <= max_weight; ++total) {
    for (int k = 2; k <= total; ++k) {
      for_each_composition(total, k, [&](const Composition& ilist) {
        const int I = *std::max_element(ilist.begin(), ilist.end());
        for (int m = 1; m <= total; ++m) {
          for_each_composition(total, m, [&](const Composition& svec) {
            for_each_composition(m + k - 2, m, [&](const Composition& lrow) {
              WeightedRow row{svec, lrow};
              const Rational got = cache.t2(ilist, row);
              const Rational bound(
                  int_pow(Int(I), m - 1) * int_pow(Int(k - 1), m) * factorial(k - 2),
                  factorial(m));
              ++report.cases_run;
              if (abs_rat(got) > bound)
                report.record("T2 i=" + vec_str(ilist) + " row=" + row_str(row),
                              "<= " + to_string(bound), to_string(got));
            });
          });
        }
      });
    }
  }

  // estimate 4: the l-row aggregated S sum against m (kbar-1)! C(...) C(...)
  for (int w = 1; w <= max_weight; ++w) {
    for_each_multiset_of_weight(w, w, [&](const std::vector<std::pair<int, int>>& ms) {
      MomentSignature probe;
      probe.weight = w;
      probe.hol = {{w, 1}};
      probe.antihol = ms;
      const std::vector<int> ibar = probe.antihol_expanded();
      const int kbar = static_cast<int>(ibar.size());
      const int Ibar = ibar.back();
      for (int m = 1; m <= kbar; ++m) {
        for (int k = 2; k <= w + 2; ++k) {
          Int s_tilde = 0;
          for_each_composition(m + k - 2, m, [&](const Composition& lrow) {
            for_each_composition(w, m, [&](const Composition& svec) {
              WeightedRow row{svec, lrow};
              s_tilde += cache.s_weight(ibar, row);
            });
          });
          const Int bound = Int(m) * factorial(kbar - 1) *
                            binomial(static_cast<long long>(Ibar) * kbar - kbar, k - 2) *
                            binomial(static_cast<long long>(Ibar) * kbar, kbar - m);
          ++report.cases_run;
          if (s_tilde > bound)
            report.record("Stilde ibar=" + vec_str(ibar) + " m=" + std::to_string(m) +
                              " k=" + std::to_string(k),
                          "<= " + bound.str(), s_tilde.str());
        }
      }
    });
  }

  // estimate 5: |N^1| against (k-1)!(kbar-1)! e^{I(k-1)} 2^{Ibar kbar - kbar} 2^{Ibar kbar}
  for (int w = 1; w <= max_weight; ++w) {
    std::vector<std::vector<int>> sides;
    for_each_multiset_of_weight(w, w, [&](const std::vector<std::pair<int, int>>& ms) {
      MomentSignature probe;
      probe.weight = w;
      probe.hol = ms;
      probe.antihol = {{w, 1}};
      sides.push_back(probe.hol_expanded());
    });
    for (const auto& ilist : sides) {
      for (const auto& ibar : sides) {
        const int k = static_cast<int>(ilist.size());
        const int kbar = static_cast<int>(ibar.size());
        const int I = ilist.back();
        const int Ibar = ibar.back();
        const Rational got = cache.n1(w, ilist, ibar);
        const long long ik = static_cast<long long>(Ibar) * kbar;
        const Rational bound = Rational(factorial(k - 1) * factorial(kbar - 1)) *
                               exp_lower_bound(I * (k - 1)) *
                               Rational(int_pow(Int(2), static_cast<int>(ik - kbar)) *
                                        int_pow(Int(2), static_cast<int>(ik)));
        ++report.cases_run;
        if (abs_rat(got) > bound)
          report.record("N1 i=" + vec_str(ilist) + " ibar=" + vec_str(ibar),
                        "<= " + to_string(bound), to_string(got));
      }
    }
  }

  return report;
}

ConvergenceRegion in_convergence_region(const MomentVector& t, int n) {
  ConvergenceRegion region;
  region.moment_bound = 1.0 / (4.0 * std::pow(n, 3) * std::pow(2.0, n) * std::exp(n));
  if (!(t.t0 > 0.0 && t.t0 < 1.0)) return region;
  for (const auto& [k, v] : t.t) {
    if (std::abs(v) == 0.0) continue;
    if (k > n) return region;
    if (std::abs(v) > region.moment_bound) return region;
  }
  region.inside = true;
  return region;
}

CheckReport check_tail(const MomentVector& t, int K_max, CoefficientCache* cache) {
  const int n = std::max(1, t.max_index());
  const ConvergenceRegion region = in_convergence_region(t, n);
  if (!region.inside)
    throw std::invalid_argument("check_tail: point is outside the convergence region");

  CheckReport report;
  report.name = "tail";
  report.notes.push_back("n=" + std::to_string(n) +
                         " moment_bound=" + std::to_string(region.moment_bound));

  BuildOptions opts;
  opts.cache = cache;
  const TruncatedF f = build_f(n, K_max, opts);

  std::map<int, double> degree_sum;
  for (const auto& [mono, coef] : f.terms) {
    double v = std::abs(to_double(coef)) * std::pow(t.t0, mono.t0_exp);
    for (auto [idx, e] : mono.hol) v *= std::pow(std::abs(t.at(idx)), e);
    for (auto [idx, e] : mono.antihol) v *= std::pow(std::abs(t.at(idx)), e);
    degree_sum[mono.degree()] += v;
  }

  for (int K = 2; K <= K_max; ++K) {
    const double sum = degree_sum.count(K) ? degree_sum[K] : 0.0;
    const double bound = ConvergenceRegion::tail_bound(K);
    report.metrics["degree_" + std::to_string(K)] = sum;
    ++report.cases_run;
    report.worst_residual = std::max(report.worst_residual, sum / bound);
    if (sum > bound * (1.0 + 1e-12))
      report.record("degree K=" + std::to_string(K), "<= " + std::to_string(bound),
                    std::to_string(sum));
  }
  return report;
}

CheckReport check_hirota_residuals(const TruncatedF& f, const MomentVector& t,
                                   std::complex<double> z, std::complex<double> xibar,
                                   double tolerance) {
  using C = std::complex<double>;
  const int n = f.index_bound;

  const FormalSeries F = as_formal(f);
  const FormalSeries d0 = differentiate(F, Variable::t0());
  const C d00 = evaluate(differentiate(d0, Variable::t0()), t);

  std::vector<C> d0h(n + 1), d0a(n + 1);
  std::vector<std::vector<C>> dhh(n + 1, std::vector<C>(n + 1));
  std::vector<std::vector<C>> dha(n + 1, std::vector<C>(n + 1));
  std::vector<std::vector<C>> daa(n + 1, std::vector<C>(n + 1));
  for (int j = 1; j <= n; ++j) {
    d0h[j] = evaluate(differentiate(d0, Variable::hol(j)), t);
    d0a[j] = evaluate(differentiate(d0, Variable::antihol(j)), t);
    const FormalSeries dj = differentiate(F, Variable::hol(j));
    const FormalSeries djb = differentiate(F, Variable::antihol(j));
    for (int k = 1; k <= n; ++k) {
      dhh[j][k] = evaluate(differentiate(dj, Variable::hol(k)), t);
      dha[j][k] = evaluate(differentiate(dj, Variable::antihol(k)), t);
      daa[j][k] = evaluate(differentiate(djb, Variable::antihol(k)), t);
    }
  }

  auto dop_pair = [&](const std::vector<std::vector<C>>& m, C a, C b) {
    C acc = 0.0;
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        acc += std::pow(a, -j) * std::pow(b, -k) * m[j][k] /
               (static_cast<double>(j) * static_cast<double>(k));
    return acc;
  };
  auto dop_single = [&](const std::vector<C>& v, C a) {
    C acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += std::pow(a, -k) * v[k] / static_cast<double>(k);
    return acc;
  };

  CheckReport report;
  report.name = "hirota";

  const C xi = xibar;  // the second evaluation point; plays xibar in eq. (3)

  // eq (1): (z-xi) e^{D(z)D(xi)F} = z e^{-d0 D(z)F} - xi e^{-d0 D(xi)F}
  const C lhs1 = (z - xi) * std::exp(dop_pair(dhh, z, xi));
  const C rhs1 = z * std::exp(-dop_single(d0h, z)) - xi * std::exp(-dop_single(d0h, xi));
  const double r1 = std::abs(lhs1 - rhs1);

  // eq (2): the antiholomorphic mirror of eq (1)
  const C lhs2 = (z - xi) * std::exp(dop_pair(daa, z, xi));
  const C rhs2 = z * std::exp(-dop_single(d0a, z)) - xi * std::exp(-dop_single(d0a, xi));
  const double r2 = std::abs(lhs2 - rhs2);

  // eq (3): 1 - e^{-D(z)Dbar(xibar)F} = (z xibar)^{-1} e^{d0(d0+D+Dbar)F}
  const C lhs3 = 1.0 - std::exp(-dop_pair(dha, z, xibar));
  const C rhs3 = std::exp(d00 + dop_single(d0h, z) + dop_single(d0a, xibar)) / (z * xibar);
  const double r3 = std::abs(lhs3 - rhs3);

  report.metrics["eq1"] = r1;
  report.metrics["eq2"] = r2;
  report.metrics["eq3"] = r3;
  report.worst_residual = std::max({r1, r2, r3});
  const double scale = ConvergenceRegion::tail_bound(f.degree_bound) +
                       std::pow(std::abs(z), -(n + 1)) + std::pow(std::abs(xibar), -(n + 1));
  report.notes.push_back("truncation_scale=" + std::to_string(scale));
  report.cases_run = 3;
  if (r1 > tolerance) report.record("eq1", "<= " + std::to_string(tolerance), std::to_string(r1));
  if (r2 > tolerance) report.record("eq2", "<= " + std::to_string(tolerance), std::to_string(r2));
  if (r3 > tolerance) report.record("eq3", "<= " + std::to_string(tolerance), std::to_string(r3));
  return report;
}

std::vector<std::vector<int>> expansion_tuples(int max_total) {
  std::vector<std::vector<int>> tuples;
  for (int total = 1; total <= max_total; ++total)
    for (int k = 1; k <= total; ++k)
      for_each_composition(total, k,
                           [&](const Composition& c) { tuples.push_back(c); });
  return tuples;
}

CheckReport check_derivative_expansion(const std::vector<std::vector<int>>& tuples,
                                       CoefficientCache& cache) {
  CheckReport report;
  report.name = "expansion";

  for (const auto& ilist : tuples) {
    const int k = static_cast<int>(ilist.size());
    const int i = static_cast<int>(sum_of(ilist));
    Int prod_i = 1;
    for (int v : ilist) prod_i *= v;
    std::vector<int> ilist_sorted = ilist;
    std::sort(ilist_sorted.begin(), ilist_sorted.end());

    for_each_multiset_of_weight(i, i, [&](const std::vector<std::pair<int, int>>& bar) {
      MomentSignature probe;
      probe.weight = i;
      probe.hol = {{i, 1}};
      probe.antihol = bar;
      const std::vector<int> B = probe.antihol_expanded();
      const int p = static_cast<int>(B.size());
      Int prod_b = 1;
      for (int b : B) prod_b *= b;
      const int exponent = i - k - p + 2;

      // left side: the single surviving series term after the derivatives
      const Rational lhs = exponent >= 0
                               ? Rational(prod_i * prod_b) * cache.n1(i, ilist_sorted, B)
                               : Rational(0);

      // right side: the equation-system sum, with the antiholomorphic
      // derivatives Leibniz-distributed over the m factors and assignments
      // grouped by block sums and sizes
      Rational rhs = 0;
      const int max_m = std::min(p, i);
      for (int m = 1; m <= max_m; ++m) {
        const int sign = (m % 2 == 1) ? 1 : -1;
        const auto& entries = cache.distribution_summary(B, m);
        std::map<std::vector<int>, std::vector<const CoefficientCache::DistEntry*>> by_sums;
        for (const auto& e : entries) by_sums[e.sums].push_back(&e);

        for (const auto& [svec, group] : by_sums) {
          if (sum_of(svec) != i) continue;
          Int prod_s = 1;
          for (int v : svec) prod_s *= v;
          for_each_composition(m + k - 2, m, [&](const Composition& lrow) {
            WeightedRow row{svec, lrow};
            const Rational t = cache.t2(ilist, row);
            if (t == 0) return;
            // factor r after restriction: s_r * (s_r-1)!/(s_r-n_r+1)! times
            // the falling power from the l_r extra t0 derivatives; the row
            // weight carries the 1/(l_r-1)! normalization of the system
            Rational leib = 0;
            for (const auto* e : group) {
              Int prod = e->count;
              bool ok = true;
              Rational fac = 1;
              for (int r = 0; r < m && ok; ++r) {
                const int er = svec[r] - e->sizes[r] + 1;
                if (er < 1) {
                  ok = false;
                  break;
                }
                const Int fall = falling(er, lrow[r]);
                if (fall == 0) {
                  ok = false;
                  break;
                }
                fac *= Rational(Int(svec[r]) * factorial(svec[r] - 1) * fall,
                                factorial(er) * factorial(lrow[r] - 1));
              }
              if (ok) leib += Rational(prod) * fac;
            }
            if (leib == 0) return;
            rhs += sign * Rational(prod_i, prod_s) * t * Rational(prod_b) * leib;
          });
        }
      }

      ++report.cases_run;
      if (k == 1) {
        // degenerate tuple: compare directly against the boundary display
        const Rational display = exponent >= 0
                                     ? Rational(prod_b * factorial(i),
                                                factorial(i - p + 1))
                                     : Rational(0);
        if (lhs != display)
          report.record("k=1 i=" + std::to_string(i) + " bar=" + vec_str(B),
                        to_string(display), to_string(lhs));
        return;
      }
      if (lhs != rhs)
        report.record("dI=" + vec_str(ilist) + " bar=" + vec_str(B) +
                          " t0^" + std::to_string(exponent),
                      to_string(lhs), to_string(rhs));
    });
  }
  return report;
}

CheckReport check_quartic(int K, CoefficientCache* cache) {
  CheckReport report;
  report.name = "quartic";

  BuildOptions opts;
  opts.cache = cache;
  const TruncatedF f = build_f(2, K, opts);

  // closed form re-expanded term by term:
  //   (1/2) t0^2 log(1/(1-4x)) + t0 (y + t1^2 tbar2 + tbar1^2 t2)/(1-4x)
  // with x = t2 tbar2, y = t1 tbar1; the log t0 head coincides by definition.
  std::map<Monomial, Rational> oracle;
  auto put = [&oracle](int t0e, std::vector<std::pair<int, int>> hol,
                       std::vector<std::pair<int, int>> antihol, const Rational& c) {
    if (c == 0) return;
    Monomial m;
    m.t0_exp = t0e;
    m.hol = std::move(hol);
    m.antihol = std::move(antihol);
    oracle[m] += c;
  };

  Int pow4 = 1;
  for (int j = 0; 2 * j + 2 <= K || 2 * j <= K; ++j) {
    if (j >= 1 && 2 * j <= K)  // (1/2) sum_j (4x)^j / j
      put(2, {{2, j}}, {{2, j}}, Rational(pow4, 2 * j));
    if (2 * j + 2 <= K)  // y (4x)^j
      put(1, j ? std::vector<std::pair<int, int>>{{1, 1}, {2, j}}
               : std::vector<std::pair<int, int>>{{1, 1}},
          j ? std::vector<std::pair<int, int>>{{1, 1}, {2, j}}
            : std::vector<std::pair<int, int>>{{1, 1}},
          Rational(pow4));
    if (2 * j + 3 <= K) {  // t1^2 tbar2 (4x)^j and the swapped twin
      put(1, j ? std::vector<std::pair<int, int>>{{1, 2}, {2, j}}
               : std::vector<std::pair<int, int>>{{1, 2}},
          {{2, j + 1}}, Rational(pow4));
      put(1, {{2, j + 1}},
          j ? std::vector<std::pair<int, int>>{{1, 2}, {2, j}}
            : std::vector<std::pair<int, int>>{{1, 2}},
          Rational(pow4));
    }
    pow4 *= 4;
  }

  auto mono_str = [](const Monomial& m) {
    std::ostringstream os;
    os << "t0^" << m.t0_exp;
    for (auto [i, e] : m.hol) os << " t" << i << "^" << e;
    for (auto [i, e] : m.antihol) os << " tbar" << i << "^" << e;
    return os.str();
  };

  for (const auto& [mono, expect] : oracle) {
    auto it = f.terms.find(mono);
    const Rational got = it == f.terms.end() ? Rational(0) : it->second;
    ++report.cases_run;
    if (got != expect) report.record(mono_str(mono), to_string(expect), to_string(got));
  }
  for (const auto& [mono, got] : f.terms) {
    if (oracle.count(mono)) continue;
    ++report.cases_run;
    report.record(mono_str(mono), "0 (absent from the closed form)", to_string(got));
  }
  return report;
}

CheckReport check_boundary_conditions(int max_i, CoefficientCache& cache) {
  CheckReport report;
  report.name = "boundary";

  // slice of the series that survives one antiholomorphic derivative: every
  // term with antiholomorphic part (i | 1), i <= max_i
  FormalSeries slice;
  Monomial head_log;
  head_log.t0_exp = 2;
  head_log.log_t0 = true;
  slice.add(head_log, TruncatedF::head_log_coef());
  Monomial head_quad;
  head_quad.t0_exp = 2;
  slice.add(head_quad, TruncatedF::head_quad_coef());

  for (int i = 1; i <= max_i; ++i) {
    for_each_multiset_of_weight(i, max_i, [&](const std::vector<std::pair<int, int>>& hol) {
      MomentSignature sig;
      sig.weight = i;
      sig.hol = hol;
      sig.antihol = {{i, 1}};
      const Rational n2 = cache.n2(sig);
      if (n2 == 0) return;
      Rational pre = Rational(Int(i));
      for (auto [idx, mult] : hol) pre *= Rational(int_pow(Int(idx), mult), factorial(mult));
      Monomial mono;
      mono.t0_exp = i - (sig.hol_degree() + 1) + 2;
      mono.hol = hol;
      mono.antihol = {{i, 1}};
      slice.add(mono, pre * n2);
    });
  }

  for (int i = 1; i <= max_i; ++i) {
    const FormalSeries after_bar = differentiate(slice, Variable::antihol(i));
    for (int k = 1; k <= i; ++k) {
      for_each_composition(i, k, [&](const Composition& parts) {
        FormalSeries d = after_bar;
        for (int part : parts) d = differentiate(d, Variable::hol(part));
        d = restrict_to_t0_line(d);

        FormalSeries expected;
        Monomial mono;
        mono.t0_exp = i - k + 1;
        Int pre = factorial(i);
        for (int part : parts) pre *= part;
        expected.add(mono, Rational(pre, factorial(i - k + 1)));

        ++report.cases_run;
        if (!(d.terms == expected.terms)) {
          std::ostringstream got;
          for (const auto& [m, c] : d.terms)
            got << to_string(c) << "*t0^" << m.t0_exp << (m.log_t0 ? "*log " : " ");
          report.record("dbar_" + std::to_string(i) + " d_" + vec_str(parts),
                        to_string(expected.terms.begin()->second) + "*t0^" +
                            std::to_string(mono.t0_exp),
                        got.str().empty() ? "0" : got.str());
        }
      });
    }
  }

  // d_i dbar_j F on the line: i t0^i exactly when i = j, otherwise 0
  FormalSeries pair_slice;
  for (int i = 1; i <= max_i; ++i) {
    for (int j = 1; j <= max_i; ++j) {
      MomentSignature sig;
      sig.weight = i;
      sig.hol = {{i, 1}};
      sig.antihol = {{j, 1}};
      const Rational n2 = cache.n2(sig);  // off-diagonal weights mismatch -> 0
      if (n2 == 0) continue;
      Monomial mono;
      mono.t0_exp = i;
      mono.hol = {{i, 1}};
      mono.antihol = {{j, 1}};
      pair_slice.add(mono, Rational(Int(i) * Int(j)) * n2);
    }
  }
  for (int i = 1; i <= max_i; ++i) {
    for (int j = 1; j <= max_i; ++j) {
      FormalSeries d = differentiate(pair_slice, Variable::hol(i));
      d = differentiate(d, Variable::antihol(j));
      d = restrict_to_t0_line(d);
      FormalSeries expected;
      if (i == j) {
        Monomial mono;
        mono.t0_exp = i;
        expected.add(mono, Rational(Int(i)));
      }
      ++report.cases_run;
      if (!(d.terms == expected.terms))
        report.record("d_" + std::to_string(i) + " dbar_" + std::to_string(j),
                      i == j ? std::to_string(i) + "*t0^" + std::to_string(i) : "0",
                      "mismatch");
    }
  }

  return report;
}

CheckReport check_nonnegativity(int max_weight, CoefficientCache& cache) {
  CheckReport report;
  report.name = "nonnegativity";
  report.advisory = true;
  for (int i = 1; i <= max_weight; ++i) {
    std::vector<std::vector<std::pair<int, int>>> sides;
    for_each_multiset_of_weight(i, i, [&](const std::vector<std::pair<int, int>>& ms) {
      sides.push_back(ms);
    });
    for (const auto& hol : sides) {
      for (const auto& antihol : sides) {
        MomentSignature sig;
        sig.weight = i;
        sig.hol = hol;
        sig.antihol = antihol;
        const Rational v = cache.n2(sig);
        ++report.cases_run;
        if (v < 0) report.record(sig.str(), ">= 0", to_string(v));
      }
    }
  }
  return report;
}

}  // namespace toda
