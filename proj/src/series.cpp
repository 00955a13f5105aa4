#include "toda/series.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <thread>

namespace toda {

int Monomial::degree() const {
  int d = 0;
  for (auto [idx, e] : hol) d += e;
  for (auto [idx, e] : antihol) d += e;
  return d;
}

long long Monomial::hol_weight() const {
  long long w = 0;
  for (auto [idx, e] : hol) w += static_cast<long long>(idx) * e;
  return w;
}

long long Monomial::antihol_weight() const {
  long long w = 0;
  for (auto [idx, e] : antihol) w += static_cast<long long>(idx) * e;
  return w;
}

int Monomial::max_index() const {
  int m = 0;
  if (!hol.empty()) m = std::max(m, hol.back().first);
  if (!antihol.empty()) m = std::max(m, antihol.back().first);
  return m;
}

bool Monomial::operator<(const Monomial& o) const {
  const int d = degree(), od = o.degree();
  return std::tie(d, t0_exp, hol, antihol, log_t0) <
         std::tie(od, o.t0_exp, o.hol, o.antihol, o.log_t0);
}

bool Monomial::operator==(const Monomial& o) const {
  return t0_exp == o.t0_exp && log_t0 == o.log_t0 && hol == o.hol &&
         antihol == o.antihol;
}

int MomentVector::max_index() const {
  int m = 0;
  for (const auto& [k, v] : t)
    if (v != std::complex<double>(0.0, 0.0)) m = std::max(m, k);
  return m;
}

std::complex<double> MomentVector::at(int k) const {
  auto it = t.find(k);
  return it == t.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

void FormalSeries::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

const Rational& TruncatedF::head_log_coef() {
  static const Rational r(1, 2);
  return r;
}

const Rational& TruncatedF::head_quad_coef() {
  static const Rational r(-3, 4);
  return r;
}

namespace {

struct SignatureJob {
  MomentSignature sig;
  int t0_exp;
};

Rational signature_coefficient(CoefficientCache& cache, const MomentSignature& sig) {
  const Rational n2 = cache.n2(sig);
  if (n2 == 0) return 0;
  Rational pre = 1;
  for (auto [idx, mult] : sig.hol) pre *= Rational(int_pow(Int(idx), mult), factorial(mult));
  for (auto [idx, mult] : sig.antihol) pre *= Rational(int_pow(Int(idx), mult), factorial(mult));
  return pre * n2;
}

Monomial signature_monomial(const MomentSignature& sig, int t0_exp) {
  Monomial m;
  m.t0_exp = t0_exp;
  m.hol = sig.hol;
  m.antihol = sig.antihol;
  return m;
}

}  // namespace

TruncatedF build_f(int n, int K, const BuildOptions& opts) {
  if (n < 1) throw std::invalid_argument("build_f: index bound must be >= 1");
  if (K < 2) throw std::invalid_argument("build_f: degree bound must be >= 2");

  // moment-index multisets grouped by weight, one list per side
  std::vector<std::vector<std::pair<int, int>>> multisets;
  for (int size = 1; size <= K - 1; ++size)
    for_each_multiset_of_size(size, n, [&](const std::vector<std::pair<int, int>>& ms) {
      multisets.push_back(ms);
    });

  std::map<long long, std::vector<int>> by_weight;
  std::vector<int> degrees(multisets.size());
  std::vector<long long> weights(multisets.size());
  for (std::size_t idx = 0; idx < multisets.size(); ++idx) {
    long long w = 0;
    int d = 0;
    for (auto [i, m] : multisets[idx]) {
      w += static_cast<long long>(i) * m;
      d += m;
    }
    weights[idx] = w;
    degrees[idx] = d;
    by_weight[w].push_back(static_cast<int>(idx));
  }

  std::vector<SignatureJob> jobs;
  for (const auto& [w, ids] : by_weight) {
    for (int hol_id : ids) {
      for (int anti_id : ids) {
        const int deg = degrees[hol_id] + degrees[anti_id];
        if (deg > K) continue;
        const long long e = w - deg + 2;
        if (e < 0) continue;  // excluded by the series summation condition
        MomentSignature sig;
        sig.weight = static_cast<int>(w);
        sig.hol = multisets[hol_id];
        sig.antihol = multisets[anti_id];
        jobs.push_back({std::move(sig), static_cast<int>(e)});
        if (jobs.size() > opts.signature_ceiling)
          throw capacity_error("build_f: signature count exceeds ceiling of " +
                               std::to_string(opts.signature_ceiling));
      }
    }
  }

  std::vector<Rational> coefs(jobs.size());
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    CoefficientCache local;
    CoefficientCache& cache = opts.cache ? *opts.cache : local;
    for (std::size_t j = 0; j < jobs.size(); ++j)
      coefs[j] = signature_coefficient(cache, jobs[j].sig);
  } else {
    // each worker owns its cache; results are merged in job order so the
    // outcome does not depend on the thread count
    std::vector<std::thread> pool;
    std::size_t chunk = (jobs.size() + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::size_t lo = std::min(jobs.size(), w * chunk);
      const std::size_t hi = std::min(jobs.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&jobs, &coefs, lo, hi]() {
        CoefficientCache cache;
        for (std::size_t j = lo; j < hi; ++j)
          coefs[j] = signature_coefficient(cache, jobs[j].sig);
      });
    }
    for (auto& th : pool) th.join();
  }

  TruncatedF f;
  f.index_bound = n;
  f.degree_bound = K;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (coefs[j] == 0) continue;
    assert(jobs[j].sig.hol_weight() == jobs[j].sig.antihol_weight());
    f.terms.emplace(signature_monomial(jobs[j].sig, jobs[j].t0_exp), coefs[j]);
  }
  return f;
}

FormalSeries as_formal(const TruncatedF& f) {
  FormalSeries out;
  Monomial head_log;
  head_log.t0_exp = 2;
  head_log.log_t0 = true;
  out.add(head_log, TruncatedF::head_log_coef());
  Monomial head_quad;
  head_quad.t0_exp = 2;
  out.add(head_quad, TruncatedF::head_quad_coef());
  for (const auto& [mono, coef] : f.terms) out.add(mono, coef);
  return out;
}

FormalSeries differentiate(const FormalSeries& f, Variable var) {
  FormalSeries out;
  for (const auto& [mono, coef] : f.terms) {
    switch (var.kind) {
      case Variable::Kind::T0: {
        if (mono.log_t0) {
          // d/dt0 [t0^a log t0] = a t0^(a-1) log t0 + t0^(a-1)
          Monomial with_log = mono;
          with_log.t0_exp -= 1;
          if (mono.t0_exp != 0) out.add(with_log, coef * mono.t0_exp);
          Monomial no_log = with_log;
          no_log.log_t0 = false;
          out.add(no_log, coef);
        } else if (mono.t0_exp != 0) {
          Monomial m = mono;
          m.t0_exp -= 1;
          out.add(m, coef * mono.t0_exp);
        }
        break;
      }
      case Variable::Kind::Hol:
      case Variable::Kind::Antihol: {
        const auto& side = var.kind == Variable::Kind::Hol ? mono.hol : mono.antihol;
        auto it = std::find_if(side.begin(), side.end(),
                               [&](const auto& p) { return p.first == var.index; });
        if (it == side.end()) break;
        Monomial m = mono;
        auto& mside = var.kind == Variable::Kind::Hol ? m.hol : m.antihol;
        const std::size_t pos = it - side.begin();
        const int e = mside[pos].second;
        if (e == 1)
          mside.erase(mside.begin() + pos);
        else
          mside[pos].second -= 1;
        out.add(m, coef * e);
        break;
      }
    }
  }
  return out;
}

FormalSeries restrict_to_t0_line(const FormalSeries& f) {
  FormalSeries out;
  for (const auto& [mono, coef] : f.terms)
    if (mono.hol.empty() && mono.antihol.empty()) out.add(mono, coef);
  return out;
}

Rational coefficient(const TruncatedF& f, const Monomial& mono) {
  if (mono.log_t0)
    throw std::domain_error("coefficient: log terms live in the head, not the table");
  if (mono.max_index() > f.index_bound || mono.degree() > f.degree_bound)
    throw std::domain_error("coefficient: monomial outside truncation bounds");
  auto it = f.terms.find(mono);
  return it == f.terms.end() ? Rational(0) : it->second;
}

std::complex<double> evaluate(const FormalSeries& f, const MomentVector& point) {
  if (!(point.t0 > 0.0)) throw std::domain_error("evaluate: t0 must be positive");
  const double log_t0 = std::log(point.t0);
  std::complex<double> sum = 0.0;
  for (const auto& [mono, coef] : f.terms) {
    std::complex<double> v = std::pow(point.t0, mono.t0_exp);
    if (mono.log_t0) v *= log_t0;
    for (auto [idx, e] : mono.hol) {
      const std::complex<double> tk = point.at(idx);
      if (tk == std::complex<double>(0.0, 0.0)) {
        v = 0.0;
        break;
      }
      for (int q = 0; q < e; ++q) v *= tk;
    }
    if (v != std::complex<double>(0.0, 0.0)) {
      for (auto [idx, e] : mono.antihol) {
        const std::complex<double> tk = std::conj(point.at(idx));
        if (tk == std::complex<double>(0.0, 0.0)) {
          v = 0.0;
          break;
        }
        for (int q = 0; q < e; ++q) v *= tk;
      }
    }
    if (v != std::complex<double>(0.0, 0.0)) sum += to_double(coef) * v;
  }
  return sum;
}

namespace {

nlohmann::json exponent_map(const std::vector<std::pair<int, int>>& side) {
  nlohmann::json j = nlohmann::json::object();
  for (auto [idx, e] : side) j[std::to_string(idx)] = e;
  return j;
}

}  // namespace

nlohmann::json to_json(const TruncatedF& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, coef] : f.terms) {
    terms.push_back({{"t0", mono.t0_exp},
                     {"t", exponent_map(mono.hol)},
                     {"tbar", exponent_map(mono.antihol)},
                     {"coef", to_string(coef)}});
  }
  return {{"index_bound", f.index_bound},
          {"degree_bound", f.degree_bound},
          {"head", {{"t0^2*log(t0)", to_string(TruncatedF::head_log_coef())},
                    {"t0^2", to_string(TruncatedF::head_quad_coef())}}},
          {"terms", terms}};
}

nlohmann::json to_json(const MomentVector& t) {
  nlohmann::json tk = nlohmann::json::object();
  for (const auto& [k, v] : t.t) tk[std::to_string(k)] = {v.real(), v.imag()};
  return {{"t0", t.t0}, {"t", tk}};
}

MomentVector moment_vector_from_json(const nlohmann::json& j) {
  MomentVector t;
  t.t0 = j.at("t0").get<double>();
  if (j.contains("t"))
    for (const auto& [k, v] : j.at("t").items())
      t.t[std::stoi(k)] = {v.at(0).get<double>(), v.at(1).get<double>()};
  return t;
}

}  // namespace toda
