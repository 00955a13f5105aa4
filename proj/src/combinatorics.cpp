#include "toda/combinatorics.hpp"

#include <stdexcept>

namespace toda {

Int factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative argument");
  Int r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

Int binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;  // exact: partial products are binomials
  }
  return r;
}

Int falling(long long a, int b) {
  if (b < 0) throw std::domain_error("falling factorial with negative length");
  Int r = 1;
  for (int i = 0; i < b; ++i) r *= a - i;
  return r;
}

Int int_pow(const Int& base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in rational: " + s);
  return Rational(num, den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

void composition_rec(int total, int m, Composition& parts,
                     const std::function<void(const Composition&)>& fn) {
  if (m == 1) {
    parts.push_back(total);
    fn(parts);
    parts.pop_back();
    return;
  }
  for (int first = 1; first <= total - (m - 1); ++first) {
    parts.push_back(first);
    composition_rec(total - first, m - 1, parts, fn);
    parts.pop_back();
  }
}

void distribution_rec(int pos, int kbar, int m, int empty_blocks,
                      std::vector<int>& block_size, LabeledDistribution& assign,
                      const std::function<void(const LabeledDistribution&)>& fn) {
  if (pos == kbar) {
    if (empty_blocks == 0) fn(assign);
    return;
  }
  // every remaining position may be needed to fill an empty block
  if (kbar - pos < empty_blocks) return;
  for (int b = 0; b < m; ++b) {
    const bool was_empty = block_size[b] == 0;
    assign[pos] = b;
    ++block_size[b];
    distribution_rec(pos + 1, kbar, m, empty_blocks - (was_empty ? 1 : 0),
                     block_size, assign, fn);
    --block_size[b];
  }
}

}  // namespace

void for_each_composition(int total, int m,
                          const std::function<void(const Composition&)>& fn) {
  if (m < 1 || total < m) return;
  Composition parts;
  parts.reserve(m);
  composition_rec(total, m, parts, fn);
}

Int composition_count(int total, int m) { return binomial(total - 1, m - 1); }

void for_each_distribution(int kbar, int m,
                           const std::function<void(const LabeledDistribution&)>& fn) {
  if (m < 1 || kbar < m) return;
  std::vector<int> block_size(m, 0);
  LabeledDistribution assign(kbar, -1);
  distribution_rec(0, kbar, m, m, block_size, assign, fn);
}

Int distribution_count(int kbar, int m) {
  if (m < 1 || kbar < m) return 0;
  // m! * Stirling2(kbar, m) by inclusion-exclusion
  Int total = 0;
  for (int j = 0; j <= m; ++j) {
    Int term = binomial(m, j) * int_pow(Int(m - j), kbar);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

}  // namespace toda
