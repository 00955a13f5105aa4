#include "toda/coefficients.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace toda {

namespace {

long long sum_of(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 0LL);
}

// Flat memo key: sections separated by -1 (all payload entries are >= 0).
void append_section(std::vector<int>& key, const std::vector<int>& v) {
  key.push_back(-1);
  key.insert(key.end(), v.begin(), v.end());
}

}  // namespace

void WeightedRow::validate() const {
  if (s.size() != l.size())
    throw std::invalid_argument("weighted row: s and l lengths differ");
  if (s.empty()) throw std::invalid_argument("weighted row: empty");
  for (int v : s)
    if (v < 1) throw std::invalid_argument("weighted row: s entries must be >= 1");
  for (int v : l)
    if (v < 1) throw std::invalid_argument("weighted row: l entries must be >= 1");
}

void MomentSignature::validate() const {
  if (weight < 0) throw std::invalid_argument("signature: negative weight");
  if (hol.empty() || antihol.empty())
    throw std::invalid_argument("signature: both index lists must be nonempty");
  for (const auto* side : {&hol, &antihol}) {
    int prev = 0;
    for (auto [idx, mult] : *side) {
      if (idx <= prev) throw std::invalid_argument("signature: indices must be strictly increasing");
      if (mult < 1) throw std::invalid_argument("signature: multiplicities must be >= 1");
      prev = idx;
    }
  }
}

long long MomentSignature::hol_weight() const {
  long long w = 0;
  for (auto [idx, mult] : hol) w += static_cast<long long>(idx) * mult;
  return w;
}

long long MomentSignature::antihol_weight() const {
  long long w = 0;
  for (auto [idx, mult] : antihol) w += static_cast<long long>(idx) * mult;
  return w;
}

int MomentSignature::hol_degree() const {
  int d = 0;
  for (auto [idx, mult] : hol) d += mult;
  return d;
}

int MomentSignature::antihol_degree() const {
  int d = 0;
  for (auto [idx, mult] : antihol) d += mult;
  return d;
}

std::vector<int> MomentSignature::hol_expanded() const {
  std::vector<int> out;
  for (auto [idx, mult] : hol) out.insert(out.end(), mult, idx);
  return out;
}

std::vector<int> MomentSignature::antihol_expanded() const {
  std::vector<int> out;
  for (auto [idx, mult] : antihol) out.insert(out.end(), mult, idx);
  return out;
}

std::string MomentSignature::str() const {
  std::ostringstream os;
  os << weight << ":(";
  auto emit = [&os](const std::vector<std::pair<int, int>>& side) {
    for (std::size_t r = 0; r < side.size(); ++r) {
      if (r) os << ',';
      os << side[r].first << '^' << side[r].second;
    }
  };
  emit(hol);
  os << '|';
  emit(antihol);
  os << ')';
  return os.str();
}

MomentSignature MomentSignature::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;

  auto fail = [&text]() -> MomentSignature {
    throw std::invalid_argument("malformed signature: \"" + text +
                                "\" (expected i:(i1^n1,...|j1^m1,...))");
  };

  auto colon = t.find(':');
  if (colon == std::string::npos) return fail();
  MomentSignature sig;
  try {
    std::size_t used = 0;
    sig.weight = std::stoi(t.substr(0, colon), &used);
    if (used != colon) return fail();
  } catch (const std::exception&) {
    return fail();
  }
  if (colon + 1 >= t.size() || t[colon + 1] != '(' || t.back() != ')') return fail();
  std::string body = t.substr(colon + 2, t.size() - colon - 3);
  auto bar = body.find('|');
  if (bar == std::string::npos) return fail();

  auto parse_side = [&fail](const std::string& part) {
    std::vector<std::pair<int, int>> side;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) fail();
      auto caret = item.find('^');
      try {
        int idx, mult = 1;
        std::size_t used = 0;
        if (caret == std::string::npos) {
          idx = std::stoi(item, &used);
          if (used != item.size()) fail();
        } else {
          idx = std::stoi(item.substr(0, caret), &used);
          if (used != caret) fail();
          mult = std::stoi(item.substr(caret + 1), &used);
          if (used != item.size() - caret - 1) fail();
        }
        side.emplace_back(idx, mult);
      } catch (const std::invalid_argument&) {
        fail();
      } catch (const std::out_of_range&) {
        fail();
      }
    }
    return side;
  };

  sig.hol = parse_side(body.substr(0, bar));
  sig.antihol = parse_side(body.substr(bar + 1));
  sig.validate();
  return sig;
}

bool MomentSignature::operator<(const MomentSignature& o) const {
  return std::tie(weight, hol, antihol) < std::tie(o.weight, o.hol, o.antihol);
}

bool MomentSignature::operator==(const MomentSignature& o) const {
  return weight == o.weight && hol == o.hol && antihol == o.antihol;
}

Int p_count(int i, const Composition& s) {
  if (i < 0) return 0;
  const int m = static_cast<int>(s.size());
  if (m == 0) return i == 0 ? 1 : 0;
  std::vector<Int> ways(i + 1, 0);
  ways[0] = 1;
  for (int r = 0; r < m; ++r) {
    std::vector<Int> next(i + 1, 0);
    for (int acc = 0; acc <= i; ++acc) {
      if (ways[acc] == 0) continue;
      const int cap = std::min(s[r] - 1, i - acc);
      for (int part = 1; part <= cap; ++part) next[acc + part] += ways[acc];
    }
    ways.swap(next);
  }
  return ways[i];
}

Rational CoefficientCache::t1(int i, int /*j*/, const Composition& s) {
  const int m = static_cast<int>(s.size());
  if (m < 1) throw std::invalid_argument("t1: empty composition");
  const long long total = sum_of(s);
  // tuple counts are invariant under i -> total - i (reflect i_r -> s_r - i_r)
  const int ic = static_cast<int>(std::min<long long>(i, total - i));

  Key key{ic};
  append_section(key, s);
  if (auto it = t1_memo_.find(key); it != t1_memo_.end()) return it->second;

  Rational sum = 0;
  for (int k = 1; k <= m; ++k) {
    for_each_composition(m, k, [&](const Composition& n) {
      Composition grouped(k);
      int pos = 0;
      Int denom = Int(k);
      for (int b = 0; b < k; ++b) {
        int block = 0;
        for (int q = 0; q < n[b]; ++q) block += s[pos++];
        grouped[b] = block;
        denom *= factorial(n[b]);
      }
      const Int count = p_count(ic, grouped);
      if (count != 0) sum += Rational(count, denom);
    });
  }
  t1_memo_.emplace(std::move(key), sum);
  return sum;
}

Rational CoefficientCache::t2(const std::vector<int>& ilist, const WeightedRow& row) {
  row.validate();
  const int k = static_cast<int>(ilist.size());
  if (k < 2) throw std::invalid_argument("t2: needs at least two upper indices");
  const int m = row.size();
  if (sum_of(row.s) != sum_of(ilist)) return 0;
  if (sum_of(row.l) != m + k - 2) return 0;

  if (k == 2) {
    // row-sum constraint forces l = (1,...,1) here
    return t1(ilist[0], ilist[1], row.s);
  }

  Key key(ilist);
  append_section(key, row.s);
  append_section(key, row.l);
  if (auto it = t2_memo_.find(key); it != t2_memo_.end()) return it->second;

  const int ik = ilist.back();
  std::vector<int> head(ilist.begin(), ilist.end() - 1);
  Rational sum = 0;
  for (int a = 0; a < m; ++a) {
    long long seg_s = 0;
    int seg_l = 0;
    for (int b = a; b < m; ++b) {
      seg_s += row.s[b];
      seg_l += row.l[b] - 1;
      const long long sprime = seg_s - ik;
      if (sprime < 1 || seg_l < 1) continue;

      Composition segment(row.s.begin() + a, row.s.begin() + b + 1);
      WeightedRow reduced;
      reduced.s.assign(row.s.begin(), row.s.begin() + a);
      reduced.s.push_back(static_cast<int>(sprime));
      reduced.s.insert(reduced.s.end(), row.s.begin() + b + 1, row.s.end());
      reduced.l.assign(row.l.begin(), row.l.begin() + a);
      reduced.l.push_back(seg_l);
      reduced.l.insert(reduced.l.end(), row.l.begin() + b + 1, row.l.end());

      const Rational outer = t1(static_cast<int>(sprime), ik, segment);
      if (outer == 0) continue;
      const Rational inner = t2(head, reduced);
      if (inner == 0) continue;
      sum += seg_l * outer * inner;
    }
  }
  t2_memo_.emplace(std::move(key), sum);
  return sum;
}

const std::vector<CoefficientCache::DistEntry>& CoefficientCache::distribution_summary(
    const std::vector<int>& ibar_sorted, int m) {
  Key key{m};
  append_section(key, ibar_sorted);
  if (auto it = dist_memo_.find(key); it != dist_memo_.end()) return *it->second;

  const int kbar = static_cast<int>(ibar_sorted.size());
  std::map<std::pair<std::vector<int>, std::vector<int>>, long long> acc;
  for_each_distribution(kbar, m, [&](const LabeledDistribution& assign) {
    std::vector<int> sums(m, 0), sizes(m, 0);
    for (int pos = 0; pos < kbar; ++pos) {
      sums[assign[pos]] += ibar_sorted[pos];
      ++sizes[assign[pos]];
    }
    ++acc[{std::move(sums), std::move(sizes)}];
  });

  auto entries = std::make_shared<std::vector<DistEntry>>();
  entries->reserve(acc.size());
  for (auto& [sk, count] : acc)
    entries->push_back(DistEntry{sk.first, sk.second, count});
  auto [it, inserted] = dist_memo_.emplace(std::move(key), std::move(entries));
  return *it->second;
}

Int CoefficientCache::s_weight(const std::vector<int>& ibar, const WeightedRow& row) {
  row.validate();
  if (ibar.empty()) throw std::invalid_argument("s_weight: empty index list");
  const int m = row.size();
  if (static_cast<int>(ibar.size()) < m) return 0;

  std::vector<int> sorted = ibar;
  std::sort(sorted.begin(), sorted.end());
  Key key(row.s.begin(), row.s.end());
  append_section(key, row.l);
  append_section(key, sorted);
  if (auto it = s_memo_.find(key); it != s_memo_.end()) return it->second;

  Int total = 0;
  for (const auto& entry : distribution_summary(sorted, m)) {
    if (entry.sums != row.s) continue;
    Int prod = entry.count;
    bool ok = true;
    for (int r = 0; r < m && ok; ++r) {
      const int slack = entry.sums[r] - entry.sizes[r] - row.l[r] + 1;
      if (slack < 0) {
        ok = false;  // rows outside the support contribute nothing
        break;
      }
      prod *= factorial(entry.sums[r] - 1);
      prod /= factorial(slack) * factorial(row.l[r] - 1);
    }
    if (ok) total += prod;
  }
  s_memo_.emplace(std::move(key), total);
  return total;
}

Rational CoefficientCache::n1_general_sum(int i, const std::vector<int>& ilist,
                                          const std::vector<int>& ibar) {
  const int k = static_cast<int>(ilist.size());
  if (k < 2) throw std::invalid_argument("n1_general_sum: needs k >= 2");
  const int kbar = static_cast<int>(ibar.size());
  std::vector<int> sorted = ibar;
  std::sort(sorted.begin(), sorted.end());

  Rational total = 0;
  const int max_m = std::min(kbar, i);
  for (int m = 1; m <= max_m; ++m) {
    const int sign = (m % 2 == 1) ? 1 : -1;
    const auto& entries = distribution_summary(sorted, m);

    // group realizable block-sum rows, then attach every admissible l-row
    std::map<std::vector<int>, std::vector<const DistEntry*>> by_sums;
    for (const auto& e : entries) by_sums[e.sums].push_back(&e);

    for (const auto& [svec, group] : by_sums) {
      if (sum_of(svec) != i) continue;
      for_each_composition(m + k - 2, m, [&](const Composition& lrow) {
        Int s_val = 0;
        for (const DistEntry* e : group) {
          Int prod = e->count;
          bool ok = true;
          for (int r = 0; r < m; ++r) {
            const int slack = svec[r] - e->sizes[r] - lrow[r] + 1;
            if (slack < 0) {
              ok = false;
              break;
            }
            prod *= factorial(svec[r] - 1);
            prod /= factorial(slack) * factorial(lrow[r] - 1);
          }
          if (ok) s_val += prod;
        }
        if (s_val == 0) return;
        WeightedRow row{svec, lrow};
        const Rational t = t2(ilist, row);
        if (t == 0) return;
        total += sign * Rational(s_val) * t;
      });
    }
  }
  return total;
}

Rational CoefficientCache::n1(int i, const std::vector<int>& ilist,
                              const std::vector<int>& ibar) {
  if (ilist.empty() || ibar.empty())
    throw std::invalid_argument("n1: index lists must be nonempty");
  if (sum_of(ilist) != i || sum_of(ibar) != i) return 0;

  const int k = static_cast<int>(ilist.size());
  const int kbar = static_cast<int>(ibar.size());
  if (k == 1) {
    if (i - kbar + 1 < 0) return 0;  // outside the support of the series
    return Rational(factorial(i - 1), factorial(i - kbar + 1));
  }
  if (kbar == 1) {
    if (i - k + 1 < 0) return 0;
    return Rational(factorial(i - 1), factorial(i - k + 1));
  }

  std::vector<int> sorted = ibar;
  std::sort(sorted.begin(), sorted.end());
  Key key{i};
  append_section(key, ilist);
  append_section(key, sorted);
  if (auto it = n1_memo_.find(key); it != n1_memo_.end()) return it->second;

  Rational value = n1_general_sum(i, ilist, ibar);
  n1_memo_.emplace(std::move(key), value);
  return value;
}

Rational CoefficientCache::n2(const MomentSignature& sig) {
  sig.validate();
  return n1(sig.weight, sig.hol_expanded(), sig.antihol_expanded());
}

bool CoefficientCache::load_n1(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json doc;
  try {
    in >> doc;
    if (!doc.is_object()) return false;
    for (auto& [text, value] : doc.items()) {
      const MomentSignature sig = MomentSignature::parse(text);
      Key key{sig.weight};
      append_section(key, sig.hol_expanded());
      append_section(key, sig.antihol_expanded());
      n1_memo_[key] = rational_from_string(value.get<std::string>());
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

bool CoefficientCache::save_n1(const std::string& path) const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [key, value] : n1_memo_) {
    // key layout: i, -1, ilist..., -1, ibar...
    MomentSignature sig;
    sig.weight = key[0];
    std::vector<int> ilist, ibar;
    std::size_t pos = 2;
    while (pos < key.size() && key[pos] != -1) ilist.push_back(key[pos++]);
    ++pos;
    while (pos < key.size()) ibar.push_back(key[pos++]);
    auto compress = [](const std::vector<int>& v) {
      std::vector<std::pair<int, int>> out;
      for (int idx : v) {
        if (!out.empty() && out.back().first == idx)
          ++out.back().second;
        else
          out.emplace_back(idx, 1);
      }
      return out;
    };
    sig.hol = compress(ilist);
    sig.antihol = compress(ibar);
    doc[sig.str()] = to_string(value);
  }
  std::ofstream out(path);
  if (!out) return false;
  out << doc.dump(1) << '\n';
  return static_cast<bool>(out);
}

namespace {

void multiset_weight_rec(int remaining, int max_index,
                         std::vector<std::pair<int, int>>& acc,
                         const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  if (remaining == 0) {
    if (!acc.empty()) {
      std::vector<std::pair<int, int>> out(acc.rbegin(), acc.rend());
      fn(out);
    }
    return;
  }
  const int top = std::min(remaining, max_index);
  for (int idx = top; idx >= 1; --idx) {
    for (int mult = 1; mult * idx <= remaining; ++mult) {
      acc.emplace_back(idx, mult);
      multiset_weight_rec(remaining - mult * idx, idx - 1, acc, fn);
      acc.pop_back();
    }
  }
}

void multiset_size_rec(int remaining, int max_index,
                       std::vector<std::pair<int, int>>& acc,
                       const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  if (remaining == 0) {
    if (!acc.empty()) {
      std::vector<std::pair<int, int>> out(acc.rbegin(), acc.rend());
      fn(out);
    }
    return;
  }
  for (int idx = max_index; idx >= 1; --idx) {
    for (int mult = 1; mult <= remaining; ++mult) {
      acc.emplace_back(idx, mult);
      multiset_size_rec(remaining - mult, idx - 1, acc, fn);
      acc.pop_back();
    }
  }
}

}  // namespace

void for_each_multiset_of_weight(
    int weight, int max_index,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  if (weight < 1 || max_index < 1) return;
  std::vector<std::pair<int, int>> acc;
  multiset_weight_rec(weight, max_index, acc, fn);
}

void for_each_multiset_of_size(
    int size, int max_index,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  if (size < 1 || max_index < 1) return;
  std::vector<std::pair<int, int>> acc;
  multiset_size_rec(size, max_index, acc, fn);
}

}  // namespace toda
