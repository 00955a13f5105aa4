#pragma once

#include "toda/combinatorics.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace toda {

// Two-row argument (s_1...s_m | l_1...l_m) fed to the T^2 and S recurrences.
struct WeightedRow {
  Composition s;
  std::vector<int> l;

  void validate() const;  // equal lengths, all entries >= 1
  int size() const { return static_cast<int>(s.size()); }
};

// Multi-index ((i_1,n_1)...(i_k,n_k) | (ib_1,nb_1)...(ib_kbar,nb_kbar))
// labeling one series coefficient.  Indices are strictly increasing on each
// side and multiplicities are >= 1; `weight` is the common value
// sum n_r*i_r = sum nb_r*ib_r on the support of the series.
struct MomentSignature {
  int weight = 0;
  std::vector<std::pair<int, int>> hol;      // (index, multiplicity)
  std::vector<std::pair<int, int>> antihol;  // (index, multiplicity)

  void validate() const;
  long long hol_weight() const;
  long long antihol_weight() const;
  int hol_degree() const;      // sum of multiplicities
  int antihol_degree() const;
  std::vector<int> hol_expanded() const;      // each index repeated, ascending
  std::vector<int> antihol_expanded() const;

  std::string str() const;                    // "i:(1^2,3^1|2^1,4^2)"
  static MomentSignature parse(const std::string& text);

  bool operator<(const MomentSignature& o) const;
  bool operator==(const MomentSignature& o) const;
};

// #{(i_1,...,i_m) : sum i_r = i, 1 <= i_r <= s_r - 1}
Int p_count(int i, const Composition& s);

// Memoized evaluation of the recurrences.  Entries are written once and never
// mutated; a cache is either used from a single thread or shared read-only.
class CoefficientCache {
 public:
  // Value depends on i and s only; the second subscript is decoration kept
  // for symmetry with the two-index notation.  Memoized on the reflection
  // class of i, since the tuple count is invariant under i -> sum(s) - i.
  Rational t1(int i, int j, const Composition& s);

  // Base case k = 2 requires all l_r = 1 (guaranteed by the row-sum
  // constraint); k > 2 recurses over consecutive segments.  Returns 0 when
  // sum(s) != sum(ilist) or sum(l) != m+k-2.
  Rational t2(const std::vector<int>& ilist, const WeightedRow& row);

  // Sum over labeled distributions of ibar into blocks with sums s_r and
  // sizes n_r of prod (s_r-1)!/((s_r-n_r-l_r+1)!(l_r-1)!), rows violating
  // s_r-n_r-l_r+1 >= 0 contributing nothing.
  Int s_weight(const std::vector<int>& ibar, const WeightedRow& row);

  // 0 off the support i = sum(ilist) = sum(ibar); factorial ratio when one
  // side is a single index; otherwise the alternating sum over rows of
  // (-1)^(m+1) * S * T^2.
  Rational n1(int i, const std::vector<int>& ilist, const std::vector<int>& ibar);

  // The alternating sum evaluated unconditionally (k >= 2 required); exposed
  // so tests can compare it with the single-index closed forms.
  Rational n1_general_sum(int i, const std::vector<int>& ilist,
                          const std::vector<int>& ibar);

  // N^2: n1 on the multiplicity-expanded index lists.
  Rational n2(const MomentSignature& sig);

  // For a sorted index multiset and m ordered blocks: every realizable
  // (block sums, block sizes) pair together with the number of labeled
  // assignments producing it.  This is the support of S, shared by n1 and
  // the equation-system checks.
  struct DistEntry {
    std::vector<int> sums;
    std::vector<int> sizes;
    long long count;
  };
  const std::vector<DistEntry>& distribution_summary(const std::vector<int>& ibar_sorted,
                                                     int m);

  std::size_t n1_entries() const { return n1_memo_.size(); }

  // Optional flat-file persistence of the n1 table keyed by canonical
  // signature text.  Returns false when the file cannot be used.
  bool load_n1(const std::string& path);
  bool save_n1(const std::string& path) const;

 private:
  using Key = std::vector<int>;
  std::map<Key, Rational> t1_memo_;
  std::map<Key, Rational> t2_memo_;
  std::map<Key, Int> s_memo_;
  std::map<Key, Rational> n1_memo_;
  std::map<Key, std::shared_ptr<std::vector<DistEntry>>> dist_memo_;
};

// Enumeration helpers shared by the series builder and the check suites.
// Multisets are reported as ascending (index, multiplicity) lists.
void for_each_multiset_of_weight(
    int weight, int max_index,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& fn);
void for_each_multiset_of_size(
    int size, int max_index,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& fn);

}  // namespace toda
