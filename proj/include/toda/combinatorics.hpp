#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <string>
#include <vector>

namespace toda {

// Every coefficient in this library is an exact rational; no value is ever
// rounded before final numeric evaluation.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Ordered list of positive parts (s_1,...,s_m); order is significant.
using Composition = std::vector<int>;

// Assignment of labeled positions 0..kbar-1 to ordered blocks 0..m-1 with
// every block nonempty.  Positions carrying equal values are still distinct.
using LabeledDistribution = std::vector<int>;

Int factorial(int n);                       // n >= 0, throws std::domain_error otherwise
Int binomial(long long n, long long k);     // 0 when k < 0, k > n or n < 0
Int falling(long long a, int b);            // a*(a-1)*...*(a-b+1), b >= 0
Int int_pow(const Int& base, int exp);

std::string to_string(const Rational& r);   // "p" when the denominator is 1, else "p/q"
Rational rational_from_string(const std::string& s);
double to_double(const Rational& r);

// Visits every ordered tuple of m positive integers summing to total, in
// lexicographic order.  Nothing is visited when total < m.
void for_each_composition(int total, int m,
                          const std::function<void(const Composition&)>& fn);
Int composition_count(int total, int m);    // binomial(total-1, m-1)

// Visits every surjective assignment of kbar labeled positions onto m ordered
// blocks.  Nothing is visited when kbar < m.
void for_each_distribution(int kbar, int m,
                           const std::function<void(const LabeledDistribution&)>& fn);
Int distribution_count(int kbar, int m);    // m! * S2(kbar, m)

}  // namespace toda
