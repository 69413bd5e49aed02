#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace schwarzian {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// num/den with the sign moved to the numerator; Boost 1.74's cpp_rational
/// rejects negative denominators.
Rational make_rational(BigInt num, BigInt den);

/// (n_1, ..., n_k) with sum r * n_r = k: an integer partition of k written by
/// multiplicity of each part.
struct PartitionTuple {
  int k = 0;
  std::vector<int> counts;  // counts[r - 1] = n_r

  int count(int r) const { return counts[static_cast<std::size_t>(r) - 1]; }
  /// Number of parts, sum n_r.
  int parts() const;
  std::string to_string() const;

  friend bool operator==(const PartitionTuple&, const PartitionTuple&) = default;
};

/// All tuples for k >= 1 in descending lexicographic order of (n_1, ..., n_k),
/// starting at (k, 0, ..., 0) and ending at (0, ..., 0, 1).
std::vector<PartitionTuple> enumerate_partitions(int k);

/// -k * k! / prod_j ((-k * j!)^(n_j) * n_j!), exact.
Rational closed_form_coefficient(const PartitionTuple& t);

struct ClosedFormTerm {
  PartitionTuple tuple;
  Rational coefficient;
};

/// Partitions of k with their coefficients; memoized per k, safe to call
/// from several threads.
const std::vector<ClosedFormTerm>& closed_form_terms(int k);

/// One summand a * prod_j g^(omega_j) of the middle part P[g].
struct GrahlTerm {
  PartitionTuple tuple;
  Rational a_mu;
  int s_mu = 0;
  std::vector<int> omegas;  // ascending; r - 1 repeated n_r times

  int omega_sum() const;
};

/// S_k = leading * g^k + g^(ell) + sum_mu a_mu prod_j g^(omega_mu,j).
struct GrahlDecomposition {
  int k = 0;
  Rational leading;
  int ell = 0;
  std::vector<GrahlTerm> terms;
};

/// (k-1) * sum(omega) + ell * s == ell * k, 2 <= s <= k-1 and sum(omega) >= 1.
bool grahl_condition_holds(const GrahlTerm& term, int k, int ell);

/// Splits the closed form for k >= 2 into the extremal terms and the
/// differential polynomial built from the remaining tuples. Every term is
/// checked; a failure throws ConditionViolation.
GrahlDecomposition grahl_decompose(int k);

}  // namespace schwarzian
