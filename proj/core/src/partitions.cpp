#include "schwarzian/partitions.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "schwarzian/errors.hpp"

namespace schwarzian {

Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

int PartitionTuple::parts() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::string PartitionTuple::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(counts[i]);
  }
  return s + ")";
}

namespace {

void enumerate(int k, int r, int remaining, std::vector<int>& counts,
               std::vector<PartitionTuple>& out) {
  if (r > k) {
    if (remaining == 0) out.push_back({k, counts});
    return;
  }
  for (int n = remaining / r; n >= 0; --n) {
    counts[r - 1] = n;
    enumerate(k, r + 1, remaining - n * r, counts, out);
  }
  counts[r - 1] = 0;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<PartitionTuple> enumerate_partitions(int k) {
  if (k < 1) throw DomainError("partitions need k >= 1");
  std::vector<PartitionTuple> out;
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  enumerate(k, 1, k, counts, out);
  return out;
}

Rational closed_form_coefficient(const PartitionTuple& t) {
  const int k = t.k;
  BigInt denominator = 1;
  for (int j = 1; j <= k; ++j) {
    const BigInt base = -BigInt(k) * factorial(j);
    denominator *= pow(base, static_cast<unsigned>(t.count(j))) * factorial(t.count(j));
  }
  const BigInt numerator = -BigInt(k) * factorial(k);
  return make_rational(numerator, denominator);
}

const std::vector<ClosedFormTerm>& closed_form_terms(int k) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const std::vector<ClosedFormTerm>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[k];
  if (!slot) {
    auto terms = std::make_unique<std::vector<ClosedFormTerm>>();
    for (auto& t : enumerate_partitions(k)) {
      Rational c = closed_form_coefficient(t);
      terms->push_back({std::move(t), std::move(c)});
    }
    slot = std::move(terms);
  }
  return *slot;
}

int GrahlTerm::omega_sum() const { return std::accumulate(omegas.begin(), omegas.end(), 0); }

bool grahl_condition_holds(const GrahlTerm& term, int k, int ell) {
  const int lhs = (k - 1) * term.omega_sum() + ell * term.s_mu;
  return lhs == ell * k && term.s_mu >= 2 && term.s_mu <= k - 1 && term.omega_sum() >= 1;
}

GrahlDecomposition grahl_decompose(int k) {
  if (k < 2) throw DomainError("Grahl decomposition needs k >= 2");
  GrahlDecomposition d;
  d.k = k;
  d.ell = k - 1;
  const BigInt k_pow = pow(BigInt(k), static_cast<unsigned>(k - 1));
  d.leading = make_rational(k % 2 == 0 ? -1 : 1, k_pow);

  for (const auto& [tuple, coefficient] : closed_form_terms(k)) {
    if (tuple.count(1) == k) {
      if (coefficient != d.leading) {
        throw ConditionViolation("coefficient of g^k is " + coefficient.str() + ", expected " +
                                 d.leading.str());
      }
      continue;
    }
    if (tuple.count(k) == 1) {
      if (coefficient != 1) {
        throw ConditionViolation("coefficient of g^(k-1) is " + coefficient.str() + ", expected 1");
      }
      continue;
    }
    GrahlTerm term{tuple, coefficient, tuple.parts(), {}};
    for (int r = 1; r <= k; ++r) term.omegas.insert(term.omegas.end(), tuple.count(r), r - 1);
    if (!grahl_condition_holds(term, k, d.ell)) {
      throw ConditionViolation("tuple " + tuple.to_string() + " violates the Grahl condition");
    }
    d.terms.push_back(std::move(term));
  }
  return d;
}

}  // namespace schwarzian
