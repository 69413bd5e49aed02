#include "schwarzian/schwarzian.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "schwarzian/errors.hpp"

namespace schwarzian {

namespace {

void require_k(int k) {
  if (k < 1) throw DomainError("Schwarzian order k must be >= 1, got " + std::to_string(k));
}

}  // namespace

Jet pre_schwarzian(const JetSource& f, Complex z0, int order) {
  // A zero of f' of multiplicity m eats m orders of the quotient.
  int request = order + 2;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const Jet fprime = derive(f(z0, request));
    if (fprime.is_zero()) {
      throw SchwarzianOfConstant("S_k of a constant function is infinite by convention");
    }
    const int deficit = std::max(fprime.valuation(), 0);
    if (deficit == 0 || attempt > 0) return derive(fprime) / fprime;
    request += deficit;
  }
  throw OrderUnderflow("unreachable");
}

Jet recursion_from_g(const Jet& g, int level, int n) {
  if (level < 2) throw DomainError("S_{level,n} is defined for level >= 2");
  if (n < 1) throw DomainError("S_{level,n} needs n >= 1");
  Jet s = g;
  const Complex inv_n = 1.0 / static_cast<double>(n);
  for (int j = 2; j < level; ++j) s = derive(s) - inv_n * (g * s);
  return s;
}

Jet closed_form_from_g(const Jet& g, int k) {
  require_k(k);
  std::vector<Jet> derivatives{g};
  for (int j = 1; j < k; ++j) derivatives.push_back(derive(derivatives.back()));

  std::optional<Jet> sum;
  for (const auto& [tuple, coefficient] : closed_form_terms(k)) {
    std::optional<Jet> product;
    for (int j = 1; j <= k; ++j) {
      const int n = tuple.count(j);
      if (n == 0) continue;
      Jet factor = int_pow(derivatives[j - 1], n);
      product = product ? *product * factor : factor;
    }
    Jet term = *product * Complex(coefficient.convert_to<double>());
    sum = sum ? *sum + term : term;
  }
  return *sum;
}

Jet generalized_schwarzian(const JetSource& f, int level, int n, Complex z0) {
  const Jet g = pre_schwarzian(f, z0, level + 1 + kJetGuard);
  return recursion_from_g(g, level, n);
}

SchwarzianValue schwarzian_recursive(const JetSource& f, int k, Complex z0) {
  require_k(k);
  const Jet g = pre_schwarzian(f, z0, order_budget(k));
  return {recursion_from_g(g, k + 1, k), k, SchwarzianMethod::recursive};
}

SchwarzianValue schwarzian_closed_form(const JetSource& f, int k, Complex z0) {
  require_k(k);
  const Jet g = pre_schwarzian(f, z0, order_budget(k));
  return {closed_form_from_g(g, k), k, SchwarzianMethod::closed_form};
}

int pole_order_at(const JetSource& f, int k, Complex z0) {
  const Jet s = schwarzian_recursive(f, k, z0).value;
  double scale = 0.0;
  for (Complex c : s.coeffs()) scale = std::max(scale, std::abs(c));
  for (int p = s.lead_order(); p < 0; ++p) {
    if (std::abs(s.coefficient(p)) > 1e-9 * scale) return -p;
  }
  return 0;
}

NullCheck schwarzian_null_check(const JetSource& f, int k, std::span<const Complex> grid) {
  if (grid.size() < 20) throw DomainError("null test needs a grid of at least 20 points");
  NullCheck r;
  for (Complex z : grid) {
    try {
      const Jet g = pre_schwarzian(f, z, order_budget(k));
      if (g.is_pole()) continue;
      const Jet s = recursion_from_g(g, k + 1, k);
      if (s.is_pole()) continue;
      const double sv = std::abs(s.value());
      const double gk = std::pow(std::abs(g.value()), k);
      if (!std::isfinite(sv) || !std::isfinite(gk)) continue;
      r.max_abs_schwarzian = std::max(r.max_abs_schwarzian, sv);
      r.max_abs_g_pow_k = std::max(r.max_abs_g_pow_k, gk);
      ++r.valid_points;
    } catch (const SchwarzianOfConstant&) {
      throw;
    } catch (const Error&) {
      continue;
    }
  }
  if (r.valid_points == 0) throw DomainError("no usable grid point for the null test");
  r.is_null = r.max_abs_schwarzian < 1e-9 * (1.0 + r.max_abs_g_pow_k);
  return r;
}

bool is_schwarzian_null(const JetSource& f, int k, std::span<const Complex> grid) {
  return schwarzian_null_check(f, k, grid).is_null;
}

}  // namespace schwarzian
