#include "schwarzian/ode_link.hpp"

#include <cmath>
#include <string>

#include "schwarzian/errors.hpp"
#include "schwarzian/schwarzian.hpp"

namespace schwarzian {

Jet h_from_f(const JetSource& f, int k, Complex z0, int order) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (order < k + 1) {
    throw OrderUnderflow("h needs order >= k + 1 = " + std::to_string(k + 1));
  }
  const Jet fprime = derive(f(z0, order + 1));
  if (fprime.is_pole() || std::abs(fprime[0]) <= kSignificanceThreshold) {
    throw DomainError("f'(z0) = 0 or f has a pole at z0; no analytic h with f' = 1/h^k");
  }
  return pow_rational(fprime, -1, k);
}

OdeLinkReport verify_link(const JetSource& f, int k, Complex z0) {
  OdeLinkReport r;
  r.h_jet = h_from_f(f, k, z0, order_budget(k));
  r.schwarzian_value = schwarzian_recursive(f, k, z0).at_base();
  r.p0_value = r.schwarzian_value / static_cast<double>(k);
  r.h_k_value = nth_value(r.h_jet, k);
  const Complex h0 = r.h_jet[0];
  r.residual = std::abs(r.h_k_value + r.p0_value * h0) / (1.0 + std::abs(r.h_k_value));
  r.mismatch = std::abs(r.schwarzian_value + static_cast<double>(k) * r.h_k_value / h0) /
               (1.0 + std::abs(r.schwarzian_value));
  return r;
}

}  // namespace schwarzian
