#pragma once

#include "schwarzian/jet.hpp"

namespace schwarzian {

/// Numerical check of f' = 1/h^k together with S_k(f) = -k h^(k)/h, i.e.
/// h solves y^(k) + (S_k(f)/k) y = 0.
struct OdeLinkReport {
  Jet h_jet;
  Complex p0_value;          // S_k(f)(z0)/k
  Complex schwarzian_value;  // S_k(f)(z0)
  Complex h_k_value;         // h^(k)(z0)
  double residual = 0.0;     // |h^(k) + p0 h| / (1 + |h^(k)|)
  double mismatch = 0.0;     // |S_k + k h^(k)/h| / (1 + |S_k|)
};

/// h = (f')^(-1/k) on the principal branch at f'(z0). Needs f'(z0) != 0
/// and order >= k + 1.
Jet h_from_f(const JetSource& f, int k, Complex z0, int order);

OdeLinkReport verify_link(const JetSource& f, int k, Complex z0);

}  // namespace schwarzian
