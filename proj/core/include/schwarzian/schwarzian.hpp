#pragma once

#include <span>

#include "schwarzian/jet.hpp"
#include "schwarzian/partitions.hpp"

namespace schwarzian {

/// Extra jet orders requested beyond the k + 2 that S_k strictly needs.
inline constexpr int kJetGuard = 4;

inline constexpr int order_budget(int k) { return k + 2 + kJetGuard; }

enum class SchwarzianMethod { recursive, closed_form };

struct SchwarzianValue {
  Jet value;  // Laurent-capable jet of S_k(f) at the base point
  int k = 0;
  SchwarzianMethod method = SchwarzianMethod::recursive;

  /// S_k(f)(z0); throws DomainError when S_k has a pole there.
  Complex at_base() const { return value.value(); }
};

/// g = f''/f' at z0 with at least `order` orders of relative precision.
/// Throws SchwarzianOfConstant when f' vanishes identically.
Jet pre_schwarzian(const JetSource& f, Complex z0, int order);

/// S_{level,n} from g by the defining recursion: S_{2,n} = g,
/// S_{j+1,n} = S_{j,n}' - (1/n) g S_{j,n}.
Jet recursion_from_g(const Jet& g, int level, int n);

/// Sum over partitions of k of coefficient * prod_j (g^(j-1))^(n_j).
Jet closed_form_from_g(const Jet& g, int k);

/// S_{level,n}(f) for level >= 2, n >= 1.
Jet generalized_schwarzian(const JetSource& f, int level, int n, Complex z0);

/// S_k(f) = S_{k+1,k}(f), k >= 1.
SchwarzianValue schwarzian_recursive(const JetSource& f, int k, Complex z0);
SchwarzianValue schwarzian_closed_form(const JetSource& f, int k, Complex z0);

/// Order of the pole of S_k(f) at z0, 0 where S_k(f) is analytic. Leading
/// negative-order coefficients below 1e-9 of the jet's largest coefficient are
/// treated as cancelled.
int pole_order_at(const JetSource& f, int k, Complex z0);

struct NullCheck {
  bool is_null = false;
  double max_abs_schwarzian = 0.0;
  double max_abs_g_pow_k = 0.0;
  int valid_points = 0;
};

/// max |S_k(f)| < 1e-9 (1 + max |g|^k) over the usable points of a grid of at
/// least 20 points; points where S_k or g cannot be evaluated are skipped.
NullCheck schwarzian_null_check(const JetSource& f, int k, std::span<const Complex> grid);

bool is_schwarzian_null(const JetSource& f, int k, std::span<const Complex> grid);

}  // namespace schwarzian
