#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schwarzian/expr.hpp"

namespace schwarzian {

/// |f'(z)| / (1 + |f(z)|^2); at a pole the value of (1/f)^# is used.
double spherical_derivative(const JetSource& f, Complex z);

struct MartyCheck {
  double lhs = 0.0;  // |f''| / (1 + |f'|^2), the spherical derivative of f'
  double rhs = 0.0;  // 2 |f''/f'|
  bool holds = false;
  bool degenerate = false;  // f''(z) = 0, both sides vanish
};

/// Throws DomainError when f'(z) = 0 or f has a pole at z.
MartyCheck marty_inequality_check(const JetSource& f, Complex z);

enum class Transform { identity, derivative, log_derivative, pre_schwarzian };
enum class Metric { absolute, spherical };

Transform parse_transform(std::string_view name);
const char* to_string(Transform t);

/// Members are catalog_entry(entry) instantiated with `fixed`, `parameter`
/// running through `values`, and a catalog parameter named "k" (if any)
/// set from `k` unless fixed explicitly.
struct FamilySpec {
  std::string entry;
  std::string parameter;
  std::vector<Complex> values;
  int k = 2;
  std::optional<double> m;
  ParamMap fixed;
  std::vector<Complex> singularities;  // grid points within 1e-3 are dropped
};

inline constexpr double kSingularityMargin = 1e-3;

struct GridReport {
  std::vector<Complex> grid;         // points kept after the singularity margin
  std::vector<Complex> members;      // parameter values
  std::vector<double> member_sup;
  std::vector<int> member_skipped;   // points where the transform had no value
  double overall_sup = 0.0;
  bool diverging = false;            // last member_sup > 10 x median
};

/// Throws DomainError when no grid point survives for some member.
GridReport family_bound_probe(const FamilySpec& spec, Transform transform,
                              std::span<const Complex> grid, Metric metric = Metric::absolute);

struct OmissionReport {
  double min_gap = 0.0;
  bool omits_on_grid = false;  // min_gap > 1e-12
  Complex argmin = 0.0;
  int valid_points = 0;
};

/// min over the grid of |S_k(f) - b|. Points where either side has no
/// finite value are skipped; throws DomainError when none remain.
OmissionReport omitted_function_check(const JetSource& f, int k, const FunctionExpr& b,
                                      std::span<const Complex> grid);

}  // namespace schwarzian
