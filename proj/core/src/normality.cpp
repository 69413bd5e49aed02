#include "schwarzian/normality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "schwarzian/catalog.hpp"
#include "schwarzian/errors.hpp"
#include "schwarzian/schwarzian.hpp"

namespace schwarzian {

namespace {

// Jet of f at z with at least `order` orders past its valuation.
Jet jet_of(const JetSource& f, Complex z, int order) {
  return f(z, order + kJetGuard).truncated(order);
}

}  // namespace

double spherical_derivative(const JetSource& f, Complex z) {
  Jet j = f(z, 1 + kJetGuard);
  if (j.is_pole()) j = Jet::constant(z, 1.0, std::max(j.trunc_order(), 1)) / j;
  return std::abs(j[1]) / (1.0 + std::norm(j[0]));
}

MartyCheck marty_inequality_check(const JetSource& f, Complex z) {
  const Jet j = jet_of(f, z, 2);
  if (j.is_pole()) throw DomainError("Marty check at a pole");
  const Complex d1 = nth_value(j, 1);
  const Complex d2 = nth_value(j, 2);
  if (std::abs(d1) <= kSignificanceThreshold) throw DomainError("Marty check where f' = 0");
  MartyCheck m;
  m.lhs = std::abs(d2) / (1.0 + std::norm(d1));
  m.rhs = 2.0 * std::abs(d2 / d1);
  m.degenerate = std::abs(d2) <= kSignificanceThreshold;
  m.holds = m.lhs < m.rhs;
  return m;
}

Transform parse_transform(std::string_view name) {
  if (name == "identity") return Transform::identity;
  if (name == "derivative") return Transform::derivative;
  if (name == "log_derivative") return Transform::log_derivative;
  if (name == "pre_schwarzian") return Transform::pre_schwarzian;
  throw Error("unknown transform '" + std::string(name) + "'");
}

const char* to_string(Transform t) {
  switch (t) {
    case Transform::identity: return "identity";
    case Transform::derivative: return "derivative";
    case Transform::log_derivative: return "log_derivative";
    case Transform::pre_schwarzian: return "pre_schwarzian";
  }
  return "?";
}

namespace {

JetSource transformed(FunctionExpr f, Transform t) {
  return [f = std::move(f), t](Complex z, int order) {
    const Jet j = jet_at(f, z, order + 2);
    switch (t) {
      case Transform::identity: return j;
      case Transform::derivative: return derive(j);
      case Transform::log_derivative: return derive(j) / j;
      case Transform::pre_schwarzian: {
        const Jet d = derive(j);
        return derive(d) / d;
      }
    }
    throw Error("unknown transform");
  };
}

}  // namespace

GridReport family_bound_probe(const FamilySpec& spec, Transform transform,
                              std::span<const Complex> grid, Metric metric) {
  const CatalogEntry& entry = catalog_entry(spec.entry);
  GridReport rep;
  for (const Complex z : grid) {
    const bool near = std::any_of(spec.singularities.begin(), spec.singularities.end(),
                                  [&](Complex s) { return std::abs(z - s) < kSingularityMargin; });
    if (!near) rep.grid.push_back(z);
  }

  for (const Complex value : spec.values) {
    ParamMap params = spec.fixed;
    const bool has_k = std::any_of(entry.params.begin(), entry.params.end(),
                                   [](const ParamSpec& p) { return p.name == "k"; });
    if (has_k && !params.contains("k")) params["k"] = Complex(spec.k);
    params[spec.parameter] = value;
    const JetSource member = transformed(entry.instantiate(params), transform);

    double sup = 0.0;
    int skipped = 0;
    for (const Complex z : rep.grid) {
      try {
        const double v = metric == Metric::spherical ? spherical_derivative(member, z)
                                                     : std::abs(member(z, 0).value());
        if (!std::isfinite(v)) {
          ++skipped;
          continue;
        }
        sup = std::max(sup, v);
      } catch (const Error&) {
        ++skipped;
      }
    }
    if (skipped == static_cast<int>(rep.grid.size())) {
      throw DomainError("no valid grid point for member " + spec.parameter + " = " +
                        std::to_string(value.real()));
    }
    rep.members.push_back(value);
    rep.member_sup.push_back(sup);
    rep.member_skipped.push_back(skipped);
    rep.overall_sup = std::max(rep.overall_sup, sup);
  }

  if (!rep.member_sup.empty()) {
    std::vector<double> sorted = rep.member_sup;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    rep.diverging = rep.member_sup.back() > 10.0 * median;
  }
  return rep;
}

OmissionReport omitted_function_check(const JetSource& f, int k, const FunctionExpr& b,
                                      std::span<const Complex> grid) {
  OmissionReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (const Complex z : grid) {
    try {
      const Complex s = schwarzian_recursive(f, k, z).at_base();
      const Complex bz = evaluate(b, z);
      const double gap = std::abs(s - bz);
      if (!std::isfinite(gap)) continue;
      ++rep.valid_points;
      if (gap < rep.min_gap) {
        rep.min_gap = gap;
        rep.argmin = z;
      }
    } catch (const Error&) {
    }
  }
  if (rep.valid_points == 0) throw DomainError("no valid grid point for the omission check");
  rep.omits_on_grid = rep.min_gap > 1e-12;
  return rep;
}

}  // namespace schwarzian
