#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schwarzian/expr.hpp"

namespace schwarzian {

struct ParamSpec {
  std::string name;
  Complex default_value;
  bool integer = false;  // integer parameters appear in exponents
};

/// A named parametric test function. Parameters are bound when the entry is
/// instantiated; integer parameters shape the tree itself.
struct CatalogEntry {
  std::string name;
  std::string formula;  // template; {k} marks an integer parameter
  std::vector<ParamSpec> params;
  std::optional<std::string> known_identity;

  /// Defaults overridden by `values`. Throws DomainError for non-integer
  /// values of integer parameters or unknown names.
  FunctionExpr instantiate(const ParamMap& values = {}) const;

  ParamMap resolved(const ParamMap& values) const;
};

const std::vector<CatalogEntry>& catalog();

/// Throws Error for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);

}  // namespace schwarzian
