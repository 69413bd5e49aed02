#include "schwarzian/catalog.hpp"

#include <cmath>

#include "schwarzian/errors.hpp"

namespace schwarzian {

namespace {

int as_integer(const std::string& name, Complex v) {
  const double r = std::round(v.real());
  if (v.imag() != 0.0 || r != v.real()) {
    throw DomainError("parameter '" + name + "' must be an integer");
  }
  return static_cast<int>(r);
}

// Substitutes {name} and {name-1} / {name+1} placeholders for integer parameters.
std::string expand(std::string text, const std::vector<ParamSpec>& specs, const ParamMap& values) {
  for (const auto& spec : specs) {
    if (!spec.integer) continue;
    const int v = as_integer(spec.name, values.at(spec.name));
    for (int shift : {-1, 0, 1}) {
      const std::string key = "{" + spec.name + (shift < 0 ? "-1" : shift > 0 ? "+1" : "") + "}";
      const std::string rep = "(" + std::to_string(v + shift) + ")";
      for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos)) {
        text.replace(pos, key.size(), rep);
      }
    }
  }
  return text;
}

std::vector<CatalogEntry> build_catalog() {
  auto c = [](std::string name, Complex def) { return ParamSpec{std::move(name), def, false}; };
  auto i = [](std::string name, int def) { return ParamSpec{std::move(name), Complex(def), true}; };
  return {
      {"linear", "n*z", {c("n", 1.0)}, "S_k(nz) = 0 for every k"},
      {"g_n", "(0-1)/(n^{k}*{k-1}*z^{k-1})", {i("k", 3), c("n", 1.0)},
       "g_n' = (nz)^(-k), S_k(g_n) = 0"},
      {"h_n", "1/z^{k-1} + n", {i("k", 3), c("n", 1.0)},
       "h_n'/h_n = (1-k)/(z(1+n z^(k-1)))"},
      {"rational_pole", "1/((2*z)^{n} - 1)", {i("n", 3)}, "S_2 = (1-n^2)/(2z^2)"},
      {"hayman", "exp(exp(c*z)/c)", {c("c", 1.0)}, "S_2 = -exp(2cz)/2 - c^2/2"},
      {"exp_affine", "a*exp(b*z) + c", {c("a", 1.0), c("b", 1.0), c("c", 0.0)},
       "S_k = ((-1)^(k+1)/k^(k-1)) b^k"},
      {"power", "z^{n}", {i("n", 2)}, "S_2 = (1-n^2)/(2z^2)"},
      {"cubic", "z^3 + a*z^2 + b*z + c", {c("a", 0.0), c("b", 1.0), c("c", 0.0)}, std::nullopt},
      {"exp_quadratic", "exp(a*z^2 + b*z)", {c("a", 0.5), c("b", 1.0)}, std::nullopt},
      {"log_linear", "log(1 + a*z)", {c("a", 0.5)}, std::nullopt},
      {"mobius", "(a*z + b)/(c*z + 1)", {c("a", 1.0), c("b", 0.0), c("c", 0.5)}, "S_2 = 0"},
      {"exp_mobius", "1/(exp(b*z) - c)", {c("b", 1.0), c("c", 2.0)}, "S_2 = -b^2/2"},
      {"bessel_j", "J0(exp(z/2))", {}, "f'' + (e^z/4) f = 0"},
      {"bessel_y", "Y0(exp(z/2))", {}, "f'' + (e^z/4) f = 0"},
      {"bessel_quotient", "J0(exp(z/2))/Y0(exp(z/2))", {}, "S_2 = e^z/2"},
  };
}

}  // namespace

ParamMap CatalogEntry::resolved(const ParamMap& values) const {
  ParamMap out;
  for (const auto& spec : params) out[spec.name] = spec.default_value;
  for (const auto& [k, v] : values) {
    if (!out.contains(k)) throw DomainError("entry '" + name + "' has no parameter '" + k + "'");
    out[k] = v;
  }
  return out;
}

FunctionExpr CatalogEntry::instantiate(const ParamMap& values) const {
  const ParamMap all = resolved(values);
  std::vector<std::string> symbolic;
  for (const auto& spec : params) {
    if (!spec.integer) symbolic.push_back(spec.name);
  }
  return bind_parameters(parse(expand(formula, params, all), symbolic), all);
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  throw Error("unknown catalog entry '" + std::string(name) + "'");
}

}  // namespace schwarzian
