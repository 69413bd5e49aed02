#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "schwarzian/bessel.hpp"
#include "schwarzian/jet.hpp"

namespace schwarzian {

enum class NodeKind {
  constant,
  variable,
  parameter,
  add,
  sub,
  mul,
  div,
  int_pow,
  exp,
  log,
  bessel,
};

using ParamMap = std::map<std::string, Complex, std::less<>>;

/// Immutable expression tree over z, complex constants and named parameters.
/// Subtrees are shared; copying is cheap.
class FunctionExpr {
 public:
  /// The variable z.
  struct Node;  // opaque outside expr.cpp

  FunctionExpr();

  static FunctionExpr constant(Complex value);
  static FunctionExpr variable();
  static FunctionExpr parameter(std::string name);

  friend FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b);
  friend FunctionExpr operator-(const FunctionExpr& a, const FunctionExpr& b);
  friend FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b);
  friend FunctionExpr operator/(const FunctionExpr& a, const FunctionExpr& b);
  friend FunctionExpr int_pow(const FunctionExpr& base, int exponent);
  friend FunctionExpr exp(const FunctionExpr& arg);
  friend FunctionExpr log(const FunctionExpr& arg);
  friend FunctionExpr bessel(BesselKind kind, const FunctionExpr& arg);

  NodeKind kind() const;
  Complex value() const;              // constant
  const std::string& name() const;    // parameter
  int exponent() const;               // int_pow
  BesselKind bessel_kind() const;     // bessel
  FunctionExpr lhs() const;           // binary ops; the argument of unary ones
  FunctionExpr rhs() const;           // binary ops

  /// Fully parenthesized text accepted by parse(); printing is a fixed point
  /// of parse-then-print.
  std::string to_string() const;

  friend bool operator==(const FunctionExpr& a, const FunctionExpr& b);

 private:
  explicit FunctionExpr(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

/// Parses the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := ('+'|'-') factor | base ('^' integer)?
///   base   := number | 'z' | ident '(' expr ')' | '(' expr ')' | ident
/// with ident one of exp, log, J0, Y0 or a name listed in `parameters`, and
/// numbers decimal with an optional 'i' suffix. Exponents are nonzero
/// integers, optionally signed and parenthesized.
FunctionExpr parse(std::string_view text, std::span<const std::string> parameters = {});

/// Replaces parameters by constants. Names not in `values` stay symbolic.
FunctionExpr bind_parameters(const FunctionExpr& expr, const ParamMap& values);

std::set<std::string> free_parameters(const FunctionExpr& expr);

/// Jet of the expression at z0 through power `order`. Poles of rational
/// subtrees give Laurent jets. Internal working order grows until the
/// requested order is reached.
Jet jet_at(const FunctionExpr& expr, Complex z0, int order);

/// Pointwise complex evaluation, independent of the jet machinery except for
/// the Bessel builtins.
Complex evaluate(const FunctionExpr& expr, Complex z);

JetSource as_source(FunctionExpr expr);

}  // namespace schwarzian
