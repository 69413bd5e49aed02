#include "schwarzian/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "schwarzian/errors.hpp"

namespace schwarzian {

struct FunctionExpr::Node {
  NodeKind kind = NodeKind::variable;
  Complex value{};
  std::string name;
  int exponent = 0;
  BesselKind bessel = BesselKind::J0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const FunctionExpr::Node>;

}  // namespace

FunctionExpr::FunctionExpr() : FunctionExpr(variable()) {}

FunctionExpr::FunctionExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

FunctionExpr FunctionExpr::constant(Complex value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::constant;
  n->value = value;
  return FunctionExpr(std::move(n));
}

FunctionExpr FunctionExpr::variable() {
  static const auto z = [] {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::variable;
    return n;
  }();
  return FunctionExpr(z);
}

FunctionExpr FunctionExpr::parameter(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::parameter;
  n->name = std::move(name);
  return FunctionExpr(std::move(n));
}

namespace {

FunctionExpr::Node binary_node(NodeKind kind, NodePtr a, NodePtr b) {
  FunctionExpr::Node n;
  n.kind = kind;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return n;
}

}  // namespace

FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b) {
  return FunctionExpr(std::make_shared<FunctionExpr::Node>(binary_node(NodeKind::add, a.node_, b.node_)));
}

FunctionExpr operator-(const FunctionExpr& a, const FunctionExpr& b) {
  return FunctionExpr(std::make_shared<FunctionExpr::Node>(binary_node(NodeKind::sub, a.node_, b.node_)));
}

FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b) {
  return FunctionExpr(std::make_shared<FunctionExpr::Node>(binary_node(NodeKind::mul, a.node_, b.node_)));
}

FunctionExpr operator/(const FunctionExpr& a, const FunctionExpr& b) {
  return FunctionExpr(std::make_shared<FunctionExpr::Node>(binary_node(NodeKind::div, a.node_, b.node_)));
}

FunctionExpr int_pow(const FunctionExpr& base, int exponent) {
  if (exponent == 0) throw DomainError("zero integer exponent");
  auto n = std::make_shared<FunctionExpr::Node>(binary_node(NodeKind::int_pow, base.node_, nullptr));
  n->exponent = exponent;
  return FunctionExpr(std::move(n));
}

FunctionExpr exp(const FunctionExpr& arg) {
  return FunctionExpr(std::make_shared<FunctionExpr::Node>(binary_node(NodeKind::exp, arg.node_, nullptr)));
}

FunctionExpr log(const FunctionExpr& arg) {
  return FunctionExpr(std::make_shared<FunctionExpr::Node>(binary_node(NodeKind::log, arg.node_, nullptr)));
}

FunctionExpr bessel(BesselKind kind, const FunctionExpr& arg) {
  auto n = std::make_shared<FunctionExpr::Node>(binary_node(NodeKind::bessel, arg.node_, nullptr));
  n->bessel = kind;
  return FunctionExpr(std::move(n));
}

NodeKind FunctionExpr::kind() const { return node_->kind; }
Complex FunctionExpr::value() const { return node_->value; }
const std::string& FunctionExpr::name() const { return node_->name; }
int FunctionExpr::exponent() const { return node_->exponent; }
BesselKind FunctionExpr::bessel_kind() const { return node_->bessel; }
FunctionExpr FunctionExpr::lhs() const { return FunctionExpr(node_->lhs); }
FunctionExpr FunctionExpr::rhs() const { return FunctionExpr(node_->rhs); }

namespace {

std::string format_real(double x) {
  if (x == 0.0) return "0";  // -0 is not in the grammar
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

// Negative parts are written as (0-x) so the output stays within the grammar.
std::string format_constant(Complex c) {
  const double re = c.real();
  const double im = c.imag();
  auto signed_term = [](double x, const std::string& suffix) {
    return x < 0 ? "(0-" + format_real(-x) + suffix + ")" : format_real(x) + suffix;
  };
  if (im == 0.0) return signed_term(re, "");
  if (re == 0.0) return signed_term(im, "i");
  const std::string head = signed_term(re, "");
  return im < 0 ? "(" + head + "-" + format_real(-im) + "i)"
                : "(" + head + "+" + format_real(im) + "i)";
}

void print(const FunctionExpr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::constant: out += format_constant(e.value()); return;
    case NodeKind::variable: out += "z"; return;
    case NodeKind::parameter: out += e.name(); return;
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div: {
      static constexpr char ops[] = {'+', '-', '*', '/'};
      out += '(';
      print(e.lhs(), out);
      out += ops[static_cast<int>(e.kind()) - static_cast<int>(NodeKind::add)];
      print(e.rhs(), out);
      out += ')';
      return;
    }
    case NodeKind::int_pow:
      out += '(';
      print(e.lhs(), out);
      out += '^';
      out += e.exponent() < 0 ? "(" + std::to_string(e.exponent()) + ")" : std::to_string(e.exponent());
      out += ')';
      return;
    case NodeKind::exp:
    case NodeKind::log:
    case NodeKind::bessel:
      out += e.kind() == NodeKind::exp   ? "exp("
             : e.kind() == NodeKind::log ? "log("
                                         : std::string(to_string(e.bessel_kind())) + "(";
      print(e.lhs(), out);
      out += ')';
      return;
  }
}

bool equal(const FunctionExpr::Node* a, const FunctionExpr::Node* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr || a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::constant: return a->value == b->value;
    case NodeKind::variable: return true;
    case NodeKind::parameter: return a->name == b->name;
    case NodeKind::int_pow:
      return a->exponent == b->exponent && equal(a->lhs.get(), b->lhs.get());
    case NodeKind::bessel:
      return a->bessel == b->bessel && equal(a->lhs.get(), b->lhs.get());
    default:
      return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
  }
}

}  // namespace

std::string FunctionExpr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

bool operator==(const FunctionExpr& a, const FunctionExpr& b) {
  return equal(a.node_.get(), b.node_.get());
}

FunctionExpr bind_parameters(const FunctionExpr& e, const ParamMap& values) {
  switch (e.kind()) {
    case NodeKind::constant:
    case NodeKind::variable: return e;
    case NodeKind::parameter: {
      auto it = values.find(e.name());
      return it == values.end() ? e : FunctionExpr::constant(it->second);
    }
    case NodeKind::add: return bind_parameters(e.lhs(), values) + bind_parameters(e.rhs(), values);
    case NodeKind::sub: return bind_parameters(e.lhs(), values) - bind_parameters(e.rhs(), values);
    case NodeKind::mul: return bind_parameters(e.lhs(), values) * bind_parameters(e.rhs(), values);
    case NodeKind::div: return bind_parameters(e.lhs(), values) / bind_parameters(e.rhs(), values);
    case NodeKind::int_pow: return int_pow(bind_parameters(e.lhs(), values), e.exponent());
    case NodeKind::exp: return exp(bind_parameters(e.lhs(), values));
    case NodeKind::log: return log(bind_parameters(e.lhs(), values));
    case NodeKind::bessel: return bessel(e.bessel_kind(), bind_parameters(e.lhs(), values));
  }
  return e;
}

namespace {

void collect_parameters(const FunctionExpr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case NodeKind::constant:
    case NodeKind::variable: return;
    case NodeKind::parameter: out.insert(e.name()); return;
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div:
      collect_parameters(e.lhs(), out);
      collect_parameters(e.rhs(), out);
      return;
    default: collect_parameters(e.lhs(), out); return;
  }
}

Jet jet_eval(const FunctionExpr& e, Complex z0, int order) {
  switch (e.kind()) {
    case NodeKind::constant: return Jet::constant(z0, e.value(), order);
    case NodeKind::variable: return Jet::variable(z0, order);
    case NodeKind::parameter: throw DomainError("unbound parameter '" + e.name() + "'");
    case NodeKind::add: return jet_eval(e.lhs(), z0, order) + jet_eval(e.rhs(), z0, order);
    case NodeKind::sub: return jet_eval(e.lhs(), z0, order) - jet_eval(e.rhs(), z0, order);
    case NodeKind::mul: return jet_eval(e.lhs(), z0, order) * jet_eval(e.rhs(), z0, order);
    case NodeKind::div: return jet_eval(e.lhs(), z0, order) / jet_eval(e.rhs(), z0, order);
    case NodeKind::int_pow: return int_pow(jet_eval(e.lhs(), z0, order), e.exponent());
    case NodeKind::exp: return exp(jet_eval(e.lhs(), z0, order));
    case NodeKind::log: return log(jet_eval(e.lhs(), z0, order));
    case NodeKind::bessel: return bessel_series(e.bessel_kind(), jet_eval(e.lhs(), z0, order));
  }
  throw Error("unknown expression node");
}

Complex ipow(Complex x, int n) {
  Complex r = 1.0;
  for (int i = 0; i < std::abs(n); ++i) r *= x;
  return n < 0 ? 1.0 / r : r;
}

}  // namespace

std::set<std::string> free_parameters(const FunctionExpr& expr) {
  std::set<std::string> out;
  collect_parameters(expr, out);
  return out;
}

Jet jet_at(const FunctionExpr& expr, Complex z0, int order) {
  if (order < 0) throw OrderUnderflow("negative jet order requested");
  constexpr int kGuards[] = {4, 8, 16, 32};
  for (int guard : kGuards) {
    try {
      Jet j = jet_eval(expr, z0, order + guard);
      if (j.known_order() >= order) return j.truncated(order);
    } catch (const OrderUnderflow&) {
      if (guard == kGuards[std::size(kGuards) - 1]) throw;
    }
  }
  throw OrderUnderflow("expression jet does not reach order " + std::to_string(order));
}

Complex evaluate(const FunctionExpr& e, Complex z) {
  switch (e.kind()) {
    case NodeKind::constant: return e.value();
    case NodeKind::variable: return z;
    case NodeKind::parameter: throw DomainError("unbound parameter '" + e.name() + "'");
    case NodeKind::add: return evaluate(e.lhs(), z) + evaluate(e.rhs(), z);
    case NodeKind::sub: return evaluate(e.lhs(), z) - evaluate(e.rhs(), z);
    case NodeKind::mul: return evaluate(e.lhs(), z) * evaluate(e.rhs(), z);
    case NodeKind::div: {
      const Complex d = evaluate(e.rhs(), z);
      if (d == Complex(0.0)) throw DomainError("division by zero in evaluation");
      return evaluate(e.lhs(), z) / d;
    }
    case NodeKind::int_pow: return ipow(evaluate(e.lhs(), z), e.exponent());
    case NodeKind::exp: return std::exp(evaluate(e.lhs(), z));
    case NodeKind::log: {
      const Complex a = evaluate(e.lhs(), z);
      if (a == Complex(0.0)) throw BranchError("log of zero");
      return std::log(a);
    }
    case NodeKind::bessel: return bessel_value(e.bessel_kind(), evaluate(e.lhs(), z));
  }
  throw Error("unknown expression node");
}

JetSource as_source(FunctionExpr expr) {
  return [e = std::move(expr)](Complex z0, int order) { return jet_at(e, z0, order); };
}

}  // namespace schwarzian
