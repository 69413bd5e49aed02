#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "schwarzian/catalog.hpp"
#include "schwarzian/errors.hpp"
#include "schwarzian/expr.hpp"
#include "schwarzian/partitions.hpp"
#include "schwarzian/schwarzian.hpp"

using namespace schwarzian;

namespace {

// Differential polynomials in g, g', g'', ...: exponent vector -> coefficient.
using Monomial = std::vector<int>;  // e[j] = power of g^(j)
using DiffPoly = std::map<Monomial, Rational>;

void add_term(DiffPoly& p, Monomial m, const Rational& c) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  Rational& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

DiffPoly differentiate(const DiffPoly& p) {
  DiffPoly out;
  for (const auto& [m, c] : p) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      Monomial d = m;
      d[j] -= 1;
      if (d.size() < j + 2) d.resize(j + 2, 0);
      d[j + 1] += 1;
      add_term(out, d, c * m[j]);
    }
  }
  return out;
}

DiffPoly times_g(const DiffPoly& p, const Rational& s) {
  DiffPoly out;
  for (const auto& [m, c] : p) {
    Monomial d = m.empty() ? Monomial{0} : m;
    d[0] += 1;
    add_term(out, d, c * s);
  }
  return out;
}

// S_{k+1,k} by the defining recursion, symbolically.
DiffPoly symbolic_schwarzian(int k) {
  DiffPoly s{{Monomial{1}, Rational(1)}};
  for (int j = 2; j <= k; ++j) {
    DiffPoly next = differentiate(s);
    for (const auto& [m, c] : times_g(s, make_rational(-1, k))) add_term(next, m, c);
    s = std::move(next);
  }
  return s;
}

JetSource source(const std::string& text) { return as_source(parse(text)); }

Complex s_k(const std::string& text, int k, Complex z) {
  return schwarzian_recursive(source(text), k, z).at_base();
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(ClosedForm, CoefficientsMatchSymbolicRecursion) {
  for (int k = 1; k <= 12; ++k) {
    DiffPoly expected = symbolic_schwarzian(k);
    DiffPoly table;
    for (const auto& term : closed_form_terms(k)) {
      Monomial m(term.tuple.counts.begin(), term.tuple.counts.end());
      add_term(table, m, term.coefficient);
    }
    EXPECT_EQ(table, expected) << "k = " << k;
  }
}

TEST(Partitions, CountsAreThePartitionNumbers) {
  const int p[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int k = 1; k <= 12; ++k) {
    const auto tuples = enumerate_partitions(k);
    EXPECT_EQ(static_cast<int>(tuples.size()), p[k - 1]);
    for (const auto& t : tuples) {
      int weight = 0;
      for (int r = 1; r <= k; ++r) weight += r * t.count(r);
      EXPECT_EQ(weight, k);
    }
    EXPECT_EQ(tuples.front().count(1), k);
    EXPECT_EQ(tuples.back().count(k), 1);
  }
}

TEST(Partitions, MakeRationalNormalizesSign) {
  EXPECT_EQ(make_rational(3, -6), Rational(-1) / 2);
  EXPECT_EQ(make_rational(-3, -6), Rational(1) / 2);
  EXPECT_THROW(make_rational(1, 0), std::exception);
}

TEST(Schwarzian, ExponentialHasConstantValue) {
  // g = c, so only the tuple (k, 0, ..., 0) survives: S_k = -k c^k / (-k)^k.
  // The value shrinks like k^(1-k), so the error is measured against 1 + |S_k|.
  for (int k = 1; k <= 8; ++k) {
    const Complex c(0.7, -0.4);
    const Complex expected = -double(k) * std::pow(c, k) / std::pow(-double(k), k);
    const JetSource f = as_source(bind_parameters(parse("exp(c*z)", std::vector<std::string>{"c"}),
                                                  {{"c", c}}));
    const double scale = 1.0 + std::abs(expected);
    EXPECT_LT(std::abs(schwarzian_recursive(f, k, 0.3).at_base() - expected), 1e-13 * scale) << k;
    EXPECT_LT(std::abs(schwarzian_closed_form(f, k, 0.3).at_base() - expected), 1e-13 * scale) << k;
  }
  EXPECT_NEAR(std::abs(s_k("exp(z)", 3, 0.0) - 1.0 / 9.0), 0.0, 1e-15);
}

TEST(Schwarzian, MethodsAgreeOnRandomCatalogInstances) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (const char* text : {"exp(z^2 + z)", "log(1 + z/2)", "(z + 2)/(z - 3)", "z^3 + z + 1",
                           "1/(exp(z) - 2)", "J0(exp(z/2))/Y0(exp(z/2))"}) {
    for (int k = 2; k <= 6; ++k) {
      const Complex z(u(rng), u(rng));
      const Complex a = schwarzian_recursive(source(text), k, z).at_base();
      const Complex b = schwarzian_closed_form(source(text), k, z).at_base();
      EXPECT_LT(std::abs(a - b), 1e-9 * (1.0 + std::abs(b))) << text << " k=" << k;
    }
  }
}

TEST(Schwarzian, ClassicalSchwarzianAtKEqualsTwo) {
  // (f''/f')' - (f''/f')^2 / 2 from pointwise derivatives of f = exp(z^2).
  for (const Complex z : {Complex(0.3, 0.1), Complex(-0.5, 0.4), Complex(1.0, -0.2)}) {
    const Complex f1 = 2.0 * z, f2 = 2.0 + 4.0 * z * z, f3 = 12.0 * z + 8.0 * z * z * z;
    // derivatives of exp(z^2) divided by exp(z^2)
    const Complex g = f2 / f1;
    const Complex expected = f3 / f1 - 1.5 * g * g;
    EXPECT_LT(rel(s_k("exp(z^2)", 2, z), expected), 1e-12);
  }
}

TEST(Schwarzian, DocumentedIdentities) {
  for (int n = 2; n <= 6; ++n) {
    const std::string f = "1/((2*z)^" + std::to_string(n) + " - 1)";
    for (const Complex z : {Complex(0.3, 0.2), Complex(-0.6, 0.1), Complex(0.1, -0.7)}) {
      EXPECT_LT(rel(s_k(f, 2, z), (1.0 - n * n) / (2.0 * z * z)), 1e-9) << n;
    }
  }
  for (const Complex c : {Complex(1.0), Complex(2.0), Complex(1.0, 1.0)}) {
    const FunctionExpr f = catalog_entry("hayman").instantiate({{"c", c}});
    const Complex z(0.2, -0.3);
    const Complex expected = -std::exp(2.0 * c * z) / 2.0 - c * c / 2.0;
    EXPECT_LT(rel(schwarzian_recursive(as_source(f), 2, z).at_base(), expected), 1e-9);
  }
  for (const Complex z : {Complex(-2.0, 0.5), Complex(0.5, -0.5), Complex(2.5, 1.0)}) {
    EXPECT_LT(rel(s_k("J0(exp(z/2))/Y0(exp(z/2))", 2, z), std::exp(z) / 2.0), 1e-8);
  }
}

TEST(Schwarzian, NullFamiliesVanish) {
  std::vector<Complex> grid;
  for (int r = 1; r <= 4; ++r) {
    for (int i = 0; i < 8; ++i) grid.push_back(std::polar(0.2 * r, 0.8 * i + 0.3 * r));
  }
  for (int k = 2; k <= 5; ++k) {
    for (const Complex n : {Complex(1.0), Complex(2.0), Complex(0.5, 0.5)}) {
      const ParamMap p{{"k", double(k)}, {"n", n}};
      EXPECT_TRUE(is_schwarzian_null(as_source(catalog_entry("g_n").instantiate(p)), k, grid));
      EXPECT_TRUE(is_schwarzian_null(as_source(catalog_entry("h_n").instantiate(p)), k, grid));
    }
    EXPECT_TRUE(is_schwarzian_null(source("3*z + 1"), k, grid));
    EXPECT_FALSE(is_schwarzian_null(source("exp(z)"), k, grid));
  }
  // Mobius maps are S_2-null but not S_3-null.
  EXPECT_TRUE(is_schwarzian_null(source("(2*z + 1)/(z + 3)"), 2, grid));
  EXPECT_FALSE(is_schwarzian_null(source("(2*z + 1)/(z + 3)"), 3, grid));
}

TEST(Schwarzian, PoleOrderAtSimpleCriticalPoint) {
  // f = z^2: g = 1/z and S_k has a pole of order k at 0.
  for (int k = 2; k <= 6; ++k) {
    EXPECT_EQ(pole_order_at(source("z^2"), k, 0.0), k);
    EXPECT_EQ(pole_order_at(source("z^2"), k, 0.5), 0);
  }
}

TEST(Schwarzian, EdgeCases) {
  EXPECT_THROW(schwarzian_recursive(source("5 + 0*z"), 2, 0.1), SchwarzianOfConstant);
  EXPECT_THROW(schwarzian_recursive(source("z^2"), 2, 0.0).at_base(), DomainError);
  EXPECT_THROW(generalized_schwarzian(source("z"), 1, 1, 0.0), std::exception);
}

TEST(Grahl, DecompositionConditionsHold) {
  for (int k = 2; k <= 12; ++k) {
    const GrahlDecomposition d = grahl_decompose(k);
    EXPECT_EQ(d.leading, closed_form_terms(k).front().coefficient);
    EXPECT_EQ(d.ell, k - 1);
    EXPECT_EQ(static_cast<int>(d.terms.size()), static_cast<int>(enumerate_partitions(k).size()) - 2);
    for (const auto& t : d.terms) EXPECT_TRUE(grahl_condition_holds(t, k, d.ell));
  }
}
