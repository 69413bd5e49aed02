#include <cmath>
#include <random>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include "schwarzian/bessel.hpp"
#include "schwarzian/catalog.hpp"
#include "schwarzian/errors.hpp"
#include "schwarzian/expr.hpp"

using namespace schwarzian;

namespace {

// Random trees over the whole grammar; depth bounds keep them evaluable.
FunctionExpr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 8 : 1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  switch (pick(rng)) {
    case 0: return FunctionExpr::constant(Complex(std::round(u(rng) * 100) / 100, 0.0));
    case 1: return FunctionExpr::variable();
    case 2: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 3: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 4: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 5: return random_expr(rng, depth - 1) / (FunctionExpr::constant(3.0) + random_expr(rng, depth - 1));
    case 6: return int_pow(random_expr(rng, depth - 1), std::uniform_int_distribution<int>(-3, 3)(rng) | 1);
    case 7: return exp(random_expr(rng, depth - 1) * FunctionExpr::constant(0.1));
    default: return FunctionExpr::constant(Complex(0.0, 0.5)) * random_expr(rng, depth - 1);
  }
}

}  // namespace

TEST(Parser, PrintParseIsAFixedPoint) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const FunctionExpr e = random_expr(rng, 4);
    const std::string text = e.to_string();
    const FunctionExpr back = parse(text);
    EXPECT_EQ(back.to_string(), text);
    EXPECT_TRUE(parse(back.to_string()) == back) << text;
    const Complex z(0.31, 0.17);
    const Complex a = evaluate(e, z), b = evaluate(back, z);
    if (std::isfinite(std::abs(a))) {
      EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12 * (1.0 + std::abs(a))) << text;
    }
  }
}

TEST(Parser, ReadsTheDocumentedGrammar) {
  EXPECT_EQ(evaluate(parse("2*z^3 - z"), 2.0), Complex(14.0));
  EXPECT_EQ(evaluate(parse("z^(-2)"), 2.0), Complex(0.25));
  EXPECT_EQ(evaluate(parse("-z + +1"), 3.0), Complex(-2.0));
  EXPECT_EQ(evaluate(parse("2.5i"), 0.0), Complex(0.0, 2.5));
  EXPECT_EQ(evaluate(parse("1e-1*z"), 1.0), Complex(0.1));
  const Complex v = evaluate(parse("exp(log(z))"), Complex(0.5, 0.5));
  EXPECT_NEAR(std::abs(v - Complex(0.5, 0.5)), 0.0, 1e-15);
}

TEST(Parser, ParametersBindAndStaySymbolic) {
  const std::vector<std::string> names = {"a", "b"};
  const FunctionExpr e = parse("a*exp(b*z)", names);
  EXPECT_EQ(free_parameters(e), (std::set<std::string>{"a", "b"}));
  const FunctionExpr half = bind_parameters(e, {{"a", 2.0}});
  EXPECT_EQ(free_parameters(half), std::set<std::string>{"b"});
  const FunctionExpr full = bind_parameters(half, {{"b", Complex(0.0, 1.0)}});
  EXPECT_NEAR(std::abs(evaluate(full, M_PI) + 2.0), 0.0, 1e-14);
}

TEST(Parser, ErrorsCarryPositions) {
  auto position_of = [](const char* text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  EXPECT_EQ(position_of("exp(z"), 5u);
  EXPECT_EQ(position_of("z + w"), 4u);
  EXPECT_EQ(position_of("z^0"), 2u);
  EXPECT_EQ(position_of("z^1.5"), 3u);
  EXPECT_EQ(position_of("z )"), 2u);
  EXPECT_EQ(position_of(""), 0u);
}

TEST(Evaluation, JetValueAgreesWithPointwiseEvaluation) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int t = 0; t < 200; ++t) {
    const FunctionExpr e = random_expr(rng, 3);
    const Complex z(u(rng), u(rng));
    Complex direct;
    Jet j;
    try {
      direct = evaluate(e, z);
      j = jet_at(e, z, 4);
    } catch (const Error&) {
      continue;  // singular sample
    }
    if (j.is_pole() || !std::isfinite(std::abs(direct)) || std::abs(direct) > 1e8) continue;
    EXPECT_NEAR(std::abs(j.value() - direct), 0.0, 1e-9 * (1.0 + std::abs(direct))) << e.to_string();
  }
}

TEST(Evaluation, JetDerivativeMatchesCentralDifference) {
  const FunctionExpr e = parse("exp(z^2)/(2 + z) + log(1 + z/3)");
  const Complex z(0.2, -0.3);
  const double h = 1e-5;
  const Complex fd = (evaluate(e, z + h) - evaluate(e, z - h)) / (2.0 * h);
  EXPECT_NEAR(std::abs(nth_value(jet_at(e, z, 3), 1) - fd), 0.0, 1e-8);
}

TEST(Catalog, EveryEntryInstantiatesWithDefaults) {
  for (const auto& entry : catalog()) {
    const FunctionExpr f = entry.instantiate();
    EXPECT_TRUE(free_parameters(f).empty()) << entry.name;
    EXPECT_NO_THROW(evaluate(f, Complex(0.37, 0.21))) << entry.name;
  }
  EXPECT_THROW(catalog_entry("no_such_entry"), Error);
  EXPECT_THROW(catalog_entry("power").instantiate({{"n", 2.5}}), DomainError);
}

TEST(Bessel, RealAxisMatchesBoost) {
  for (double x = 0.25; x <= 11.5; x += 0.25) {
    const double j = boost::math::cyl_bessel_j(0, x);
    const double y = boost::math::cyl_neumann(0, x);
    EXPECT_NEAR(bessel_value(BesselKind::J0, x).real(), j, 1e-12) << x;
    EXPECT_NEAR(bessel_value(BesselKind::Y0, x).real(), y, 1e-12) << x;
  }
}

TEST(Bessel, SeriesSatisfiesBesselEquation) {
  // w^2 y'' + w y' + w^2 y = 0 on complex arguments.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int t = 0; t < 50; ++t) {
    const Complex w0(u(rng), u(rng));
    if (std::abs(w0) < 0.2) continue;
    const Jet w = Jet::variable(w0, 6);
    for (const BesselKind kind : {BesselKind::J0, BesselKind::Y0}) {
      const Jet y = bessel_series(kind, w);
      const Complex y0 = nth_value(y, 0), y1 = nth_value(y, 1), y2 = nth_value(y, 2);
      const Complex residual = w0 * w0 * y2 + w0 * y1 + w0 * w0 * y0;
      const double scale = std::abs(w0 * w0 * y2) + std::abs(w0 * y1) + std::abs(w0 * w0 * y0);
      EXPECT_LT(std::abs(residual), 1e-10 * scale) << to_string(kind) << " at " << w0;
    }
  }
}

TEST(Bessel, ZerosMatchBoost) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_NEAR(bessel_zero(BesselKind::J0, n), boost::math::cyl_bessel_j_zero(0.0, n), 1e-10);
    EXPECT_NEAR(bessel_zero(BesselKind::Y0, n), boost::math::cyl_neumann_zero(0.0, n), 1e-10);
  }
}

TEST(Bessel, EdgeCases) {
  EXPECT_THROW(bessel_zero(BesselKind::J0, 0), DomainError);
  EXPECT_THROW(bessel_zero(BesselKind::J0, 20), DomainError);
  EXPECT_THROW(bessel_value(BesselKind::J0, 13.0), DomainError);
  EXPECT_THROW(bessel_series(BesselKind::Y0, Jet::variable(0.0, 3)), BranchError);
}
