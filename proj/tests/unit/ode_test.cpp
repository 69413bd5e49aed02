#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "schwarzian/errors.hpp"
#include "schwarzian/expr.hpp"
#include "schwarzian/ode.hpp"
#include "schwarzian/ode_link.hpp"
#include "schwarzian/schwarzian.hpp"

using namespace schwarzian;

TEST(Ode, HarmonicOscillatorMatchesSine) {
  // y'' + lambda^2 y = 0, y(0) = 0, y'(0) = lambda  ->  y = sin(lambda z).
  for (const double lambda : {0.5, 1.0, 3.0}) {
    const FunctionExpr p0 = FunctionExpr::constant(lambda * lambda);
    OdeSolution y(p0, 2, 0.0, {0.0, lambda});
    for (const Complex z : {Complex(1.0), Complex(0.5, 0.7), Complex(-1.2, -0.4), Complex(0.0, 1.5)}) {
      const OdeState s = y.state_at(z);
      EXPECT_NEAR(std::abs(s[0] - std::sin(lambda * z)), 0.0, 1e-10 * (1.0 + std::abs(std::sin(lambda * z))));
      EXPECT_NEAR(std::abs(s[1] - lambda * std::cos(lambda * z)), 0.0,
                  1e-10 * (1.0 + std::abs(lambda * std::cos(lambda * z))));
    }
  }
}

TEST(Ode, FirstOrderVariableCoefficient) {
  // y' + z y = 0 -> y = exp(-z^2/2).
  OdeSolution y(parse("z"), 1, 0.0, {1.0});
  for (const Complex z : {Complex(1.0, 0.5), Complex(-0.8, 1.1), Complex(2.0)}) {
    EXPECT_NEAR(std::abs(y.state_at(z)[0] - std::exp(-z * z / 2.0)), 0.0, 1e-10);
  }
}

TEST(Ode, LocalSeriesOfExponentialSolution) {
  // y''' - y = 0 through (1, 1, 1) is exp(z - z0).
  const auto c = local_series(FunctionExpr::constant(-1.0), 3, 0.4, {1.0, 1.0, 1.0}, 12);
  double fact = 1.0;
  for (int m = 0; m <= 12; ++m) {
    if (m > 0) fact *= m;
    EXPECT_NEAR(std::abs(c[m] - 1.0 / fact), 0.0, 1e-15) << m;
  }
}

TEST(Ode, TrajectoryRecordsTheWholePath) {
  const std::vector<Complex> path = {0.0, 1.0, Complex(1.0, 1.0)};
  const OdeTrajectory t = integrate(FunctionExpr::constant(1.0), 2, {1.0, 0.0}, path);
  ASSERT_EQ(t.path.size(), t.states.size());
  EXPECT_EQ(t.path.front(), Complex(0.0));
  EXPECT_EQ(t.path.back(), Complex(1.0, 1.0));
  EXPECT_GE(t.path.size(), 20u);  // steps never exceed 0.1
  EXPECT_NEAR(std::abs(t.states.back()[0] - std::cos(Complex(1.0, 1.0))), 0.0, 1e-10);
}

TEST(Ode, SingularCoefficientAborts) {
  OdeSolution y(parse("1/(z - 1)"), 2, 0.0, {1.0, 0.0});
  EXPECT_THROW(y.state_at(2.0), IntegrationError);
}

TEST(OdeLink, HSolvesTheLinearEquation) {
  for (const char* text : {"exp(2*z)", "exp(z^2 + z)", "log(1 + z/2)", "z + z^3/5"}) {
    for (int k = 1; k <= 6; ++k) {
      const OdeLinkReport r = verify_link(as_source(parse(text)), k, Complex(0.2, 0.1));
      EXPECT_LT(r.residual, 1e-9) << text << " k=" << k;
      EXPECT_LT(r.mismatch, 1e-9) << text << " k=" << k;
    }
  }
}

TEST(OdeLink, IntegratedSolutionsGiveTheSchwarzian) {
  // Ratio-free check: h from the ODE with p0 = S_k(f)/k reproduces h from f.
  const FunctionExpr f = parse("exp(z)");
  const int k = 3;
  const Complex p0 = schwarzian_recursive(as_source(f), k, 0.0).at_base() / double(k);
  const Jet h = h_from_f(as_source(f), k, 0.0, k + 2);
  OdeState init;
  for (int m = 0; m < k; ++m) init.push_back(nth_value(h, m));
  OdeSolution y(FunctionExpr::constant(p0), k, 0.0, init);
  const Complex z(0.6, -0.3);
  EXPECT_NEAR(std::abs(y.state_at(z)[0] - std::exp(-z / double(k))), 0.0, 1e-10);
}
