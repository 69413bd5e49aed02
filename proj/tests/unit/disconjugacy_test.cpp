#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "schwarzian/disconjugacy.hpp"
#include "schwarzian/errors.hpp"
#include "schwarzian/expr.hpp"
#include "schwarzian/ode.hpp"

using namespace schwarzian;

namespace {

// Polynomial with prescribed roots, as a jet source.
JetSource product_of(const std::vector<Complex>& roots) {
  return [roots](Complex z0, int order) {
    Jet p = Jet::constant(z0, 1.0, order);
    for (const Complex r : roots) p = p * (Jet::variable(z0, order) - r);
    return p;
  };
}

double boundary_distance(const ConvexRegion& c, Complex z) {
  if (c.kind == ConvexRegion::Kind::disk) return std::abs(std::abs(z - c.center) - c.size);
  const Complex d = z - c.center;
  const double h = c.size / 2;
  const double dx = std::abs(std::abs(d.real()) - h), dy = std::abs(std::abs(d.imag()) - h);
  if (std::abs(d.real()) <= h && std::abs(d.imag()) <= h) return std::min(dx, dy);
  return std::hypot(std::max(std::abs(d.real()) - h, 0.0), std::max(std::abs(d.imag()) - h, 0.0));
}

}  // namespace

TEST(CountZeros, AgreesWithKnownRootsOfRandomPolynomials) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<int> degree(1, 8);
  for (int t = 0; t < 20; ++t) {
    std::vector<Complex> roots(degree(rng));
    for (auto& r : roots) r = Complex(u(rng), u(rng));
    for (const ConvexRegion region : {ConvexRegion::disk(Complex(0.1, -0.2), 0.9),
                                      ConvexRegion::square(Complex(-0.3, 0.2), 1.4)}) {
      int expected = 0;
      bool near_boundary = false;
      for (const Complex r : roots) {
        expected += region.contains(r);
        near_boundary |= boundary_distance(region, r) < 1e-3;
      }
      if (near_boundary) continue;
      EXPECT_EQ(count_zeros(product_of(roots), region), expected) << "trial " << t;
    }
  }
}

TEST(CountZeros, MultiplicityCounts) {
  const ConvexRegion d = ConvexRegion::disk(0.0, 1.0);
  EXPECT_EQ(count_zeros(product_of({0.2, 0.2, 0.2, Complex(0.0, 0.5)}), d), 4);
  EXPECT_EQ(count_zeros(as_source(parse("exp(z)")), d), 0);
  EXPECT_EQ(count_zeros(as_source(parse("exp(3*z) - 1")), d), 1);
}

TEST(CountZeros, BoundaryZeroIsResolvedByDilation) {
  const ConvexRegion d = ConvexRegion::disk(0.0, 1.0);
  const ZeroCount c = count_zeros_report(product_of({1.0}), d);
  EXPECT_GE(c.dilations, 1);
  EXPECT_EQ(c.count, 1);
}

TEST(ConvexRegions, Geometry) {
  const auto s = ConvexRegion::square(Complex(1.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(s.diameter(), 2.0 * std::sqrt(2.0));
  EXPECT_TRUE(s.contains(Complex(2.0, 0.0)));
  EXPECT_FALSE(s.contains(Complex(2.1, 0.0)));
  const auto d = ConvexRegion::disk(0.0, 0.5);
  EXPECT_DOUBLE_EQ(d.diameter(), 1.0);
  EXPECT_DOUBLE_EQ(d.dilated(0.1).size, 0.6);
}

TEST(Disconjugacy, ThresholdFormula) {
  EXPECT_DOUBLE_EQ(disconjugacy_threshold(1, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(disconjugacy_threshold(3, 0.5), 48.0);
  EXPECT_DOUBLE_EQ(disconjugacy_threshold(4, 1.0), 24.0);
}

TEST(Disconjugacy, BelowThresholdAtMostKMinusOneZeros) {
  for (int k = 2; k <= 4; ++k) {
    const double delta = 1.0;
    const double p = 0.9 * disconjugacy_threshold(k, delta);
    const auto region = ConvexRegion::disk(Complex(0.1, 0.1), delta / 2);
    const DisconjugacyReport r =
        check_disconjugacy(FunctionExpr::constant(p), k, region, 10, 40 + k);
    EXPECT_FALSE(r.vacuous);
    EXPECT_TRUE(r.pass) << "k = " << k << " max = " << r.max_count;
    EXPECT_EQ(static_cast<int>(r.counts.size()), 10);
  }
}

TEST(Disconjugacy, SharpnessExampleExceedsBoundAboveThreshold) {
  // y'' + (pi/delta)^2 y = 0 has sin(pi (z + delta/2)/delta) with zeros at both
  // ends of a real segment of length delta; a slightly larger disk sees two.
  const double delta = 1.0, lambda = 1.05 * M_PI / delta;
  const FunctionExpr p0 = FunctionExpr::constant(lambda * lambda);
  OdeSolution y(p0, 2, 0.0, {0.0, lambda});
  EXPECT_GE(count_zeros(y.source(), ConvexRegion::disk(0.0, 0.99 * delta)), 2);
  EXPECT_GE(lambda * lambda, disconjugacy_threshold(2, delta));
}

TEST(PoleCountBound, CoveringCoversTheUnitDisk) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const double m : {0.5, 10.0, 1e3, 1e4}) {
    for (int k = 2; k <= 6; ++k) {
      const PoleCountBound b = pole_count_bound(k, m);
      EXPECT_EQ(b.n_tilde, static_cast<int>(b.covering.cells.size()));
      EXPECT_EQ(b.n, b.n_tilde * (k - 1));
      for (const auto& c : b.covering.cells) EXPECT_LE(c.diameter(), b.delta + 1e-12);
      for (int t = 0; t < 500; ++t) {
        const Complex z(u(rng), u(rng));
        if (std::abs(z) >= 1.0) continue;
        bool covered = false;
        for (const auto& c : b.covering.cells) covered |= c.contains(z);
        EXPECT_TRUE(covered) << z << " k=" << k << " M=" << m;
      }
    }
  }
}

TEST(PoleCountBound, DeltaFormulaAndMonotonicity) {
  const PoleCountBound b = pole_count_bound(3, 1e4);
  EXPECT_NEAR(b.delta, 0.99 * std::cbrt(3.0 * 6.0 / 1e4), 1e-15);
  for (int k = 2; k <= 6; ++k) {
    int last = 0;
    for (double m = 1.0; m <= 1e5; m *= 10.0) {
      const int n = pole_count_bound(k, m).n;
      EXPECT_GE(n, last);
      last = n;
    }
    EXPECT_EQ(pole_count_bound(k, 0.0).n, k - 1);
    EXPECT_EQ(pole_count_bound(k, 1e-3).delta, 2.0);
  }
  EXPECT_THROW(pole_count_bound(2, 1e12), DomainError);
  EXPECT_THROW(pole_count_bound(1, 1.0), DomainError);
}
