#include <cmath>

#include <gtest/gtest.h>

#include "schwarzian/catalog.hpp"
#include "schwarzian/errors.hpp"
#include "schwarzian/expr.hpp"
#include "schwarzian/normality.hpp"

using namespace schwarzian;

namespace {

JetSource source(const char* text) { return as_source(parse(text)); }

std::vector<Complex> ring_grid() {
  std::vector<Complex> g;
  for (int r = 1; r <= 3; ++r) {
    for (int i = 0; i < 8; ++i) g.push_back(std::polar(0.25 * r, 0.785 * i + 0.2));
  }
  return g;
}

}  // namespace

TEST(SphericalDerivative, ClosedForms) {
  EXPECT_NEAR(spherical_derivative(source("exp(z)"), 0.0), 0.5, 1e-15);
  EXPECT_NEAR(spherical_derivative(source("z"), 2.0), 1.0 / 5.0, 1e-15);
  // At a simple pole the value of (1/f)^# = |(1/f)'| / (1 + 0).
  EXPECT_NEAR(spherical_derivative(source("1/z"), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(spherical_derivative(source("1/z"), 0.5), spherical_derivative(source("z"), 0.5), 1e-12);
}

TEST(Marty, InequalityHoldsOnExamples) {
  for (const char* text : {"exp(z)", "exp(z^2 + z)", "z^3 + z + 1", "log(1 + z/2)"}) {
    for (const Complex z : ring_grid()) {
      const MartyCheck m = marty_inequality_check(source(text), z);
      if (m.degenerate) continue;
      EXPECT_TRUE(m.holds) << text << " at " << z;
      EXPECT_LT(m.lhs, m.rhs);
    }
  }
}

TEST(Marty, DegenerateAndInvalidPoints) {
  EXPECT_TRUE(marty_inequality_check(source("3*z + 1"), 0.2).degenerate);
  EXPECT_THROW(marty_inequality_check(source("z^2"), 0.0), DomainError);
  EXPECT_THROW(marty_inequality_check(source("1/z"), 0.0), DomainError);
}

TEST(Transforms, RoundTripNames) {
  for (const Transform t : {Transform::identity, Transform::derivative, Transform::log_derivative,
                            Transform::pre_schwarzian}) {
    EXPECT_EQ(parse_transform(to_string(t)), t);
  }
  EXPECT_THROW(parse_transform("nope"), Error);
}

TEST(FamilyProbe, LinearGrowthOfScaledExponentials) {
  // f = a e^z: sup |f| over the grid is a sup |e^z|.
  FamilySpec spec;
  spec.entry = "exp_affine";
  spec.parameter = "a";
  spec.values = {1.0, 2.0, 4.0, 8.0};
  const auto grid = ring_grid();
  const GridReport r = family_bound_probe(spec, Transform::identity, grid);
  ASSERT_EQ(r.member_sup.size(), 4u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(r.member_sup[i], 2.0 * r.member_sup[i - 1], 1e-12);
  EXPECT_FALSE(r.diverging);
  // The pre-Schwarzian of a e^z is 1 for every member.
  const GridReport g = family_bound_probe(spec, Transform::pre_schwarzian, grid);
  for (const double s : g.member_sup) EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(FamilyProbe, SingularitiesAreDropped) {
  FamilySpec spec;
  spec.entry = "power";
  spec.parameter = "n";
  spec.values = {2.0, 3.0};
  spec.singularities = {0.25};
  const std::vector<Complex> grid = {0.25, 0.5, Complex(0.0, 0.5)};
  const GridReport r = family_bound_probe(spec, Transform::identity, grid);
  EXPECT_EQ(r.grid.size(), 2u);
}

TEST(Omission, ExponentialSchwarzianOmitsZero) {
  // S_2(e^z) = -1/2 everywhere.
  const OmissionReport o = omitted_function_check(source("exp(z)"), 2, parse("0"), ring_grid());
  EXPECT_TRUE(o.omits_on_grid);
  EXPECT_NEAR(o.min_gap, 0.5, 1e-12);
  const OmissionReport hit =
      omitted_function_check(source("exp(z)"), 2, parse("0 - 0.5"), ring_grid());
  EXPECT_FALSE(hit.omits_on_grid);
  EXPECT_EQ(hit.valid_points, 24);
}
