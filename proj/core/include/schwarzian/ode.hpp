#pragma once

#include <memory>
#include <span>
#include <vector>

#include "schwarzian/expr.hpp"

namespace schwarzian {

/// Taylor method parameters for y^(k) + p0 y = 0.
inline constexpr int kTaylorOrder = 20;
inline constexpr double kMaxStep = 0.1;
inline constexpr double kLocalTolerance = 1e-12;
inline constexpr double kMinStep = 1e-10;

/// (y, y', ..., y^(k-1)) at one point.
using OdeState = std::vector<Complex>;

struct OdeTrajectory {
  std::vector<Complex> path;  // every step node, including the input nodes
  std::vector<OdeState> states;
  int k = 0;
  FunctionExpr p0;
};

/// Local Taylor coefficients c_0..c_order of the solution through `state`
/// at z, from c_(m+k) = -(p0 y)_m m!/(m+k)!.
std::vector<Complex> local_series(const FunctionExpr& p0, int k, Complex z,
                                  const OdeState& state, int order);

/// Integrates along the polyline `path` starting from `init` at path[0].
/// Throws IntegrationError on step-size underflow or when p0 cannot be
/// expanded on the path.
OdeTrajectory integrate(const FunctionExpr& p0, int k, OdeState init,
                        std::span<const Complex> path);

/// A solution that can be evaluated anywhere p0 is analytic, by continuing
/// along straight segments from the nearest point already visited. Copies
/// share their node cache; not safe for concurrent use.
class OdeSolution {
 public:
  OdeSolution(FunctionExpr p0, int k, Complex origin, OdeState init);

  OdeState state_at(Complex z);
  Jet jet_at(Complex z, int order);
  JetSource source() const;

  int k() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace schwarzian
