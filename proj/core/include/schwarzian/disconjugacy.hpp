#pragma once

#include <cstdint>
#include <vector>

#include "schwarzian/expr.hpp"

namespace schwarzian {

struct ConvexRegion {
  enum class Kind { disk, square };

  Kind kind = Kind::disk;
  Complex center = 0.0;
  double size = 1.0;  // radius for a disk, side for a square

  static ConvexRegion disk(Complex center, double radius);
  static ConvexRegion square(Complex center, double side);

  double diameter() const;
  bool contains(Complex z) const;  // closed region
  ConvexRegion dilated(double eps) const;
};

/// Axis-aligned squares covering the closed unit disk.
struct Covering {
  std::vector<ConvexRegion> cells;
  double delta = 0.0;
  int count = 0;
};

struct ZeroCount {
  int count = 0;
  Complex raw = 0.0;    // (1/2 pi i) of the contour integral before rounding
  int evaluations = 0;  // jet evaluations of y on the contour
  int dilations = 0;    // contour enlargements caused by boundary zeros
};

/// Zeros of y in the region counted with multiplicity, by the argument
/// principle with adaptively bisected 8-point Gauss-Legendre panels.
/// A zero on the contour (or quadrature that cannot resolve one next to it)
/// dilates the region by 1e-6, at most 3 times. Throws ContourError when that
/// does not help or the residue is not within 0.1 of an integer.
ZeroCount count_zeros_report(const JetSource& y, const ConvexRegion& region);
int count_zeros(const JetSource& y, const ConvexRegion& region);

/// k!/delta^k.
double disconjugacy_threshold(int k, double delta);

struct DisconjugacyReport {
  double sup_p0 = 0.0;   // over a sample grid of the region
  double threshold = 0.0;
  bool vacuous = false;  // sup_p0 >= threshold: the bound does not apply
  std::vector<int> counts;
  int max_count = 0;
  bool pass = false;     // max_count <= k - 1
};

/// Integrates `trials` solutions with standard complex normal initial data
/// from the region's center and counts their zeros in the region.
DisconjugacyReport check_disconjugacy(const FunctionExpr& p0, int k, const ConvexRegion& region,
                                      int trials, std::uint64_t seed);

struct PoleCountBound {
  double delta = 0.0;
  int n_tilde = 0;
  int n = 0;
  Covering covering;
};

/// delta = 0.99 (k k!/M)^(1/k); once delta reaches 2 the unit disk is its
/// own single cell. M <= 0 gives N = k - 1. Throws DomainError when the
/// grid would need more than 4096 squares per axis.
PoleCountBound pole_count_bound(int k, double m);

}  // namespace schwarzian
