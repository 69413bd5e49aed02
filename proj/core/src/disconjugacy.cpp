#include "schwarzian/disconjugacy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "schwarzian/errors.hpp"
#include "schwarzian/ode.hpp"

namespace schwarzian {

ConvexRegion ConvexRegion::disk(Complex center, double radius) {
  if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
  return {Kind::disk, center, radius};
}

ConvexRegion ConvexRegion::square(Complex center, double side) {
  if (!(side > 0.0)) throw DomainError("square side must be positive");
  return {Kind::square, center, side};
}

double ConvexRegion::diameter() const {
  return kind == Kind::disk ? 2.0 * size : size * std::numbers::sqrt2;
}

bool ConvexRegion::contains(Complex z) const {
  const Complex d = z - center;
  if (kind == Kind::disk) return std::abs(d) <= size;
  return std::abs(d.real()) <= 0.5 * size && std::abs(d.imag()) <= 0.5 * size;
}

ConvexRegion ConvexRegion::dilated(double eps) const {
  return {kind, center, kind == Kind::disk ? size + eps : size + 2.0 * eps};
}

namespace {

constexpr std::array<double, 4> kNodes = {0.1834346424956498, 0.5255324099163290,
                                          0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kWeights = {0.3626837833783620, 0.3137066458778873,
                                            0.2223810344533745, 0.1012285362903763};
constexpr double kBoundaryDistance = 1e-8;
constexpr double kDilation = 1e-6;
constexpr int kMaxDilations = 3;
constexpr int kInitialPanels = 16;
constexpr int kMaxDepth = 40;
constexpr double kPanelTolerance = 1e-6;
constexpr double kToleranceFloor = 1e-10;

struct BoundaryZero {};

using Param = std::function<std::pair<Complex, Complex>(double)>;  // t -> (z, dz/dt)

struct Integrator {
  const JetSource& y;
  int evaluations = 0;

  // 8-point Gauss-Legendre for the integral of y'/y dz over t in [a, b].
  Complex panel(const Param& param, double a, double b) {
    Complex sum = 0.0;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
      for (const double sign : {-1.0, 1.0}) {
        const auto [z, dz] = param(mid + sign * half * kNodes[i]);
        const Jet j = y(z, 1);
        ++evaluations;
        const Complex v = j[0];
        const Complex d = j[1];
        if (std::abs(v) == 0.0 || std::abs(v) <= kBoundaryDistance * std::abs(d)) {
          throw BoundaryZero{};
        }
        sum += half * kWeights[i] * d / v * dz;
      }
    }
    return sum;
  }

  // Bisects until the two halves agree with the whole panel.
  Complex adapt(const Param& param, double a, double b, Complex whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const Complex left = panel(param, a, m);
    const Complex right = panel(param, m, b);
    if (std::abs(left + right - whole) <= tol) return left + right;
    // y'/y is smooth on the contour unless y vanishes on or right next to it,
    // possibly between every quadrature node.
    if (depth >= kMaxDepth) throw BoundaryZero{};
    // The floor stops roundoff in y'/y near a zero from driving endless bisection.
    const double sub = std::max(0.5 * tol, kToleranceFloor);
    return adapt(param, a, m, left, sub, depth + 1) + adapt(param, m, b, right, sub, depth + 1);
  }

  Complex integrate(const Param& param, int panels) {
    Complex total = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = static_cast<double>(p) / panels;
      const double b = static_cast<double>(p + 1) / panels;
      total += adapt(param, a, b, panel(param, a, b), kPanelTolerance, 0);
    }
    return total;
  }
};

Complex contour_integral(Integrator& in, const ConvexRegion& r) {
  Complex total = 0.0;
  if (r.kind == ConvexRegion::Kind::disk) {
    const double two_pi = 2.0 * std::numbers::pi;
    total = in.integrate(
        [&](double t) {
          const Complex e = std::polar(1.0, two_pi * t);
          return std::pair{r.center + r.size * e, Complex(0.0, two_pi * r.size) * e};
        },
        kInitialPanels);
  } else {
    const double h = 0.5 * r.size;
    const std::array<Complex, 4> corners = {r.center + Complex(-h, -h), r.center + Complex(h, -h),
                                            r.center + Complex(h, h), r.center + Complex(-h, h)};
    for (int s = 0; s < 4; ++s) {
      const Complex a = corners[s];
      const Complex b = corners[(s + 1) % 4];
      total += in.integrate([&](double t) { return std::pair{a + t * (b - a), b - a}; },
                            kInitialPanels / 4);
    }
  }
  return total / Complex(0.0, 2.0 * std::numbers::pi);
}

}  // namespace

ZeroCount count_zeros_report(const JetSource& y, const ConvexRegion& region) {
  ConvexRegion r = region;
  for (int dilations = 0; dilations <= kMaxDilations; ++dilations) {
    Integrator in{y};
    try {
      const Complex value = contour_integral(in, r);
      const double rounded = std::round(value.real());
      if (std::abs(value - Complex(rounded)) > 0.1) {
        throw ContourError("argument-principle integral " + std::to_string(value.real()) + "+" +
                           std::to_string(value.imag()) + "i is not near an integer");
      }
      return {static_cast<int>(rounded), value, in.evaluations, dilations};
    } catch (const BoundaryZero&) {
      r = r.dilated(kDilation);
    }
  }
  throw ContourError("zero on or next to the contour persists after " + std::to_string(kMaxDilations) +
                     " dilations");
}

int count_zeros(const JetSource& y, const ConvexRegion& region) {
  return count_zeros_report(y, region).count;
}

double disconjugacy_threshold(int k, double delta) {
  if (k < 1) throw DomainError("disconjugacy threshold needs k >= 1");
  if (!(delta > 0.0)) throw DomainError("disconjugacy threshold needs delta > 0");
  return std::tgamma(k + 1.0) / std::pow(delta, k);
}

DisconjugacyReport check_disconjugacy(const FunctionExpr& p0, int k, const ConvexRegion& region,
                                      int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("need at least one trial");
  DisconjugacyReport rep;
  rep.threshold = disconjugacy_threshold(k, region.diameter());

  constexpr int kSamples = 17;
  const double half = region.kind == ConvexRegion::Kind::disk ? region.size : 0.5 * region.size;
  for (int i = 0; i < kSamples; ++i) {
    for (int j = 0; j < kSamples; ++j) {
      const Complex z = region.center + half * Complex(-1.0 + 2.0 * i / (kSamples - 1),
                                                       -1.0 + 2.0 * j / (kSamples - 1));
      if (!region.contains(z)) continue;
      rep.sup_p0 = std::max(rep.sup_p0, std::abs(evaluate(p0, z)));
    }
  }
  rep.vacuous = rep.sup_p0 >= rep.threshold;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int t = 0; t < trials; ++t) {
    OdeState init(static_cast<std::size_t>(k));
    for (auto& c : init) c = Complex(normal(rng), normal(rng));
    OdeSolution sol(p0, k, region.center, std::move(init));
    const int n = count_zeros(sol.source(), region);
    rep.counts.push_back(n);
    rep.max_count = std::max(rep.max_count, n);
  }
  rep.pass = rep.max_count <= k - 1;
  return rep;
}

PoleCountBound pole_count_bound(int k, double m) {
  if (k < 2) throw DomainError("pole count bound needs k >= 2");
  PoleCountBound b;
  constexpr double kCap = 2.0;
  constexpr double kMaxCellsPerAxis = 4096;
  b.delta = m > 0.0 ? std::min(0.99 * std::pow(k * std::tgamma(k + 1.0) / m, 1.0 / k), kCap)
                    : kCap;
  if (b.delta >= kCap) {
    b.covering.cells.push_back(ConvexRegion::disk(0.0, 1.0));
  } else {
    const double side = b.delta / std::numbers::sqrt2;
    const double cells = std::ceil(2.0 / side);
    if (cells > kMaxCellsPerAxis) {
      throw DomainError("covering would need about " + std::to_string(cells * cells * 0.785) +
                        " cells; M is too large");
    }
    const int per_axis = static_cast<int>(cells);
    for (int i = 0; i < per_axis; ++i) {
      for (int j = 0; j < per_axis; ++j) {
        const double x0 = -1.0 + i * side;
        const double y0 = -1.0 + j * side;
        // Closest point of the closed square to the origin.
        const double cx = std::clamp(0.0, x0, x0 + side);
        const double cy = std::clamp(0.0, y0, y0 + side);
        if (cx * cx + cy * cy < 1.0) {
          b.covering.cells.push_back(
              ConvexRegion::square(Complex(x0 + 0.5 * side, y0 + 0.5 * side), side));
        }
      }
    }
  }
  b.covering.delta = b.delta;
  b.covering.count = static_cast<int>(b.covering.cells.size());
  b.n_tilde = b.covering.count;
  b.n = b.n_tilde * (k - 1);
  return b;
}

}  // namespace schwarzian
