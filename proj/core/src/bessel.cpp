#include "schwarzian/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "schwarzian/errors.hpp"

namespace schwarzian {

namespace {

constexpr double kTermCutoff = 1e-18;

// Number of series terms in u = (w/2)^2 so that the next term falls below the
// cutoff relative to the largest one, plus headroom for the derivatives the
// jet carries.
int term_count(double abs_u, int jet_order) {
  double term = 1.0;
  double harmonic = 0.0;
  double largest = 1.0;
  int m = 0;
  for (; m < 400; ++m) {
    const double next = term * abs_u / ((m + 1.0) * (m + 1.0));
    harmonic += 1.0 / (m + 1.0);
    if (next * (1.0 + harmonic) < kTermCutoff * largest) break;
    term = next;
    largest = std::max(largest, term * (1.0 + harmonic));
  }
  return m + jet_order + 4;
}

Jet horner(const std::vector<double>& c, const Jet& u) {
  Jet r = Jet::constant(u.base_point(), c.back(), u.trunc_order());
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) r = r * u + Complex(*it);
  return r;
}

}  // namespace

const char* to_string(BesselKind kind) { return kind == BesselKind::J0 ? "J0" : "Y0"; }

Jet bessel_series(BesselKind kind, const Jet& arg) {
  if (arg.is_pole()) throw DomainError("Bessel series of a jet with a pole");
  const Complex w0 = arg[0];
  if (std::abs(w0) > kBesselSeriesRadius) {
    throw DomainError("Bessel argument |w| = " + std::to_string(std::abs(w0)) +
                      " beyond series radius " + std::to_string(kBesselSeriesRadius));
  }
  if (kind == BesselKind::Y0 && std::abs(w0) <= kSignificanceThreshold) {
    throw BranchError("Y0 at an argument with vanishing constant term");
  }

  const Jet half = arg * Complex(0.5);
  const Jet u = half * half;
  const int terms = term_count(std::abs(u[0]), arg.trunc_order());

  // J0 = sum (-1)^m / (m!)^2 u^m
  std::vector<double> cj(static_cast<std::size_t>(terms) + 1);
  cj[0] = 1.0;
  for (int m = 1; m <= terms; ++m) cj[m] = -cj[m - 1] / (static_cast<double>(m) * m);
  const Jet j0 = horner(cj, u);
  if (kind == BesselKind::J0) return j0;

  // Y0 = (2/pi)(log(w/2) + gamma) J0 + (2/pi) sum (-1)^(m+1) H_m / (m!)^2 u^m
  std::vector<double> cy(cj.size());
  double harmonic = 0.0;
  cy[0] = 0.0;
  for (int m = 1; m <= terms; ++m) {
    harmonic += 1.0 / m;
    cy[m] = -cj[m] * harmonic;
  }
  const Jet tail = horner(cy, u);
  const double two_over_pi = 2.0 / std::numbers::pi;
  return two_over_pi * ((log(half) + Complex(kEulerGamma)) * j0 + tail);
}

Complex bessel_value(BesselKind kind, Complex w) {
  return bessel_series(kind, Jet::constant(w, w, 0))[0];
}

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// Real-axis J0/Y0 in 50-digit arithmetic; the ascending series loses about
// log10(max term) digits to cancellation, which stays harmless up to
// kBesselZeroRadius.
Real bessel_real(BesselKind kind, double x) {
  const Real half = Real(x) / 2;
  const Real u = half * half;
  Real term = 1;
  Real j0 = 1;
  Real tail = 0;
  Real harmonic = 0;
  Real largest = 1;
  for (int m = 1; m < 1000; ++m) {
    term *= -u / (Real(m) * m);
    harmonic += Real(1) / m;
    j0 += term;
    tail -= term * harmonic;
    const Real size = abs(term) * (1 + harmonic);
    largest = std::max(largest, size);
    if (size < Real(1e-45) * largest) break;
  }
  if (kind == BesselKind::J0) return j0;
  const Real gamma("0.577215664901532860606512090082");
  const Real pi = boost::math::constants::pi<Real>();
  return 2 / pi * ((log(half) + gamma) * j0 + tail);
}

}  // namespace

double bessel_zero(BesselKind kind, int n) {
  if (n < 1) throw DomainError("Bessel zero index must be >= 1");
  const double guess = (n - (kind == BesselKind::J0 ? 0.25 : 0.75)) * std::numbers::pi;
  constexpr double kWindow = 1.0;
  if (guess + kWindow > kBesselZeroRadius) {
    throw DomainError("zero " + std::to_string(n) + " of " + to_string(kind) +
                      " lies outside the series validity range");
  }

  // Sign change closest to the guess on a fine scan of [guess-1, guess+1].
  constexpr double kScanStep = 0.02;
  double lo = 0.0, hi = 0.0, best = kWindow + 1.0;
  double x0 = std::max(guess - kWindow, 1e-3);
  Real f0 = bessel_real(kind, x0);
  for (double x1 = x0 + kScanStep; x1 <= guess + kWindow; x1 += kScanStep) {
    const Real f1 = bessel_real(kind, x1);
    if ((f0 < 0) != (f1 < 0)) {
      const double d = std::abs(0.5 * (x0 + x1) - guess);
      if (d < best) {
        best = d;
        lo = x0;
        hi = x1;
      }
    }
    x0 = x1;
    f0 = f1;
  }
  if (best > kWindow) {
    throw Error("could not bracket zero " + std::to_string(n) + " of " + to_string(kind));
  }

  Real flo = bessel_real(kind, lo);
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const Real fm = bessel_real(kind, mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace schwarzian
