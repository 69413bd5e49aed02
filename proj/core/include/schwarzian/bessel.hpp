#pragma once

#include "schwarzian/jet.hpp"

namespace schwarzian {

enum class BesselKind { J0, Y0 };

/// Largest |w| at which the J0/Y0 power series are composed with a jet.
inline constexpr double kBesselSeriesRadius = 12.0;

/// Largest real argument used by the extended-precision zero finder.
inline constexpr double kBesselZeroRadius = 40.0;

/// Euler's constant to 30 significant digits.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

/// J0 or Y0 composed with a jet argument, from the ascending power series in
/// (w/2)^2. Y0 needs a unit argument (log branch at the constant term).
Jet bessel_series(BesselKind kind, const Jet& arg);

/// Pointwise J0(w) / Y0(w).
Complex bessel_value(BesselKind kind, Complex w);

/// n-th positive real zero of J0 or Y0 (n >= 1), bracketed near the
/// asymptotic guess (n - 1/4)pi resp. (n - 3/4)pi and bisected to 1e-12.
double bessel_zero(BesselKind kind, int n);

const char* to_string(BesselKind kind);

}  // namespace schwarzian
