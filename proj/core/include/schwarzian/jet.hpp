#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace schwarzian {

using Complex = std::complex<double>;

/// Coefficients with magnitude at or below this are treated as zero when a
/// computed jet is normalized.
inline constexpr double kSignificanceThreshold = 1e-300;

/// Truncated Laurent/Taylor expansion at a complex base point.
///
/// A jet stores c_0..c_T with c_i the coefficient of (z - z0)^(lead + i).
/// lead is 0 for analytic jets (whose leading coefficients may vanish) and
/// negative for poles, in which case c_0 != 0. The highest power carried,
/// lead + T, is the jet's known order; everything beyond it is unknown.
///
/// Arithmetic tracks precision relative to the leading nonzero term, so a
/// product or quotient is known exactly as far as both operands allow and
/// never further.
class Jet {
 public:
  /// The zero jet at 0 with T = 0.
  Jet();

  static Jet constant(Complex base, Complex value, int order);
  /// The identity function z at the base point.
  static Jet variable(Complex base, int order);
  static Jet zero(Complex base, int order);
  /// Builds a jet from coefficients of powers lead, lead+1, ...; leading
  /// coefficients below the significance threshold are stripped.
  static Jet from_coefficients(Complex base, int lead, std::vector<Complex> coeffs);

  Complex base_point() const noexcept { return base_; }
  int lead_order() const noexcept { return lead_; }
  int trunc_order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  int known_order() const noexcept { return lead_ + trunc_order(); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

  /// Coefficient of (z - z0)^power. Zero below the lead order; throws
  /// OrderUnderflow above the known order.
  Complex coefficient(int power) const;

  bool is_zero() const noexcept;
  bool is_pole() const noexcept { return lead_ < 0; }

  /// Lowest power with a nonzero coefficient; known_order() + 1 for the zero jet.
  int valuation() const noexcept;

  /// f(z0). Throws DomainError at a pole.
  Complex value() const;

  /// Drops every coefficient above the given power.
  Jet truncated(int max_power) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator/=(const Jet& other);
  Jet& operator*=(Complex s);
  Jet& operator+=(Complex s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Complex s) { return a *= (1.0 / s); }
  friend Jet operator+(Jet a, Complex s) { return a += s; }
  friend Jet operator+(Complex s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Complex s) { return a += -s; }
  friend Jet operator-(Complex s, const Jet& a) { return (-a) += s; }

 private:
  Jet(Complex base, int lead, std::vector<Complex> coeffs);

  Complex base_;
  int lead_;
  std::vector<Complex> coeffs_;
};

enum class ArithOp { add, sub, mul, div };

Jet arith(ArithOp op, const Jet& a, const Jet& b);

Jet exp(const Jet& a);
/// Principal branch at the constant coefficient; needs a unit jet.
Jet log(const Jet& a);
/// a^(p/q), principal branch at the constant coefficient.
Jet pow_rational(const Jet& a, int p, int q);
/// a^n for nonzero integer n; works on Laurent jets.
Jet int_pow(const Jet& a, int n);

enum class Transcendental { exp, log, pow_rational };

/// Dispatch form of exp / log / pow_rational; p and q are used only for
/// pow_rational.
Jet transcend(Transcendental fn, const Jet& a, int p = 1, int q = 1);

/// Formal d/dz. Analytic jets lose one order; Laurent jets shift lead down.
Jet derive(const Jet& a);

/// f^(m)(z0) = m! c_m of an analytic jet.
Complex nth_value(const Jet& a, int m);

/// Root-test guess at the radius of convergence, min |c_i|^(-1/i) over the
/// upper half of the analytic jet's coefficients; infinity when they all
/// vanish.
double radius_estimate(const Jet& a);

/// Anything that can produce a jet of a fixed function at a requested base
/// point and truncation order.
using JetSource = std::function<Jet(Complex z0, int order)>;

}  // namespace schwarzian
