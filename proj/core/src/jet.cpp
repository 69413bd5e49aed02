#include "schwarzian/jet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "schwarzian/errors.hpp"

namespace schwarzian {

namespace {

bool significant(Complex c) { return std::abs(c) > kSignificanceThreshold; }

// Convolution sums in the recurrences below cancel heavily for jets of
// rational functions; extended-precision accumulation keeps the higher
// coefficients near full double accuracy.
using Wide = std::complex<long double>;

Wide wide(Complex c) { return {c.real(), c.imag()}; }
Complex narrow(Wide w) {
  return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

// Jet normalized to its leading nonzero term: value = z^v (a_0 + a_1 z + ...),
// a_0 != 0, with a.size() - 1 coefficients of relative precision.
struct Normalized {
  int valuation;
  std::vector<Complex> a;
  int rel() const { return static_cast<int>(a.size()) - 1; }
};

Normalized normalize(const Jet& j) {
  const int v = j.valuation();
  Normalized n{v, {}};
  for (int p = v; p <= j.known_order(); ++p) n.a.push_back(j.coefficient(p));
  return n;
}

void require_same_base(const Jet& a, const Jet& b) {
  if (a.base_point() != b.base_point()) {
    throw BasePointMismatch("jets expanded at different base points");
  }
}

}  // namespace

Jet::Jet() : base_(0.0), lead_(0), coeffs_(1, Complex(0.0)) {}

Jet::Jet(Complex base, int lead, std::vector<Complex> coeffs)
    : base_(base), lead_(lead), coeffs_(std::move(coeffs)) {}

Jet Jet::constant(Complex base, Complex value, int order) {
  if (order < 0) throw OrderUnderflow("negative truncation order");
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex(0.0));
  c[0] = value;
  return Jet(base, 0, std::move(c));
}

Jet Jet::variable(Complex base, int order) {
  Jet j = constant(base, base, order);
  if (order >= 1) j.coeffs_[1] = 1.0;
  return j;
}

Jet Jet::zero(Complex base, int order) { return constant(base, 0.0, order); }

Jet Jet::from_coefficients(Complex base, int lead, std::vector<Complex> coeffs) {
  if (coeffs.empty()) throw OrderUnderflow("jet without coefficients");
  const int known = lead + static_cast<int>(coeffs.size()) - 1;
  auto first = std::find_if(coeffs.begin(), coeffs.end(), significant);
  if (first == coeffs.end()) {
    if (known < 0) {
      throw OrderUnderflow("all significant coefficients truncated away (known through order " +
                           std::to_string(known) + ")");
    }
    return zero(base, known);
  }
  const int v = lead + static_cast<int>(first - coeffs.begin());
  if (v < 0) return Jet(base, v, std::vector<Complex>(first, coeffs.end()));

  // Analytic: store from power 0, padding or dropping as needed.
  std::vector<Complex> c(static_cast<std::size_t>(known) + 1, Complex(0.0));
  for (int p = std::max(lead, 0); p <= known; ++p) c[p] = coeffs[p - lead];
  return Jet(base, 0, std::move(c));
}

Complex Jet::coefficient(int power) const {
  if (power > known_order()) {
    throw OrderUnderflow("coefficient of order " + std::to_string(power) +
                         " beyond known order " + std::to_string(known_order()));
  }
  if (power < lead_) return 0.0;
  return coeffs_[power - lead_];
}

bool Jet::is_zero() const noexcept {
  return std::none_of(coeffs_.begin(), coeffs_.end(), significant);
}

int Jet::valuation() const noexcept {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (significant(coeffs_[i])) return lead_ + static_cast<int>(i);
  }
  return known_order() + 1;
}

Complex Jet::value() const {
  if (lead_ < 0) throw DomainError("value requested at a pole");
  return coeffs_[0];
}

Jet Jet::truncated(int max_power) const {
  if (max_power >= known_order()) return *this;
  if (max_power < lead_) {
    return from_coefficients(base_, std::min(max_power, 0), {Complex(0.0)});
  }
  return from_coefficients(
      base_, lead_,
      std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + (max_power - lead_ + 1)));
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Jet& Jet::operator+=(const Jet& b) {
  require_same_base(*this, b);
  const int start = std::min(lead_, b.lead_);
  const int known = std::min(known_order(), b.known_order());
  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(known - start) + 1);
  for (int p = start; p <= known; ++p) c.push_back(coefficient(p) + b.coefficient(p));
  return *this = from_coefficients(base_, start, std::move(c));
}

Jet& Jet::operator-=(const Jet& b) { return *this += -b; }

Jet& Jet::operator*=(const Jet& b) {
  require_same_base(*this, b);
  const bool za = is_zero();
  const bool zb = b.is_zero();
  if (za || zb) {
    // Product of something O(z^(K+1)) with something of known valuation.
    const int known = (za && zb) ? known_order() + b.known_order() + 1
                      : za       ? known_order() + b.valuation()
                                 : b.known_order() + valuation();
    return *this = from_coefficients(base_, std::min(known, 0),
                                     std::vector<Complex>(
                                         static_cast<std::size_t>(known - std::min(known, 0)) + 1,
                                         Complex(0.0)));
  }
  const Normalized x = normalize(*this);
  const Normalized y = normalize(b);
  const int r = std::min(x.rel(), y.rel());
  std::vector<Complex> c(static_cast<std::size_t>(r) + 1);
  for (int n = 0; n <= r; ++n) {
    Wide s = 0.0L;
    for (int i = 0; i <= n; ++i) s += wide(x.a[i]) * wide(y.a[n - i]);
    c[n] = narrow(s);
  }
  return *this = from_coefficients(base_, x.valuation + y.valuation, std::move(c));
}

Jet& Jet::operator/=(const Jet& b) {
  require_same_base(*this, b);
  if (b.is_zero()) throw DivisionByZeroJet("division by an identically zero jet");
  const int vb = b.valuation();
  if (is_zero()) {
    const int known = known_order() - vb;
    return *this = from_coefficients(base_, std::min(known, 0),
                                     std::vector<Complex>(
                                         static_cast<std::size_t>(known - std::min(known, 0)) + 1,
                                         Complex(0.0)));
  }
  const Normalized x = normalize(*this);
  const Normalized y = normalize(b);
  const int r = std::min(x.rel(), y.rel());
  std::vector<Wide> q(static_cast<std::size_t>(r) + 1);
  const Wide y0 = wide(y.a[0]);
  for (int n = 0; n <= r; ++n) {
    Wide s = wide(x.a[n]);
    for (int i = 1; i <= n; ++i) s -= wide(y.a[i]) * q[n - i];
    q[n] = s / y0;
  }
  std::vector<Complex> qd(q.size());
  std::transform(q.begin(), q.end(), qd.begin(), narrow);
  return *this = from_coefficients(base_, x.valuation - y.valuation, std::move(qd));
}

Jet& Jet::operator*=(Complex s) {
  if (s == Complex(0.0)) return *this = zero(base_, std::max(known_order(), 0));
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Jet& Jet::operator+=(Complex s) {
  if (known_order() < 0) {
    throw OrderUnderflow("constant added to a jet known only below order 0");
  }
  std::vector<Complex> c(coeffs_);
  c[-lead_] += s;
  return *this = from_coefficients(base_, lead_, std::move(c));
}

Jet arith(ArithOp op, const Jet& a, const Jet& b) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw Error("unknown arithmetic operation");
}

namespace {

void require_analytic(const Jet& a, const char* what) {
  if (a.is_pole()) throw DomainError(std::string(what) + " of a jet with a pole");
}

void require_unit(const Jet& a, const char* what) {
  if (a.is_pole() || std::abs(a[0]) <= kSignificanceThreshold) {
    throw BranchError(std::string(what) + " needs a unit jet (nonzero constant term, no pole)");
  }
}

}  // namespace

Jet exp(const Jet& a) {
  require_analytic(a, "exp");
  const int t = a.trunc_order();
  std::vector<Complex> b(static_cast<std::size_t>(t) + 1);
  b[0] = std::exp(a[0]);
  for (int n = 1; n <= t; ++n) {
    Complex s = 0.0;
    for (int j = 1; j <= n; ++j) s += static_cast<double>(j) * a[j] * b[n - j];
    b[n] = s / static_cast<double>(n);
  }
  return Jet::from_coefficients(a.base_point(), 0, std::move(b));
}

Jet log(const Jet& a) {
  require_unit(a, "log");
  const int t = a.trunc_order();
  std::vector<Complex> l(static_cast<std::size_t>(t) + 1);
  l[0] = std::log(a[0]);
  for (int n = 1; n <= t; ++n) {
    Complex s = 0.0;
    for (int j = 1; j < n; ++j) s += static_cast<double>(j) * l[j] * a[n - j];
    l[n] = (a[n] - s / static_cast<double>(n)) / a[0];
  }
  return Jet::from_coefficients(a.base_point(), 0, std::move(l));
}

Jet pow_rational(const Jet& a, int p, int q) {
  if (q == 0) throw DomainError("pow_rational with zero denominator");
  require_unit(a, "pow_rational");
  const double r = static_cast<double>(p) / static_cast<double>(q);
  const int t = a.trunc_order();
  std::vector<Complex> b(static_cast<std::size_t>(t) + 1);
  b[0] = std::exp(r * std::log(a[0]));
  // J.C.P. Miller recurrence for a^r.
  for (int n = 1; n <= t; ++n) {
    Complex s = 0.0;
    for (int j = 1; j <= n; ++j) s += ((r + 1.0) * j - n) * a[j] * b[n - j];
    b[n] = s / (static_cast<double>(n) * a[0]);
  }
  return Jet::from_coefficients(a.base_point(), 0, std::move(b));
}

Jet int_pow(const Jet& a, int n) {
  if (n == 0) throw DomainError("zero integer exponent");
  if (n < 0) {
    return Jet::constant(a.base_point(), 1.0, std::max(a.trunc_order(), 0)) /
           int_pow(a, -n);
  }
  Jet result;
  bool have = false;
  Jet base = a;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1u) {
      result = have ? result * base : base;
      have = true;
    }
    if (e > 1) base = base * base;
  }
  return result;
}

Jet transcend(Transcendental fn, const Jet& a, int p, int q) {
  switch (fn) {
    case Transcendental::exp: return exp(a);
    case Transcendental::log: return log(a);
    case Transcendental::pow_rational: return pow_rational(a, p, q);
  }
  throw Error("unknown transcendental function");
}

Jet derive(const Jet& a) {
  const int lead = a.lead_order();
  const int t = a.trunc_order();
  if (lead < 0) {
    std::vector<Complex> c(static_cast<std::size_t>(t) + 1);
    for (int i = 0; i <= t; ++i) c[i] = static_cast<double>(lead + i) * a[i];
    return Jet::from_coefficients(a.base_point(), lead - 1, std::move(c));
  }
  if (t < 1) throw OrderUnderflow("derivative of a jet with truncation order 0");
  std::vector<Complex> c(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) c[i] = static_cast<double>(i + 1) * a[i + 1];
  return Jet::from_coefficients(a.base_point(), 0, std::move(c));
}

Complex nth_value(const Jet& a, int m) {
  if (a.is_pole()) throw DomainError("nth_value of a Laurent jet");
  if (m < 0 || m > a.trunc_order()) {
    throw OrderUnderflow("derivative order " + std::to_string(m) + " outside jet of order " +
                         std::to_string(a.trunc_order()));
  }
  double factorial = 1.0;
  for (int i = 2; i <= m; ++i) factorial *= i;
  return factorial * a[m];
}

double radius_estimate(const Jet& a) {
  if (a.is_pole()) throw DomainError("radius estimate of a Laurent jet");
  const int t = a.trunc_order();
  double rho = std::numeric_limits<double>::infinity();
  for (int i = std::max(t / 2, 1); i <= t; ++i) {
    const double c = std::abs(a[i]);
    if (c > kSignificanceThreshold) rho = std::min(rho, std::pow(c, -1.0 / i));
  }
  return rho;
}

}  // namespace schwarzian
