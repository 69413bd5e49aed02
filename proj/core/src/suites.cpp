#include "schwarzian/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "schwarzian/bessel.hpp"
#include "schwarzian/disconjugacy.hpp"
#include "schwarzian/errors.hpp"
#include "schwarzian/normality.hpp"
#include "schwarzian/ode.hpp"
#include "schwarzian/ode_link.hpp"
#include "schwarzian/partitions.hpp"
#include "schwarzian/schwarzian.hpp"

namespace schwarzian {

Complex random_point(std::mt19937_64& rng, Complex center, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return center + std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

namespace {

Complex random_parameter(std::mt19937_64& rng) {
  for (;;) {
    const Complex p = random_point(rng, 0.0, 1.0);
    if (std::abs(p) >= 0.3) return p;
  }
}

std::string describe(const ParamMap& params) {
  std::ostringstream os;
  os.precision(4);
  bool first = true;
  for (const auto& [name, v] : params) {
    os << (first ? "" : ",") << name << "=";
    if (v.imag() == 0.0) {
      os << v.real();
    } else {
      os << "(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i)";
    }
    first = false;
  }
  return os.str();
}

// f analytic at z with f' != 0 and no singularity of f''/f' nearby.
bool usable_point(const FunctionExpr& f, Complex z) {
  try {
    const Jet j = jet_at(f, z, 18);
    if (j.is_pole() || std::abs(j[1]) < 1e-3) return false;
    const Jet g = derive(derive(j)) / derive(j);
    return !g.is_pole() && radius_estimate(g) >= kMinSampleRadius;
  } catch (const Error&) {
    return false;
  }
}

class Recorder {
 public:
  Recorder(std::string name, double tolerance) {
    r_.name = std::move(name);
    r_.tolerance = tolerance;
  }

  void add(SuiteRow row) {
    const bool ok = row.error <= r_.tolerance;
    add(std::move(row), ok);
  }

  void add(SuiteRow row, bool ok) {
    row.ok = ok && std::isfinite(row.error);
    ++r_.checks;
    if (!row.ok) ++r_.failures;
    if (std::isfinite(row.error)) {
      r_.max_error = std::max(r_.max_error, row.error);
    } else {
      r_.max_error = row.error;
    }
    r_.rows.push_back(std::move(row));
  }

  void fail(std::string label, Complex z, const std::string& why) {
    ++r_.checks;
    ++r_.failures;
    r_.notes.push_back(label + ": " + why);
    r_.rows.push_back({std::move(label), z, 0.0, 0.0, std::numeric_limits<double>::infinity(), false});
    r_.max_error = std::numeric_limits<double>::infinity();
  }

  void note(std::string text) { r_.notes.push_back(std::move(text)); }

  SuiteResult finish(bool extra_ok = true) {
    r_.pass = extra_ok && r_.checks > 0 && r_.failures == 0;
    return std::move(r_);
  }

 private:
  SuiteResult r_;
};

double relative(Complex value, Complex reference) {
  return std::abs(value - reference) / std::abs(reference);
}

double mixed(Complex value, Complex reference) {
  return std::abs(value - reference) / (1.0 + std::abs(reference));
}

std::vector<int> k_range(const SuiteOptions& o, int lo, int hi) {
  if (o.k) {
    if (*o.k < lo || *o.k > hi) {
      throw Error("k = " + std::to_string(*o.k) + " outside this suite's range " +
                  std::to_string(lo) + ".." + std::to_string(hi));
    }
    return {*o.k};
  }
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

std::string k_label(const std::string& prefix, int k) { return prefix + " k=" + std::to_string(k); }

struct Context {
  const SuiteOptions& options;
  double tolerance;
  int trials;
};

SuiteResult faa_di_bruno(const Context& c) {
  Recorder rec("faa-di-bruno", c.tolerance);
  rec.note("error = |recursive - closed_form| / (1 + |closed_form|)");
  for (const int k : k_range(c.options, 2, 6)) {
    std::mt19937_64 rng(c.options.seed + static_cast<std::uint64_t>(k));
    for (int t = 0; t < c.trials; ++t) {
      const RandomInstance inst = random_instance(rng);
      const std::string label = k_label(inst.entry + "(" + describe(inst.params) + ")", k);
      try {
        const JetSource f = as_source(inst.f);
        const Complex a = schwarzian_recursive(f, k, inst.z).at_base();
        const Complex b = schwarzian_closed_form(f, k, inst.z).at_base();
        rec.add({label, inst.z, a, b, mixed(a, b)});
      } catch (const Error& e) {
        rec.fail(label, inst.z, e.what());
      }
    }
  }
  return rec.finish();
}

SuiteResult classical(const Context& c) {
  Recorder rec("classical", c.tolerance);
  rec.note("reference f'''/f' - (3/2)(f''/f')^2; error relative to 1 + |reference|");
  std::mt19937_64 rng(c.options.seed + 2);
  for (int t = 0; t < c.trials; ++t) {
    const RandomInstance inst = random_instance(rng);
    const std::string label = inst.entry + "(" + describe(inst.params) + ")";
    try {
      const Complex s = schwarzian_recursive(as_source(inst.f), 2, inst.z).at_base();
      const Jet j = jet_at(inst.f, inst.z, 3);
      const Complex d1 = nth_value(j, 1), d2 = nth_value(j, 2), d3 = nth_value(j, 3);
      const Complex ref = d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
      rec.add({label, inst.z, s, ref, mixed(s, ref)});
    } catch (const Error& e) {
      rec.fail(label, inst.z, e.what());
    }
  }
  return rec.finish();
}

SuiteResult rational_pole(const Context& c) {
  Recorder rec("rational-pole", c.tolerance);
  std::mt19937_64 rng(c.options.seed);
  const CatalogEntry& entry = catalog_entry("rational_pole");
  for (int n = 2; n <= 6; ++n) {
    const JetSource f = as_source(entry.instantiate({{"n", Complex(n)}}));
    for (int t = 0; t < c.trials; ++t) {
      Complex z;
      do z = random_point(rng, 0.0, 1.0);
      while (std::abs(z) < 0.1);
      const std::string label = "n=" + std::to_string(n);
      const Complex ref = (1.0 - n * n) / (2.0 * z * z);
      try {
        const Complex s = schwarzian_recursive(f, 2, z).at_base();
        rec.add({label, z, s, ref, relative(s, ref)});
      } catch (const Error& e) {
        rec.fail(label, z, e.what());
      }
    }
  }
  return rec.finish();
}

SuiteResult hayman(const Context& c) {
  Recorder rec("hayman", c.tolerance);
  std::mt19937_64 rng(c.options.seed);
  const CatalogEntry& entry = catalog_entry("hayman");
  for (const Complex cc : {Complex(1.0), Complex(2.0), Complex(1.0, 1.0)}) {
    const JetSource f = as_source(entry.instantiate({{"c", cc}}));
    for (int t = 0; t < c.trials; ++t) {
      const Complex z = random_point(rng, 0.0, 1.0);
      const std::string label = "c=" + describe({{"c", cc}}).substr(2);
      const Complex ref = -std::exp(2.0 * cc * z) / 2.0 - cc * cc / 2.0;
      try {
        const Complex s = schwarzian_recursive(f, 2, z).at_base();
        rec.add({label, z, s, ref, relative(s, ref)});
      } catch (const Error& e) {
        rec.fail(label, z, e.what());
      }
    }
  }
  return rec.finish();
}

SuiteResult bessel_counterexample(const Context& c) {
  Recorder rec("bessel-counterexample", c.tolerance);
  rec.note("residual rows: |f'' + (e^z/4) f| / (|f''| + |(e^z/4) f|)");
  std::mt19937_64 rng(c.options.seed);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(-1.0, 1.0);
  const FunctionExpr f1 = catalog_entry("bessel_j").instantiate();
  const FunctionExpr f2 = catalog_entry("bessel_y").instantiate();
  const JetSource f = as_source(catalog_entry("bessel_quotient").instantiate());
  constexpr double kAwayFromZeros = 0.05;
  for (int t = 0; t < c.trials;) {
    const Complex z(re(rng), im(rng));
    const Complex w = std::exp(z / 2.0);
    if (std::abs(bessel_value(BesselKind::J0, w)) < kAwayFromZeros ||
        std::abs(bessel_value(BesselKind::Y0, w)) < kAwayFromZeros) {
      continue;
    }
    ++t;
    const Complex ref = std::exp(z) / 2.0;
    try {
      const Complex s = schwarzian_recursive(f, 2, z).at_base();
      rec.add({"S_2(J0/Y0)", z, s, ref, relative(s, ref)});
    } catch (const Error& e) {
      rec.fail("S_2(J0/Y0)", z, e.what());
    }
    for (const auto& [name, fi] : {std::pair{"J0 residual", f1}, std::pair{"Y0 residual", f2}}) {
      try {
        const Jet j = jet_at(fi, z, 2);
        const Complex d2 = nth_value(j, 2);
        const Complex qf = std::exp(z) / 4.0 * j[0];
        const double err = std::abs(d2 + qf) / (std::abs(d2) + std::abs(qf) + kSignificanceThreshold);
        rec.add({name, z, d2, -qf, err});
      } catch (const Error& e) {
        rec.fail(name, z, e.what());
      }
    }
  }
  return rec.finish();
}

SuiteResult bessel_zeros(const Context& c) {
  Recorder rec("bessel-zeros", c.tolerance);
  rec.note("error = |zero - asymptotic| (absolute)");
  for (int n = 5; n <= 8; ++n) {
    for (const BesselKind kind : {BesselKind::J0, BesselKind::Y0}) {
      const std::string label = std::string(kind == BesselKind::J0 ? "j" : "y") + "_0," +
                                std::to_string(n);
      const double ref = (n - (kind == BesselKind::J0 ? 0.25 : 0.75)) * std::numbers::pi;
      try {
        const double x = bessel_zero(kind, n);
        rec.add({label, Complex(n), x, ref, std::abs(x - ref)});
      } catch (const Error& e) {
        rec.fail(label, Complex(n), e.what());
      }
    }
  }
  return rec.finish();
}

std::vector<Complex> ring_grid(double inner, double outer, int rings, int per_ring) {
  std::vector<Complex> g;
  for (int r = 0; r < rings; ++r) {
    const double rad = rings == 1 ? outer : inner + (outer - inner) * r / (rings - 1);
    for (int i = 0; i < per_ring; ++i) {
      g.push_back(std::polar(rad, 2.0 * std::numbers::pi * (i + 0.5 * r) / per_ring));
    }
  }
  return g;
}

SuiteResult pole_order(const Context& c) {
  Recorder rec("pole-order", c.tolerance);
  rec.note("pole rows are exact; null rows show max|S_k| / (1 + max|g|^k)");
  const JetSource square = as_source(parse("z^2"));
  for (const int k : k_range(c.options, 2, 6)) {
    try {
      const int order = pole_order_at(square, k, 0.0);
      rec.add({k_label("pole of S_k(z^2) at 0", k), 0.0, Complex(order), Complex(k),
               std::abs(static_cast<double>(order - k))},
              order == k);
    } catch (const Error& e) {
      rec.fail(k_label("pole of S_k(z^2) at 0", k), 0.0, e.what());
    }
  }
  const std::vector<Complex> grid = ring_grid(0.3, 1.0, 4, 8);
  const CatalogEntry& gn = catalog_entry("g_n");
  for (int k = 2; k <= 5; ++k) {
    if (c.options.k && *c.options.k != k) continue;
    for (const Complex n : {Complex(1.0), Complex(2.0), Complex(0.5, 0.5)}) {
      const std::string label = k_label("S_k(g_n) n=" + describe({{"n", n}}).substr(2), k);
      try {
        const NullCheck nc =
            schwarzian_null_check(as_source(gn.instantiate({{"k", Complex(k)}, {"n", n}})), k, grid);
        const double ratio = nc.max_abs_schwarzian / (1.0 + nc.max_abs_g_pow_k);
        rec.add({label, 0.0, nc.max_abs_schwarzian, 0.0, ratio}, nc.is_null && ratio <= c.tolerance);
      } catch (const Error& e) {
        rec.fail(label, 0.0, e.what());
      }
    }
  }
  return rec.finish();
}

SuiteResult ode_link(const Context& c) {
  Recorder rec("ode-link", c.tolerance);
  rec.note("error = max(residual, mismatch); value h^(k), reference -p0 h");
  for (const int k : k_range(c.options, 2, 5)) {
    std::mt19937_64 rng(c.options.seed + 100 + static_cast<std::uint64_t>(k));
    for (int t = 0; t < c.trials; ++t) {
      const RandomInstance inst = random_instance(rng);
      const std::string label = k_label(inst.entry + "(" + describe(inst.params) + ")", k);
      try {
        const OdeLinkReport r = verify_link(as_source(inst.f), k, inst.z);
        rec.add({label, inst.z, r.h_k_value, -r.p0_value * r.h_jet[0],
                 std::max(r.residual, r.mismatch)});
      } catch (const Error& e) {
        rec.fail(label, inst.z, e.what());
      }
    }
  }
  return rec.finish();
}

SuiteResult disconjugacy(const Context& c) {
  Recorder rec("disconjugacy", c.tolerance);
  rec.note("cell rows: value = max zero count over the trials, reference = k-1");
  constexpr double kDelta = 0.5;
  constexpr int kCells = 10;
  std::mt19937_64 rng(c.options.seed);
  for (const int k : k_range(c.options, 2, 3)) {
    const double threshold = disconjugacy_threshold(k, kDelta);
    const FunctionExpr p0 = FunctionExpr::constant(0.9 * threshold);
    for (int cell = 0; cell < kCells; ++cell) {
      const Complex center = random_point(rng, 0.0, 1.0 - kDelta / 2.0);
      const ConvexRegion region = cell % 2 == 0
                                      ? ConvexRegion::disk(center, kDelta / 2.0)
                                      : ConvexRegion::square(center, kDelta / std::numbers::sqrt2);
      const std::string label =
          k_label(std::string(cell % 2 == 0 ? "disk" : "square") + " cell " + std::to_string(cell), k);
      try {
        const DisconjugacyReport r = check_disconjugacy(
            p0, k, region, c.trials, c.options.seed * 1000 + static_cast<std::uint64_t>(10 * k + cell));
        const double excess = std::max(0, r.max_count - (k - 1));
        rec.add({label, center, Complex(r.max_count), Complex(k - 1), excess}, r.pass && !r.vacuous);
      } catch (const Error& e) {
        rec.fail(label, center, e.what());
      }
    }
  }

  // Closed-form sine solutions of y'' + y = 0.
  const FunctionExpr one = FunctionExpr::constant(1.0);
  const double half_pi = std::numbers::pi / 2.0;
  const std::array<std::vector<Complex>, 3> paths = {
      std::vector<Complex>{0.0, half_pi},
      std::vector<Complex>{0.0, Complex(1.0, 1.0), Complex(2.0, 0.0)},
      std::vector<Complex>{0.0, Complex(0.0, -1.5), Complex(1.5, -1.5)}};
  for (const auto& path : paths) {
    try {
      const OdeTrajectory tr = integrate(one, 2, {0.0, 1.0}, path);
      const Complex end = tr.path.back();
      const Complex ref = std::sin(end);
      rec.add({"sine y", end, tr.states.back()[0], ref, mixed(tr.states.back()[0], ref)});
      const Complex dref = std::cos(end);
      rec.add({"sine y'", end, tr.states.back()[1], dref, mixed(tr.states.back()[1], dref)});
    } catch (const Error& e) {
      rec.fail("sine", path.back(), e.what());
    }
  }
  return rec.finish();
}

SuiteResult grahl(const Context& c) {
  Recorder rec("grahl", c.tolerance);
  rec.note("value = number of middle terms, error = number of violated conditions (exact)");
  for (const int k : k_range(c.options, 2, 12)) {
    const std::string label = k_label("grahl", k);
    try {
      const GrahlDecomposition d = grahl_decompose(k);
      int violations = 0;
      for (const auto& t : d.terms) {
        // Recheck without grahl_condition_holds.
        int omega = 0;
        for (const int w : t.omegas) omega += w;
        const bool eq = (k - 1) * omega + d.ell * t.s_mu == d.ell * k;
        if (!eq || t.s_mu < 2 || t.s_mu > k - 1 || omega < 1) ++violations;
      }
      const BigInt k_pow = pow(BigInt(k), static_cast<unsigned>(k - 1));
      const bool extremal =
          d.ell == k - 1 && d.leading == make_rational(k % 2 == 0 ? -1 : 1, k_pow);
      if (!extremal) ++violations;
      rec.add({label, Complex(k), Complex(static_cast<double>(d.terms.size())), 0.0,
               static_cast<double>(violations)});
    } catch (const Error& e) {
      rec.fail(label, Complex(k), e.what());
    }
  }
  return rec.finish();
}

SuiteResult corollary(const Context& c) {
  Recorder rec("corollary", c.tolerance);
  rec.note("omission rows: value = min |S_k| on the grid, must exceed 1e-12");
  const CatalogEntry& entry = catalog_entry("exp_affine");
  const std::vector<Complex> grid = ring_grid(0.2, 1.0, 3, 8);
  for (const int k : k_range(c.options, 2, 5)) {
    std::mt19937_64 rng(c.options.seed + 200 + static_cast<std::uint64_t>(k));
    for (int t = 0; t < c.trials; ++t) {
      const Complex a = 1.5 * random_parameter(rng);
      const Complex b = 1.5 * random_parameter(rng);
      const Complex cc = random_point(rng, 0.0, 2.0);
      const ParamMap params = {{"a", a}, {"b", b}, {"c", cc}};
      const std::string label = k_label("exp_affine(" + describe(params) + ")", k);
      const JetSource f = as_source(entry.instantiate(params));
      const Complex ref = (k % 2 == 0 ? -1.0 : 1.0) / std::pow(k, k - 1) * std::pow(b, k);
      for (const Complex z : grid) {
        try {
          const Complex s = schwarzian_recursive(f, k, z).at_base();
          rec.add({label, z, s, ref, relative(s, ref)});
        } catch (const Error& e) {
          rec.fail(label, z, e.what());
        }
      }
      try {
        const OmissionReport o = omitted_function_check(f, k, FunctionExpr::constant(0.0), grid);
        rec.add({label + " omits 0", o.argmin, o.min_gap, std::abs(ref), 0.0}, o.omits_on_grid);
      } catch (const Error& e) {
        rec.fail(label + " omits 0", 0.0, e.what());
      }
    }
  }
  return rec.finish();
}

SuiteResult marty(const Context& c) {
  Recorder rec("marty", c.tolerance);
  rec.note("error = lhs / rhs, strict inequality requires error < 1; degenerate points skipped");
  std::mt19937_64 rng(c.options.seed);
  int degenerate = 0;
  int skipped = 0;
  int pairs = 0;
  const auto& entries = catalog();
  std::vector<JetSource> sources;
  for (const auto& entry : entries) sources.push_back(as_source(entry.instantiate()));
  // Round-robin over the catalog until enough non-degenerate pairs exist.
  for (int attempt = 0; pairs < c.trials && attempt < 4 * c.trials; ++attempt) {
    const std::size_t e = static_cast<std::size_t>(attempt) % entries.size();
    const Complex z = random_point(rng, 0.0, 1.0);
    try {
      const MartyCheck m = marty_inequality_check(sources[e], z);
      if (m.degenerate) {
        ++degenerate;
        continue;
      }
      ++pairs;
      rec.add({entries[e].name, z, m.lhs, m.rhs, m.lhs / m.rhs}, m.holds);
    } catch (const Error&) {
      ++skipped;
    }
  }
  rec.note(std::to_string(pairs) + " point-function pairs, " + std::to_string(degenerate) +
           " degenerate, " + std::to_string(skipped) + " without a value");
  return rec.finish(pairs >= c.trials);
}

using SuiteFn = SuiteResult (*)(const Context&);

struct Registered {
  SuiteInfo info;
  SuiteFn fn;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r = {
      {{"faa-di-bruno", "recursive vs closed-form S_k, k = 2..6, random catalog instances", 1e-9,
        50},
       faa_di_bruno},
      {{"classical", "S_2 vs f'''/f' - (3/2)(f''/f')^2 on random catalog instances", 1e-10, 50},
       classical},
      {{"rational-pole", "S_2(1/((2z)^n - 1)) = (1-n^2)/(2z^2), n = 2..6", 1e-9, 20},
       rational_pole},
      {{"hayman", "S_2(exp(exp(cz)/c)) = -exp(2cz)/2 - c^2/2, c in {1, 2, 1+i}", 1e-9, 20},
       hayman},
      {{"bessel-counterexample", "S_2(J0(e^(z/2))/Y0(e^(z/2))) = e^z/2 and the Bessel ODE", 1e-8,
        10},
       bessel_counterexample},
      {{"bessel-zeros", "zeros of J0, Y0 near (n - 1/4)pi, (n - 3/4)pi, n = 5..8", 0.05, 0},
       bessel_zeros},
      {{"pole-order", "pole order k of S_k(z^2) at 0; S_k(g_n) = 0", 1e-9, 0}, pole_order},
      {{"ode-link", "h = (f')^(-1/k) solves h^(k) + (S_k/k) h = 0, k = 2..5", 1e-9, 50},
       ode_link},
      {{"disconjugacy", "at most k-1 zeros when |p0| < k!/delta^k; sine solutions", 1e-9, 25},
       disconjugacy},
      {{"grahl", "middle terms of S_k satisfy the weight conditions, k = 2..12", 0.0, 0}, grahl},
      {{"corollary", "S_k(a e^(bz) + c) is the constant b^k (-1)^(k+1)/k^(k-1), never 0", 1e-10,
        10},
       corollary},
      {{"marty", "|f''|/(1+|f'|^2) < 2|f''/f'| across the catalog", 1.0, 1000}, marty},
  };
  return r;
}

}  // namespace

RandomInstance random_instance(std::mt19937_64& rng) {
  const auto& entries = catalog();
  std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
  std::uniform_int_distribution<int> small(2, 5);
  for (;;) {
    const CatalogEntry& e = entries[pick(rng)];
    ParamMap params;
    for (const auto& p : e.params) {
      params[p.name] = p.integer ? Complex(small(rng)) : random_parameter(rng);
    }
    FunctionExpr f = e.instantiate(params);
    for (int attempt = 0; attempt < 20; ++attempt) {
      const Complex z = random_point(rng, 0.0, 1.0);
      if (usable_point(f, z)) return {e.name, std::move(params), std::move(f), z};
    }
  }
}

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> v;
    for (const auto& r : registry()) v.push_back(r.info);
    return v;
  }();
  return infos;
}

const SuiteInfo& suite_info(std::string_view name) {
  for (const auto& r : registry()) {
    if (r.info.name == name) return r.info;
  }
  throw Error("unknown suite '" + std::string(name) + "'");
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& options) {
  for (const auto& r : registry()) {
    if (r.info.name != name) continue;
    const Context c{options, options.tolerance.value_or(r.info.tolerance),
                    options.trials.value_or(r.info.trials)};
    return r.fn(c);
  }
  throw Error("unknown suite '" + std::string(name) + "'");
}

}  // namespace schwarzian
