#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <spdlog/spdlog.h>

#include "config.hpp"
#include "schwarzian/bessel.hpp"
#include "schwarzian/catalog.hpp"
#include "schwarzian/disconjugacy.hpp"
#include "schwarzian/errors.hpp"
#include "schwarzian/normality.hpp"
#include "schwarzian/ode_link.hpp"
#include "schwarzian/partitions.hpp"
#include "schwarzian/schwarzian.hpp"
#include "schwarzian/suites.hpp"

namespace schwarzian::cli {

namespace {

// Constant expressions, with a bare `i` allowed for the imaginary unit.
Complex parse_complex(const std::string& text) {
  if (text.find('z') != std::string::npos) {
    throw UsageError("'" + text + "' is not a constant");
  }
  const std::vector<std::string> unit = {"i"};
  return evaluate(bind_parameters(parse(text, unit), {{"i", Complex(0.0, 1.0)}}), 0.0);
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("parameter '" + item + "' is not of the form name=value");
    }
    out[item.substr(0, eq)] = parse_complex(item.substr(eq + 1));
  }
  return out;
}

std::vector<Complex> parse_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_complex(item));
  return out;
}

int require_k(const RunConfig& cfg, int lo, int hi = 1000) {
  if (!cfg.k) throw UsageError(cfg.command + " needs -k");
  if (*cfg.k < lo || *cfg.k > hi) {
    throw UsageError("-k must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return *cfg.k;
}

FunctionExpr resolve_function(const RunConfig& cfg) {
  ParamMap params = parse_params(cfg.params);
  if (!cfg.entry.empty()) {
    if (!cfg.function_text.empty()) throw UsageError("give either -f or --entry, not both");
    const CatalogEntry& e = catalog_entry(cfg.entry);
    const bool has_k = std::any_of(e.params.begin(), e.params.end(),
                                   [](const ParamSpec& p) { return p.name == "k"; });
    if (has_k && cfg.k && !params.contains("k")) params["k"] = Complex(*cfg.k);
    return e.instantiate(params);
  }
  if (cfg.function_text.empty()) throw UsageError(cfg.command + " needs -f or --entry");
  std::vector<std::string> names;
  for (const auto& [name, value] : params) names.push_back(name);
  const FunctionExpr f = bind_parameters(parse(cfg.function_text, names), params);
  return f;
}

std::vector<Complex> grid_points(const GridSpec& g) {
  std::vector<Complex> pts;
  if (g.strip) {
    const int nx = std::max(g.per_ring, 2);
    for (int i = 0; i < nx; ++i) {
      for (const double im : {-1.0, 0.0, 1.0}) {
        pts.emplace_back(-*g.strip + 2.0 * *g.strip * i / (nx - 1), im);
      }
    }
    return pts;
  }
  if (g.rings < 1 || g.per_ring < 1) throw UsageError("grid needs at least one ring and point");
  if (!(g.radius > 0.0) || g.inner < 0.0 || g.inner > g.radius) {
    throw UsageError("grid radii must satisfy 0 <= inner <= radius, radius > 0");
  }
  const Complex c = parse_complex(g.center);
  for (int r = 0; r < g.rings; ++r) {
    const double rad = g.rings == 1 ? g.radius : g.inner + (g.radius - g.inner) * r / (g.rings - 1);
    for (int i = 0; i < g.per_ring; ++i) {
      pts.push_back(c + std::polar(rad, 2.0 * std::numbers::pi * (i + 0.5 * r) / g.per_ring));
    }
  }
  return pts;
}

std::vector<Complex> sample_points(const RunConfig& cfg) {
  if (cfg.points.empty()) return grid_points(cfg.grid);
  std::vector<Complex> pts;
  for (const auto& p : cfg.points) pts.push_back(parse_complex(p));
  return pts;
}

// Tolerance overrides may tighten freely; loosening needs --unsafe.
double tolerance(const RunConfig& cfg, const std::string& name, double fallback) {
  const auto it = cfg.tolerance.find(name);
  if (it == cfg.tolerance.end()) return fallback;
  if (!(it->second >= 0.0)) throw UsageError("--tol-" + name + " must be non-negative");
  if (it->second > fallback && !cfg.unsafe) {
    throw UsageError("--tol-" + name + "=" + shortest(it->second) + " loosens the default " +
                     shortest(fallback) + "; pass --unsafe to allow it");
  }
  return it->second;
}

void describe_function(Report& r, const RunConfig& cfg, const FunctionExpr& f) {
  r.config["function"] = f.to_string();
  if (!cfg.entry.empty()) r.config["entry"] = cfg.entry;
  if (cfg.k) r.config["k"] = *cfg.k;
}

Report cmd_eval(const RunConfig& cfg) {
  const int k = require_k(cfg, 1, 12);
  const FunctionExpr f = resolve_function(cfg);
  const JetSource src = as_source(f);
  const double tol = tolerance(cfg, "rel", 1e-9);
  if (cfg.method != "both" && cfg.method != "recursive" && cfg.method != "closed-form") {
    throw UsageError("--method must be recursive, closed-form or both");
  }
  Report r;
  r.command = "eval";
  describe_function(r, cfg, f);
  r.config["method"] = cfg.method;
  const auto pts = sample_points(cfg);
  int skipped = 0;
  for (const Complex z : pts) {
    try {
      if (cfg.method == "both") {
        const Complex a = schwarzian_recursive(src, k, z).at_base();
        const Complex b = schwarzian_closed_form(src, k, z).at_base();
        const double diff = std::abs(a - b);
        r.add_point("", z, a, b, diff);
        r.max_error = std::max(r.max_error, diff / (1.0 + std::abs(b)));
        if (!(diff <= tol * (1.0 + std::abs(b)))) r.pass = false;
      } else {
        const auto v = cfg.method == "recursive" ? schwarzian_recursive(src, k, z)
                                                 : schwarzian_closed_form(src, k, z);
        r.add_point("", z, v.at_base(), std::nullopt, 0.0);
      }
      spdlog::debug("eval at ({}, {}) done", z.real(), z.imag());
    } catch (const Error& e) {
      if (pts.size() == 1 || !cfg.points.empty()) throw;
      ++skipped;
      spdlog::info("skipping grid point ({}, {}): {}", z.real(), z.imag(), e.what());
    }
  }
  if (skipped) r.notes.push_back(std::to_string(skipped) + " grid points without a value");
  if (r.rows.empty()) throw DomainError("no point produced a value");
  if (cfg.method == "both") r.summary["tolerance"] = tol;
  return r;
}

Report cmd_partitions(const RunConfig& cfg, bool with_coefficients) {
  const int k = require_k(cfg, 1, 30);
  Report r;
  r.command = with_coefficients ? "coefficients" : "partitions";
  r.config["k"] = k;
  r.point_rows = false;
  r.columns = {"tuple", "parts"};
  if (with_coefficients) r.columns.insert(r.columns.end(), {"coefficient", "approx"});
  if (with_coefficients && k > 12) throw UsageError("coefficients are tabulated for k <= 12");
  const auto tuples = enumerate_partitions(k);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    Json row = Json::object();
    row["tuple"] = tuples[i].to_string();
    row["parts"] = tuples[i].parts();
    if (with_coefficients) {
      const Rational c = closed_form_terms(k)[i].coefficient;
      row["coefficient"] = c.str();
      row["approx"] = c.convert_to<double>();
    }
    r.rows.push_back(std::move(row));
  }
  r.summary["count"] = static_cast<long long>(tuples.size());
  return r;
}

Report cmd_grahl(const RunConfig& cfg) {
  const int k = require_k(cfg, 2, 12);
  const GrahlDecomposition d = grahl_decompose(k);
  Report r;
  r.command = "grahl";
  r.config["k"] = k;
  r.point_rows = false;
  r.columns = {"tuple", "a_mu", "s_mu", "omegas", "omega_sum", "condition"};
  for (const auto& t : d.terms) {
    Json row = Json::object();
    row["tuple"] = t.tuple.to_string();
    row["a_mu"] = t.a_mu.str();
    row["s_mu"] = t.s_mu;
    std::string om;
    for (std::size_t i = 0; i < t.omegas.size(); ++i) om += (i ? " " : "") + std::to_string(t.omegas[i]);
    row["omegas"] = om;
    row["omega_sum"] = t.omega_sum();
    const bool ok = grahl_condition_holds(t, k, d.ell);
    row["condition"] = ok;
    if (!ok) r.pass = false;
    r.rows.push_back(std::move(row));
  }
  r.summary["leading"] = d.leading.str();
  r.summary["ell"] = d.ell;
  r.summary["terms"] = static_cast<long long>(d.terms.size());
  return r;
}

Report cmd_pole_order(const RunConfig& cfg) {
  const int k = require_k(cfg, 1, 12);
  const FunctionExpr f = resolve_function(cfg);
  const JetSource src = as_source(f);
  Report r;
  r.command = "pole-order";
  describe_function(r, cfg, f);
  r.point_rows = false;
  r.columns = {"re_z", "im_z", "pole_order"};
  if (cfg.points.empty()) throw UsageError("pole-order needs -z");
  for (const auto& p : cfg.points) {
    const Complex z = parse_complex(p);
    Json row = Json::object();
    row["re_z"] = z.real();
    row["im_z"] = z.imag();
    row["pole_order"] = pole_order_at(src, k, z);
    r.rows.push_back(std::move(row));
  }
  return r;
}

Report cmd_ode_link(const RunConfig& cfg) {
  const int k = require_k(cfg, 1, 12);
  const FunctionExpr f = resolve_function(cfg);
  const JetSource src = as_source(f);
  const double tol = tolerance(cfg, "residual", 1e-9);
  Report r;
  r.command = "ode-link";
  describe_function(r, cfg, f);
  double residual = 0.0, mismatch = 0.0;
  for (const Complex z : sample_points(cfg)) {
    const OdeLinkReport l = verify_link(src, k, z);
    const Complex ref = -l.p0_value * l.h_jet[0];
    r.add_point("", z, l.h_k_value, ref, std::abs(l.h_k_value - ref));
    residual = std::max(residual, l.residual);
    mismatch = std::max(mismatch, l.mismatch);
  }
  r.max_error = std::max(residual, mismatch);
  r.pass = r.max_error <= tol;
  r.summary["residual"] = residual;
  r.summary["mismatch"] = mismatch;
  r.summary["tolerance"] = tol;
  return r;
}

ConvexRegion region_of(const RunConfig& cfg) {
  const Complex c = parse_complex(cfg.center);
  if (cfg.region == "disk") return ConvexRegion::disk(c, cfg.size);
  if (cfg.region == "square") return ConvexRegion::square(c, cfg.size);
  throw UsageError("--region must be disk or square");
}

Report cmd_disconjugacy(const RunConfig& cfg) {
  const int k = require_k(cfg, 1, 12);
  const FunctionExpr p0 = resolve_function(cfg);
  const ConvexRegion region = region_of(cfg);
  const int trials = cfg.trials.value_or(25);
  const DisconjugacyReport d = check_disconjugacy(p0, k, region, trials, cfg.seed);
  Report r;
  r.command = "disconjugacy";
  r.config["p0"] = p0.to_string();
  r.config["k"] = k;
  r.config["region"] = cfg.region;
  r.config["center"] = cfg.center;
  r.config["size"] = cfg.size;
  r.config["trials"] = trials;
  r.config["seed"] = cfg.seed;
  r.point_rows = false;
  r.columns = {"trial", "zeros"};
  for (std::size_t i = 0; i < d.counts.size(); ++i) {
    r.rows.push_back(Json{{"trial", static_cast<long long>(i)}, {"zeros", d.counts[i]}});
  }
  r.summary["diameter"] = region.diameter();
  r.summary["sup_p0"] = d.sup_p0;
  r.summary["threshold"] = d.threshold;
  r.summary["vacuous"] = d.vacuous;
  r.summary["max_count"] = d.max_count;
  r.summary["at_most_k_minus_1"] = d.pass;
  // Only a count above k-1 with sup|p0| below the threshold contradicts the bound.
  r.pass = d.pass || d.vacuous;
  if (d.vacuous) r.notes.push_back("sup|p0| >= k!/delta^k: the disconjugacy bound does not apply");
  return r;
}

Report cmd_pole_bound(const RunConfig& cfg) {
  const int k = require_k(cfg, 2, 20);
  if (!cfg.bound_m) throw UsageError("pole-bound needs -M");
  const PoleCountBound b = pole_count_bound(k, *cfg.bound_m);
  Report r;
  r.command = "pole-bound";
  r.config["k"] = k;
  r.config["M"] = *cfg.bound_m;
  r.point_rows = false;
  if (cfg.cells) {
    r.columns = {"cell", "kind", "re_center", "im_center", "size", "diameter"};
    for (std::size_t i = 0; i < b.covering.cells.size(); ++i) {
      const auto& c = b.covering.cells[i];
      r.rows.push_back(Json{{"cell", static_cast<long long>(i)},
                            {"kind", c.kind == ConvexRegion::Kind::disk ? "disk" : "square"},
                            {"re_center", c.center.real()},
                            {"im_center", c.center.imag()},
                            {"size", c.size},
                            {"diameter", c.diameter()}});
    }
  } else {
    r.columns = {"k", "M", "delta", "N_tilde", "N"};
    r.rows.push_back(Json{{"k", k}, {"M", *cfg.bound_m}, {"delta", b.delta},
                          {"N_tilde", b.n_tilde}, {"N", b.n}});
  }
  r.summary["delta"] = b.delta;
  r.summary["N_tilde"] = b.n_tilde;
  r.summary["N"] = b.n;
  return r;
}

BesselKind bessel_kind(const std::string& s) {
  if (s == "J0") return BesselKind::J0;
  if (s == "Y0") return BesselKind::Y0;
  throw UsageError("--kind must be J0 or Y0");
}

Report cmd_bessel(const RunConfig& cfg) {
  Report r;
  r.command = "bessel " + cfg.mode;
  if (cfg.mode == "counterexample") {
    const double tol = tolerance(cfg, "rel", 1e-8);
    GridSpec g = cfg.grid;
    if (!g.strip) g.strip = 3.0;
    r.config["strip"] = *g.strip;
    const JetSource f = as_source(catalog_entry("bessel_quotient").instantiate());
    int skipped = 0;
    for (const Complex z : grid_points(g)) {
      const Complex w = std::exp(z / 2.0);
      if (std::abs(bessel_value(BesselKind::Y0, w)) < 0.05) {
        ++skipped;
        continue;
      }
      const Complex s = schwarzian_recursive(f, 2, z).at_base();
      const Complex ref = std::exp(z) / 2.0;
      const double err = std::abs(s - ref);
      r.add_point("", z, s, ref, err);
      r.max_error = std::max(r.max_error, err / std::abs(ref));
    }
    r.pass = r.max_error <= tol;
    r.summary["tolerance"] = tol;
    if (skipped) r.notes.push_back(std::to_string(skipped) + " points near zeros of Y0(e^(z/2)) skipped");
    return r;
  }
  if (cfg.mode == "zeros") {
    const BesselKind kind = bessel_kind(cfg.bessel_kind);
    r.config["kind"] = cfg.bessel_kind;
    r.point_rows = false;
    r.columns = {"n", "zero", "asymptotic", "deviation"};
    if (cfg.n < 1 || cfg.count < 1) throw UsageError("-n and --count must be >= 1");
    for (int n = cfg.n; n < cfg.n + cfg.count; ++n) {
      const double x = bessel_zero(kind, n);
      const double a = (n - (kind == BesselKind::J0 ? 0.25 : 0.75)) * std::numbers::pi;
      r.rows.push_back(Json{{"n", n}, {"zero", x}, {"asymptotic", a}, {"deviation", x - a}});
    }
    return r;
  }
  if (cfg.mode == "eval") {
    const BesselKind kind = bessel_kind(cfg.bessel_kind);
    const Complex w = parse_complex(cfg.w);
    r.config["kind"] = cfg.bessel_kind;
    r.add_point("", w, bessel_value(kind, w), std::nullopt, 0.0);
    return r;
  }
  throw UsageError("bessel mode must be counterexample, zeros or eval");
}

Report cmd_marty(const RunConfig& cfg) {
  const FunctionExpr f = resolve_function(cfg);
  const JetSource src = as_source(f);
  Report r;
  r.command = "marty";
  describe_function(r, cfg, f);
  r.point_rows = false;
  r.columns = {"re_z", "im_z", "lhs", "rhs", "holds", "degenerate"};
  int skipped = 0;
  for (const Complex z : sample_points(cfg)) {
    try {
      const MartyCheck m = marty_inequality_check(src, z);
      r.rows.push_back(Json{{"re_z", z.real()}, {"im_z", z.imag()}, {"lhs", m.lhs}, {"rhs", m.rhs},
                            {"holds", m.holds}, {"degenerate", m.degenerate}});
      if (!m.degenerate) {
        if (!m.holds) r.pass = false;
        r.max_error = std::max(r.max_error, m.lhs / m.rhs);
      }
    } catch (const Error& e) {
      ++skipped;
      spdlog::info("marty: skipping ({}, {}): {}", z.real(), z.imag(), e.what());
    }
  }
  if (skipped) r.notes.push_back(std::to_string(skipped) + " points with f' = 0 or a pole skipped");
  r.notes.push_back("max_error is the largest lhs/rhs; the inequality needs it below 1");
  return r;
}

Report cmd_family_probe(const RunConfig& cfg) {
  if (cfg.entry.empty()) throw UsageError("family-probe needs --entry");
  FamilySpec spec;
  spec.entry = cfg.entry;
  spec.parameter = cfg.parameter;
  spec.values = parse_list(cfg.values.empty() ? "1,2,4,8,16,32,64,128" : cfg.values);
  spec.k = cfg.k.value_or(2);
  spec.fixed = parse_params(cfg.params);
  for (const auto& s : cfg.singularities) spec.singularities.push_back(parse_complex(s));
  if (cfg.metric != "absolute" && cfg.metric != "spherical") {
    throw UsageError("--metric must be absolute or spherical");
  }
  const Transform t = parse_transform(cfg.transform);
  const GridReport g = family_bound_probe(
      spec, t, grid_points(cfg.grid), cfg.metric == "spherical" ? Metric::spherical : Metric::absolute);
  Report r;
  r.command = "family-probe";
  r.config["entry"] = cfg.entry;
  r.config["parameter"] = cfg.parameter;
  r.config["k"] = spec.k;
  r.config["transform"] = to_string(t);
  r.config["metric"] = cfg.metric;
  r.point_rows = false;
  r.columns = {"re_member", "im_member", "sup", "skipped"};
  for (std::size_t i = 0; i < g.members.size(); ++i) {
    r.rows.push_back(Json{{"re_member", g.members[i].real()},
                          {"im_member", g.members[i].imag()},
                          {"sup", g.member_sup[i]},
                          {"skipped", g.member_skipped[i]}});
  }
  r.summary["grid_points"] = static_cast<long long>(g.grid.size());
  r.summary["overall_sup"] = g.overall_sup;
  r.summary["diverging"] = g.diverging;
  r.notes.push_back("diverging is a heuristic (last sup > 10 x median), not a proof");
  return r;
}

Report cmd_omit_check(const RunConfig& cfg) {
  const int k = require_k(cfg, 1, 12);
  const FunctionExpr f = resolve_function(cfg);
  const FunctionExpr b = parse(cfg.b_text);
  const JetSource src = as_source(f);
  const auto pts = sample_points(cfg);
  const OmissionReport o = omitted_function_check(src, k, b, pts);
  Report r;
  r.command = "omit-check";
  describe_function(r, cfg, f);
  r.config["b"] = b.to_string();
  for (const Complex z : pts) {
    try {
      const Complex s = schwarzian_recursive(src, k, z).at_base();
      const Complex bz = evaluate(b, z);
      r.add_point("", z, s, bz, std::abs(s - bz));
    } catch (const Error&) {
    }
  }
  r.pass = o.omits_on_grid;
  r.summary["min_gap"] = o.min_gap;
  r.summary["omits_on_grid"] = o.omits_on_grid;
  r.summary["valid_points"] = o.valid_points;
  return r;
}

Report cmd_verify(const RunConfig& cfg) {
  std::vector<std::string> names;
  if (cfg.mode == "all") {
    for (const auto& s : suites()) names.push_back(s.name);
  } else {
    suite_info(cfg.mode);  // validates the name
    names.push_back(cfg.mode);
  }
  Report r;
  r.command = "verify " + cfg.mode;
  r.config["seed"] = cfg.seed;
  if (cfg.trials) r.config["trials"] = *cfg.trials;
  if (cfg.k) r.config["k"] = *cfg.k;
  Json per_suite = Json::array();
  for (const auto& name : names) {
    const SuiteInfo& info = suite_info(name);
    SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.trials = cfg.trials;
    opt.k = cfg.k;
    opt.tolerance = tolerance(cfg, "suite", info.tolerance);
    spdlog::info("running suite {}", name);
    const SuiteResult s = run_suite(name, opt);
    for (const auto& row : s.rows) {
      if (cfg.rows || !row.ok || cfg.format != Format::table) {
        r.add_point(name + ": " + row.label, row.z, row.value, row.reference, row.abs_error());
        r.rows.back()["error"] = row.error;
        r.rows.back()["ok"] = row.ok;
      }
    }
    per_suite.push_back(Json{{"suite", name},
                             {"pass", s.pass},
                             {"checks", s.checks},
                             {"failures", s.failures},
                             {"max_error", s.max_error},
                             {"tolerance", s.tolerance}});
    for (const auto& n : s.notes) r.notes.push_back(name + ": " + n);
    r.pass = r.pass && s.pass;
    r.max_error = std::max(r.max_error, s.max_error);
  }
  if (cfg.format == Format::table) {
    // Summary table first; failing rows (or all rows with --rows) follow.
    Report t;
    t.command = r.command;
    t.point_rows = false;
    t.columns = {"suite", "result", "checks", "failures", "max_error", "tolerance"};
    for (const auto& s : per_suite) {
      Json row = s;
      row["result"] = s["pass"].get<bool>() ? "PASS" : "FAIL";
      t.rows.push_back(std::move(row));
    }
    t.pass = r.pass;
    t.max_error = r.max_error;
    t.notes = r.notes;
    if (!r.rows.empty()) {
      t.summary["rows"] = static_cast<long long>(r.rows.size());
      t.config["detail"] = r.rows;
    }
    return t;
  }
  r.summary["suites"] = per_suite;
  return r;
}

}  // namespace

Report execute(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "eval") return cmd_eval(cfg);
  if (c == "partitions") return cmd_partitions(cfg, false);
  if (c == "coefficients") return cmd_partitions(cfg, true);
  if (c == "grahl") return cmd_grahl(cfg);
  if (c == "pole-order") return cmd_pole_order(cfg);
  if (c == "ode-link") return cmd_ode_link(cfg);
  if (c == "disconjugacy") return cmd_disconjugacy(cfg);
  if (c == "pole-bound") return cmd_pole_bound(cfg);
  if (c == "bessel") return cmd_bessel(cfg);
  if (c == "marty") return cmd_marty(cfg);
  if (c == "family-probe") return cmd_family_probe(cfg);
  if (c == "omit-check") return cmd_omit_check(cfg);
  if (c == "verify") return cmd_verify(cfg);
  throw UsageError("unknown command '" + c + "'");
}

}  // namespace schwarzian::cli
