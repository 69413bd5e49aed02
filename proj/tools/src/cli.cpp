#include "schwarzian/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "config.hpp"
#include "schwarzian/errors.hpp"
#include "schwarzian/suites.hpp"

namespace schwarzian::cli {

namespace {

// Diagnostics go to stderr so stdout stays a clean report.
void configure_logging(std::ostream& err) {
  static const auto logger = [] {
    auto l = spdlog::stderr_logger_mt("schwarzian");
    l->set_pattern("[%l] %v");
    spdlog::set_default_logger(l);
    return l;
  }();
  const char* env = std::getenv("SCHWARZIAN_LOG");
  const std::string level = env ? env : "off";
  if (level == "debug") {
    logger->set_level(spdlog::level::debug);
  } else if (level == "info") {
    logger->set_level(spdlog::level::info);
  } else {
    if (level != "off") err << "warning: SCHWARZIAN_LOG=" << level << " not one of off, info, debug\n";
    logger->set_level(spdlog::level::off);
  }
}

struct Tolerances {
  std::optional<double> rel, residual, suite;
};

void add_function_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-f,--function", cfg.function_text, "Function of z, e.g. \"exp(z)\"");
  sub->add_option("--entry", cfg.entry, "Catalog entry instead of -f");
  sub->add_option("-p,--param", cfg.params, "Parameter binding name=value (repeatable)");
}

void add_grid_flags(CLI::App* sub, RunConfig& cfg) {
  auto& g = cfg.grid;
  sub->add_option("-z,--point", cfg.points, "Sample point (repeatable); overrides the grid");
  sub->add_option("--grid-center", g.center, "Centre of the polar grid")->capture_default_str();
  sub->add_option("--grid-radius", g.radius, "Outer ring radius")->capture_default_str();
  sub->add_option("--grid-inner", g.inner, "Inner ring radius")->capture_default_str();
  sub->add_option("--grid-rings", g.rings, "Number of rings")->capture_default_str();
  sub->add_option("--grid-points", g.per_ring, "Points per ring (per row for a strip)")
      ->capture_default_str();
}

void add_k(CLI::App* sub, RunConfig& cfg, const std::string& help = "Order k") {
  sub->add_option("-k", cfg.k, help);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_logging(err);
  RunConfig cfg;
  Tolerances tol;
  std::string format = "table";

  CLI::App app{"Generalized Schwarzian derivatives: evaluation and verification suites",
               "schwarzian"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Write the report to this file instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Trial count for randomized checks");
  app.add_flag("--no-timing", cfg.no_timing, "Report runtime_ms as 0 (byte-identical JSON)");
  app.add_flag("--unsafe", cfg.unsafe, "Allow tolerance overrides looser than the defaults");
  app.add_option("--tol-rel", tol.rel, "Relative tolerance (eval, bessel counterexample)");
  app.add_option("--tol-residual", tol.residual, "Residual tolerance (ode-link)");
  app.add_option("--tol", tol.suite, "Suite tolerance (verify)");
  app.fallthrough();

  auto* eval = app.add_subcommand("eval", "Evaluate S_k(f) by recursion and closed form");
  add_function_flags(eval, cfg);
  add_k(eval, cfg);
  add_grid_flags(eval, cfg);
  eval->add_option("--method", cfg.method, "recursive, closed-form or both")
      ->check(CLI::IsMember({"recursive", "closed-form", "both"}));

  auto* parts = app.add_subcommand("partitions", "List the partition tuples of k");
  add_k(parts, cfg);
  auto* coeffs = app.add_subcommand("coefficients", "Exact closed-form coefficients for k");
  add_k(coeffs, cfg);
  auto* grahl = app.add_subcommand("grahl", "Decompose S_k into extremal terms and P[g]");
  add_k(grahl, cfg);

  auto* pole = app.add_subcommand("pole-order", "Pole order of S_k(f) at critical points");
  add_function_flags(pole, cfg);
  add_k(pole, cfg);
  pole->add_option("-z,--point", cfg.points, "Point (repeatable)");

  auto* ode = app.add_subcommand("ode-link", "Check h = (f')^(-1/k) against y^(k) + p0 y = 0");
  add_function_flags(ode, cfg);
  add_k(ode, cfg);
  add_grid_flags(ode, cfg);

  auto* disc = app.add_subcommand("disconjugacy", "Count zeros of solutions of y^(k) + p0 y = 0");
  add_function_flags(disc, cfg);
  add_k(disc, cfg);
  disc->add_option("--region", cfg.region, "disk or square")
      ->check(CLI::IsMember({"disk", "square"}));
  disc->add_option("--center", cfg.center, "Region centre");
  disc->add_option("--size", cfg.size, "Disk radius or square side");

  auto* bound = app.add_subcommand("pole-bound", "Pole-count bound N(k, M) and its covering");
  add_k(bound, cfg);
  bound->add_option("-M", cfg.bound_m, "Bound on |S_k(f)|");
  bound->add_flag("--cells", cfg.cells, "List the covering cells");

  auto* bessel = app.add_subcommand("bessel", "Bessel-quotient counterexample, zeros and values");
  bessel->add_option("mode", cfg.mode, "counterexample, zeros or eval")
      ->required()
      ->check(CLI::IsMember({"counterexample", "zeros", "eval"}));
  bessel->add_option("--grid-strip", cfg.grid.strip, "Half-width of the strip |Re z| <= s");
  bessel->add_option("--grid-points", cfg.grid.per_ring, "Points along Re z");
  bessel->add_option("--kind", cfg.bessel_kind, "J0 or Y0")->check(CLI::IsMember({"J0", "Y0"}));
  bessel->add_option("-n", cfg.n, "First zero index");
  bessel->add_option("--count", cfg.count, "Number of zeros");
  bessel->add_option("-w", cfg.w, "Argument for eval");

  auto* marty = app.add_subcommand("marty", "Spherical-derivative inequality at sample points");
  add_function_flags(marty, cfg);
  add_grid_flags(marty, cfg);

  auto* family = app.add_subcommand("family-probe", "Sup of a transform over a one-parameter family");
  family->add_option("--entry", cfg.entry, "Catalog entry")->required();
  family->add_option("-p,--param", cfg.params, "Fixed parameter name=value (repeatable)");
  add_k(family, cfg, "k used by the pre-Schwarzian transform and the entry");
  family->add_option("--parameter", cfg.parameter, "Parameter that varies");
  family->add_option("--values", cfg.values, "Comma-separated parameter values");
  family->add_option("--transform", cfg.transform,
                     "identity, derivative, log-derivative or pre-schwarzian");
  family->add_option("--metric", cfg.metric, "absolute or spherical")
      ->check(CLI::IsMember({"absolute", "spherical"}));
  family->add_option("--singularity", cfg.singularities, "Point to keep away from (repeatable)");
  add_grid_flags(family, cfg);

  auto* omit = app.add_subcommand("omit-check", "Does S_k(f) omit the function b on a grid?");
  add_function_flags(omit, cfg);
  add_k(omit, cfg);
  omit->add_option("-b", cfg.b_text, "Function b(z) to compare against");
  add_grid_flags(omit, cfg);

  std::string suite_help = "Suite name or 'all':";
  std::vector<std::string> suite_names = {"all"};
  for (const auto& s : suites()) {
    suite_names.push_back(s.name);
    suite_help += " " + s.name;
  }
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suite", cfg.mode, suite_help)->required()->check(CLI::IsMember(suite_names));
  add_k(verify, cfg, "Restrict to one k where the suite has several");
  verify->add_flag("--rows", cfg.rows, "Show every checked row in table output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, msg;
    const int code = app.exit(e, help, msg);
    out << help.str();
    err << msg.str();
    return code == 0 ? kPass : kUsage;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::table;
  if (tol.rel) cfg.tolerance["rel"] = *tol.rel;
  if (tol.residual) cfg.tolerance["residual"] = *tol.residual;
  if (tol.suite) cfg.tolerance["suite"] = *tol.suite;
  if (cfg.trials && *cfg.trials < 1) {
    err << "error: --trials must be >= 1\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    report = execute(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  const double ms =
      cfg.no_timing ? 0.0
                    : std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                          .count();

  if (cfg.out.empty()) {
    render(report, cfg.format, ms, out);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.out << "\n";
      return kUsage;
    }
    render(report, cfg.format, ms, file);
  }
  return report.pass ? kPass : kCheckFailed;
}

}  // namespace schwarzian::cli
