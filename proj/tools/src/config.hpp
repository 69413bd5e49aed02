#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"

namespace schwarzian::cli {

// Bad flags or flag combinations; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  std::string center = "0";
  double radius = 0.9;
  double inner = 0.1;
  int rings = 4;
  int per_ring = 8;
  std::optional<double> strip;  // |Re z| <= strip, |Im z| <= 1
};

struct RunConfig {
  std::string command;
  std::string mode;  // bessel: counterexample | zeros | eval; verify: suite name or "all"

  std::string function_text;
  std::string entry;
  std::vector<std::string> params;  // name=value
  std::optional<int> k;
  std::vector<std::string> points;  // -z, repeatable
  std::string method = "both";
  std::string b_text = "0";

  GridSpec grid;
  std::uint64_t seed = 7;
  std::optional<int> trials;

  std::string region = "disk";
  std::string center = "0";
  double size = 0.5;

  std::optional<double> bound_m;
  bool cells = false;

  std::string bessel_kind = "J0";
  int n = 1;
  int count = 1;
  std::string w = "1";

  std::string parameter = "n";
  std::string values;
  std::string transform = "identity";
  std::string metric = "absolute";
  std::vector<std::string> singularities;

  bool rows = false;
  Format format = Format::table;
  std::string out;
  bool no_timing = false;
  bool unsafe = false;
  std::map<std::string, double> tolerance;  // flag name without "--tol-" -> value
};

/// Runs one parsed command. Throws UsageError, schwarzian::ParseError (both
/// exit 2) or schwarzian::Error (exit 1).
Report execute(const RunConfig& cfg);

}  // namespace schwarzian::cli
