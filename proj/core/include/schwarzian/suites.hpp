#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "schwarzian/catalog.hpp"

namespace schwarzian {

/// One checked quantity. `error` is the suite's own metric (relative to the
/// reference unless the suite says otherwise); abs_error is |value - reference|.
struct SuiteRow {
  std::string label;
  Complex z = 0.0;
  Complex value = 0.0;
  Complex reference = 0.0;
  double error = 0.0;
  bool ok = true;

  double abs_error() const { return std::abs(value - reference); }
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  int checks = 0;
  int failures = 0;
  std::vector<SuiteRow> rows;
  std::vector<std::string> notes;
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::optional<int> trials;        // per-suite default when empty
  std::optional<int> k;             // restrict to one k where the suite sweeps k
  std::optional<double> tolerance;  // per-suite default when empty
};

struct SuiteInfo {
  std::string name;
  std::string summary;
  double tolerance;
  int trials;  // 0 where the suite has no random trials
};

const std::vector<SuiteInfo>& suites();
const SuiteInfo& suite_info(std::string_view name);

/// Throws Error for an unknown name. Numerical failures inside a suite are
/// recorded as failing rows, not thrown.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options = {});

/// A catalog function with random parameters and a random point of the unit
/// disk where f is analytic, f' != 0 and f''/f' has convergence radius at
/// least kMinSampleRadius.
struct RandomInstance {
  std::string entry;
  ParamMap params;
  FunctionExpr f;
  Complex z = 0.0;
};

inline constexpr double kMinSampleRadius = 0.5;

RandomInstance random_instance(std::mt19937_64& rng);

/// Point of the closed disk |z - center| <= radius, uniform in area.
Complex random_point(std::mt19937_64& rng, Complex center, double radius);

}  // namespace schwarzian
