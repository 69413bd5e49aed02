#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schwarzian/jet.hpp"

namespace schwarzian::cli {

using Json = nlohmann::ordered_json;

enum class Format { table, csv, json };

/// Rows are JSON objects. Point reports carry re_z, im_z, re_value, im_value
/// and abs_error (plus an optional label and reference) and always render
/// the same five CSV columns; other reports list their own columns.
struct Report {
  std::string command;
  Json config = Json::object();
  bool point_rows = true;
  std::vector<std::string> columns;
  std::vector<Json> rows;
  bool pass = true;
  double max_error = 0.0;
  Json summary = Json::object();  // extra summary fields
  std::vector<std::string> notes;

  void add_point(const std::string& label, Complex z, Complex value,
                 std::optional<Complex> reference, double abs_error);
};

void render(const Report& r, Format format, std::optional<double> runtime_ms, std::ostream& os);

std::string format_complex(Complex c);
std::string shortest(double x);

}  // namespace schwarzian::cli
