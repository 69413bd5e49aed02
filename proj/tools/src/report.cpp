#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace schwarzian::cli {

std::string shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return brief(c.real());
  if (c.real() == 0.0) return brief(c.imag()) + "i";
  return brief(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + brief(std::abs(c.imag())) + "i";
}

void Report::add_point(const std::string& label, Complex z, Complex value,
                       std::optional<Complex> reference, double abs_error) {
  Json row = Json::object();
  if (!label.empty()) row["label"] = label;
  row["re_z"] = z.real();
  row["im_z"] = z.imag();
  row["re_value"] = value.real();
  row["im_value"] = value.imag();
  if (reference) {
    row["re_reference"] = reference->real();
    row["im_reference"] = reference->imag();
  }
  row["abs_error"] = abs_error;
  rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Json& v, bool exact) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return exact ? shortest(v.get<double>()) : brief(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Complex get_complex(const Json& row, const char* re, const char* im) {
  return {row.value(re, 0.0), row.value(im, 0.0)};
}

void render_csv(const Report& r, std::ostream& os) {
  if (r.point_rows) {
    os << "re(z),im(z),re(value),im(value),abs_error\n";
    for (const auto& row : r.rows) {
      os << shortest(row.value("re_z", 0.0)) << ',' << shortest(row.value("im_z", 0.0)) << ','
         << shortest(row.value("re_value", 0.0)) << ',' << shortest(row.value("im_value", 0.0))
         << ',' << cell_text(row.at("abs_error"), true) << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      os << (i ? "," : "") << csv_escape(cell_text(row.value(r.columns[i], Json()), true));
    }
    os << '\n';
  }
}

void render_table(const Report& r, std::ostream& os) {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
  if (r.point_rows) {
    const bool labels = std::any_of(r.rows.begin(), r.rows.end(),
                                    [](const Json& j) { return j.contains("label"); });
    const bool refs = std::any_of(r.rows.begin(), r.rows.end(),
                                  [](const Json& j) { return j.contains("re_reference"); });
    if (labels) header.push_back("label");
    header.insert(header.end(), {"z", "value"});
    if (refs) header.push_back("reference");
    header.push_back("abs_error");
    for (const auto& row : r.rows) {
      std::vector<std::string> line;
      if (labels) line.push_back(row.value("label", ""));
      line.push_back(format_complex(get_complex(row, "re_z", "im_z")));
      line.push_back(format_complex(get_complex(row, "re_value", "im_value")));
      if (refs) {
        line.push_back(row.contains("re_reference")
                           ? format_complex(get_complex(row, "re_reference", "im_reference"))
                           : "");
      }
      line.push_back(cell_text(row.at("abs_error"), false));
      cells.push_back(std::move(line));
    }
  } else {
    header = r.columns;
    for (const auto& row : r.rows) {
      std::vector<std::string> line;
      for (const auto& c : r.columns) line.push_back(cell_text(row.value(c, Json()), false));
      cells.push_back(std::move(line));
    }
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << '\n';
  };
  os << r.command << '\n';
  if (!cells.empty()) {
    emit(header);
    for (const auto& line : cells) emit(line);
  }
  for (const auto& [key, value] : r.summary.items()) {
    os << key << ": " << cell_text(value, false) << '\n';
  }
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << (r.pass ? "PASS" : "FAIL") << "  max_error=" << brief(r.max_error) << '\n';
}

}  // namespace

void render(const Report& r, Format format, std::optional<double> runtime_ms, std::ostream& os) {
  switch (format) {
    case Format::csv: render_csv(r, os); return;
    case Format::table: render_table(r, os); return;
    case Format::json: {
      Json j = Json::object();
      j["command"] = r.command;
      j["config"] = r.config;
      j["rows"] = r.rows;
      Json summary = Json::object();
      summary["pass"] = r.pass;
      summary["max_error"] = r.max_error;
      summary["runtime_ms"] = runtime_ms.value_or(0.0);
      for (const auto& [key, value] : r.summary.items()) summary[key] = value;
      if (!r.notes.empty()) summary["notes"] = r.notes;
      j["summary"] = std::move(summary);
      os << j.dump(2) << '\n';
      return;
    }
  }
}

}  // namespace schwarzian::cli
