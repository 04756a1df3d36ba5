// File emission helpers: RFC-4180 CSV with LF line endings, %.17g float
// formatting, `key = value` config parsing with unknown-key rejection,
// FNV-1a content hashing for resumable sweeps, and a dependency-free SVG
// polyline chart.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace schrodiv {

// Quote a raw value per RFC 4180 (quotes only when the field contains a
// comma, quote, or newline; embedded quotes doubled).
std::string csv_field(std::string_view raw);

// One CSV record: escaped fields joined by commas, LF-terminated.
std::string csv_line(const std::vector<std::string>& fields);

// Shortest round-trip float form used for all measured quantities (%.17g).
std::string format_double(double value);

struct KeyValueConfig {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }
};

// Parse `key = value` lines ('#' starts a comment, blank lines skipped).
// Throws std::invalid_argument on malformed lines, duplicate keys, or keys
// outside `allowed` (pass an empty list to accept any key).
KeyValueConfig parse_config(std::string_view text, const std::vector<std::string>& allowed);

// 64-bit FNV-1a over the raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

struct SvgSeries {
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f6feb";
  std::string label;
};

// Fixed-size line chart with axes, data-coordinate polylines, and circle
// markers at `marks` (used for curve breakpoints).
std::string svg_line_chart(const std::vector<SvgSeries>& series,
                           const std::vector<std::pair<double, double>>& marks,
                           const std::string& x_label, const std::string& y_label);

}  // namespace schrodiv
