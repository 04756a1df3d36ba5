#include "schrodiv/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace schrodiv {

std::string csv_field(std::string_view raw) {
  bool needs_quote = raw.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quote) return std::string(raw);
  std::string out = "\"";
  for (char ch : raw) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

KeyValueConfig parse_config(std::string_view text, const std::vector<std::string>& allowed) {
  KeyValueConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    if (!cfg.values.emplace(key, value).second)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
  }
  return cfg;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string svg_line_chart(const std::vector<SvgSeries>& series,
                           const std::vector<std::pair<double, double>>& marks,
                           const std::string& x_label, const std::string& y_label) {
  const double width = 800, height = 500, pad = 60;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  auto absorb = [&](double x, double y) {
    if (first) {
      xmin = xmax = x;
      ymin = ymax = y;
      first = false;
    } else {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  };
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) absorb(x, y);
  for (const auto& [x, y] : marks) absorb(x, y);
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  auto px = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (width - 2 * pad); };
  auto py = [&](double y) { return height - pad - (y - ymin) / (ymax - ymin) * (height - 2 * pad); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << pad << "\" y1=\"" << height - pad << "\" x2=\"" << width - pad
      << "\" y2=\"" << height - pad << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\""
      << height - pad << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\" font-size=\"16\">" << x_label << "</text>\n";
  svg << "<text x=\"18\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"16\" "
      << "transform=\"rotate(-90 18 " << height / 2 << ")\">" << y_label << "</text>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    double fx = xmin + (xmax - xmin) * tick / 4.0;
    double fy = ymin + (ymax - ymin) * tick / 4.0;
    svg << "<text x=\"" << px(fx) << "\" y=\"" << height - pad + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">" << format_double(fx) << "</text>\n";
    svg << "<text x=\"" << pad - 8 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\" font-size=\"12\">" << format_double(fy) << "</text>\n";
  }
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : s.points) svg << px(x) << ',' << py(y) << ' ';
    svg << "\"/>\n";
  }
  for (const auto& [x, y] : marks)
    svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
        << "\" r=\"4\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace schrodiv
