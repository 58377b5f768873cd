#include "eres/records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "eres/error.hpp"

namespace eres {

namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

template <class T>
T parse_number(const std::string& s, std::size_t lineno) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw IoError("csv line " + std::to_string(lineno) + ": bad number '" + s + "'");
  return v;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    if (r.experiment.find(',') != std::string::npos || r.quantity.find(',') != std::string::npos)
      throw InvalidInput("record labels must not contain commas");
    os << r.experiment << ',' << r.n << ',' << r.quantity << ',' << format_real(r.value) << ','
       << r.seed << ',' << format_real(r.wall_ms) << '\n';
  }
}

std::vector<ExperimentRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("csv is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw IoError("unexpected csv header '" + line + "'");
  std::vector<ExperimentRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 6) throw IoError("csv line " + std::to_string(lineno) + ": expected 6 fields");
    out.push_back({f[0], parse_number<std::size_t>(f[1], lineno), f[2],
                   parse_number<double>(f[3], lineno), parse_number<std::uint64_t>(f[4], lineno),
                   parse_number<double>(f[5], lineno)});
  }
  return out;
}

void write_svg(std::ostream& os, const std::vector<ExperimentRecord>& records,
               const std::string& title) {
  constexpr double width = 720, height = 480, left = 70, right = 180, top = 40, bottom = 50;
  using Key = std::tuple<std::string, std::string, std::uint64_t>;
  std::map<Key, std::vector<std::pair<double, double>>> series;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : records) {
    if (r.n == 0 || !std::isfinite(r.value)) continue;
    const double x = std::log10(static_cast<double>(r.n));
    series[{r.experiment, r.quantity, r.seed}].emplace_back(x, r.value);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, r.value);
    ymax = std::max(ymax, r.value);
  }
  if (series.empty()) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  static const char* palette[] = {"#d6336c", "#2f9e44", "#868e96", "#1c7ed6",
                                  "#f08c00", "#7048e8", "#0ca678", "#e8590c"};
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
     << xml_escape(title) << "</text>\n"
     << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // log-x ticks at powers of ten plus the plotted range ends
  for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e) {
    os << "<line x1=\"" << sx(e) << "\" y1=\"" << top + ph << "\" x2=\"" << sx(e) << "\" y2=\""
       << top + ph + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << sx(e) << "\" y=\"" << top + ph + 20
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">1e" << e
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10
     << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">n (log scale)</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = ymin + (ymax - ymin) * k / 4.0;
    os << "<text x=\"" << left - 6 << "\" y=\"" << sy(y) + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
       << xml_escape(format_real(std::round(y * 1e4) / 1e4)) << "</text>\n";
  }

  std::size_t idx = 0;
  for (auto& [key, pts] : series) {
    std::sort(pts.begin(), pts.end());
    const char* colour = palette[idx % std::size(palette)];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) os << sx(x) << ',' << sy(y) << ' ';
    os << "\"/>\n";
    const auto& [exp, quantity, seed] = key;
    os << "<text x=\"" << left + pw + 8 << "\" y=\"" << top + 14 + 16.0 * static_cast<double>(idx)
       << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << colour << "\">"
       << xml_escape(quantity + " (seed " + std::to_string(seed) + ")") << "</text>\n";
    ++idx;
  }
  os << "</svg>\n";
}

std::vector<std::filesystem::path> emit(const std::vector<ExperimentRecord>& records,
                                        const std::vector<OutputFormat>& formats,
                                        const std::filesystem::path& dir, const std::string& stem) {
  if (records.empty()) throw InvalidInput("nothing to emit: no records");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (OutputFormat f : formats) {
    const auto path = dir / (stem + (f == OutputFormat::csv ? ".csv" : ".svg"));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    if (f == OutputFormat::csv) write_csv(out, records);
    else write_svg(out, records, stem);
    out.flush();
    if (!out) throw IoError("failed while writing " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace eres
