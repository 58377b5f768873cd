#include "eres/point_cloud.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "eres/error.hpp"

namespace eres {

double euclidean(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords, MetricFn metric)
    : dim_(dim), coords_(std::move(coords)), metric_(metric) {
  if (dim_ == 0) throw InvalidInput("point cloud dimension must be >= 1");
  if (coords_.size() % dim_ != 0)
    throw InvalidInput("coordinate buffer size is not a multiple of the dimension");
  for (double c : coords_)
    if (!std::isfinite(c)) throw InvalidInput("point cloud contains a non-finite coordinate");
  if (metric_ == nullptr) throw InvalidInput("metric must not be null");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows, MetricFn metric) {
  if (rows.empty()) throw InvalidInput("point cloud needs at least one row");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw InvalidInput("points have mixed dimensions");
    coords.insert(coords.end(), r.begin(), r.end());
  }
  return PointCloud(dim, std::move(coords), metric);
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
  std::vector<double> coords;
  coords.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    if (i >= size()) throw InvalidInput("subset index out of range");
    const auto p = (*this)[i];
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(dim_, std::move(coords), metric_);
}

PointCloud PointCloud::prefix(std::size_t count) const {
  if (count > size()) throw InvalidInput("prefix longer than the cloud");
  return PointCloud(dim_, std::vector<double>(coords_.begin(), coords_.begin() + count * dim_),
                    metric_);
}

namespace {

struct Token {
  double value;
  bool integral;
};

std::vector<Token> split_line(const std::string& line, const std::filesystem::path& path,
                              std::size_t lineno) {
  std::vector<Token> out;
  std::size_t pos = 0;
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; };
  while (pos < line.size()) {
    while (pos < line.size() && is_sep(line[pos])) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && !is_sep(line[end])) ++end;
    const char* first = line.data() + pos;
    const char* last = line.data() + end;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": cannot parse '" +
                    std::string(first, last) + "' as a number");
    bool integral = true;
    for (const char* c = first; c != last; ++c)
      if (*c == '.' || *c == 'e' || *c == 'E' || *c == 'n' || *c == 'i') integral = false;
    out.push_back({v, integral});
    pos = end;
  }
  return out;
}

}  // namespace

PointCloud read_points(const std::filesystem::path& path, LabelColumn labels) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open point file " + path.string());

  std::vector<std::vector<Token>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto row = split_line(line, path, lineno);
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                    std::to_string(rows.front().size()) + " columns, got " +
                    std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("point file " + path.string() + " contains no points");

  const std::size_t cols = rows.front().size();
  bool drop = labels == LabelColumn::present;
  if (labels == LabelColumn::detect && cols >= 2) {
    bool last_integral = true, other_fractional = false;
    for (const auto& r : rows) {
      last_integral = last_integral && r.back().integral;
      for (std::size_t k = 0; k + 1 < cols; ++k) other_fractional = other_fractional || !r[k].integral;
    }
    drop = last_integral && other_fractional;
  }
  const std::size_t dim = drop ? cols - 1 : cols;
  if (dim == 0) throw IoError("point file " + path.string() + " has no coordinate columns");

  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < dim; ++k) coords.push_back(r[k].value);
  try {
    return PointCloud(dim, std::move(coords));
  } catch (const InvalidInput& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace eres
