#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace eres {

using PointView = std::span<const double>;

/// Distance between two points of equal dimension.
using MetricFn = double (*)(PointView, PointView);

double euclidean(PointView a, PointView b);

/// n points in R^d stored row-major. Immutable after construction.
class PointCloud {
public:
  PointCloud() = default;

  /// Takes ownership of `coords` (size n*dim). Throws InvalidInput on a
  /// ragged buffer, dim == 0 or non-finite coordinates.
  PointCloud(std::size_t dim, std::vector<double> coords, MetricFn metric = &euclidean);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows,
                              MetricFn metric = &euclidean);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  PointView operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }

  double distance(std::size_t i, std::size_t j) const { return metric_((*this)[i], (*this)[j]); }
  double distance(PointView x, std::size_t i) const { return metric_(x, (*this)[i]); }
  MetricFn metric() const noexcept { return metric_; }

  const std::vector<double>& coords() const noexcept { return coords_; }

  /// Points at the given indices, in the given order.
  PointCloud subset(std::span<const std::size_t> indices) const;
  /// First `count` points.
  PointCloud prefix(std::size_t count) const;

private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  MetricFn metric_ = &euclidean;
};

enum class LabelColumn {
  /// Drop the last column when it is integer-formatted on every line while
  /// some other column is not.
  detect,
  none,
  present,
};

/// Reads a point file: one point per line, whitespace- or comma-separated
/// decimals, blank and '#' lines skipped. A trailing label column is ignored.
PointCloud read_points(const std::filesystem::path& path,
                       LabelColumn labels = LabelColumn::detect);

}  // namespace eres
