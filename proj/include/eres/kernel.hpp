#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eres/point_cloud.hpp"

namespace eres {

/// Indicator kernel 1(d <= radius).
struct Radial {
  double radius;
};

/// exp(-d^2 / (2 sigma^2)).
struct Gaussian {
  double sigma;
};

/// Symmetric kappa-nearest-neighbour relation; not a function of distance.
struct Knn {
  std::size_t kappa;
};

using Kernel = std::variant<Radial, Gaussian, Knn>;

/// Throws InvalidInput unless the kernel parameter is strictly positive and finite.
void validate(const Kernel& kernel);

/// Kernel value in [0,1] at the given distance. Knn has no pointwise value and
/// is rejected, as are negative or non-finite distances.
double eval_kernel(const Kernel& kernel, double distance);

/// Parses "radial:0.08", "gaussian:0.5" or "knn:100".
Kernel parse_kernel(std::string_view text);
std::string to_string(const Kernel& kernel);

/// Indices of the k nearest neighbours of every point, nearest first, self
/// excluded. Equal distances are ordered by index. Requires 1 <= k < n.
std::vector<std::vector<std::size_t>> nearest_neighbors(const PointCloud& cloud, std::size_t k);

/// Maximum over points of the distance to the k-th nearest neighbour.
double max_knn_distance(const PointCloud& cloud, std::size_t k);

struct IndexPair {
  std::size_t i;
  std::size_t j;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Unordered pairs {i,j} (i < j, sorted) with j among the kappa nearest
/// neighbours of i or i among those of j.
std::vector<IndexPair> knn_adjacency(const PointCloud& cloud, std::size_t kappa);

}  // namespace eres
