#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "eres/point_cloud.hpp"

namespace eres {

/// Membership test for a region of the ambient space.
using RegionPredicate = std::function<bool(PointView)>;

/// Closed ball {x : d(x, center) <= radius}.
struct RegionSpec {
  std::vector<double> center;
  double radius = 0.0;

  bool contains(PointView x, MetricFn metric = &euclidean) const;
  RegionPredicate predicate(MetricFn metric = &euclidean) const;
};

/// Indices of the points inside the ball, ascending; possibly empty.
/// InvalidInput for a non-positive radius or a dimension mismatch.
std::vector<std::size_t> ball_region(const PointCloud& cloud, const RegionSpec& spec);

/// Indices of the points satisfying the predicate, ascending.
std::vector<std::size_t> select(const PointCloud& cloud, const RegionPredicate& region);

}  // namespace eres
