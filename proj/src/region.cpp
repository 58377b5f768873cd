#include "eres/region.hpp"

#include <cmath>

#include "eres/error.hpp"

namespace eres {

bool RegionSpec::contains(PointView x, MetricFn metric) const {
  if (x.size() != center.size()) throw InvalidInput("region and point dimensions differ");
  return metric(x, center) <= radius;
}

RegionPredicate RegionSpec::predicate(MetricFn metric) const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("region radius must be positive");
  return [spec = *this, metric](PointView x) { return spec.contains(x, metric); };
}

std::vector<std::size_t> ball_region(const PointCloud& cloud, const RegionSpec& spec) {
  if (!(spec.radius > 0.0) || !std::isfinite(spec.radius))
    throw InvalidInput("region radius must be positive");
  if (spec.center.size() != cloud.dim()) throw InvalidInput("region and cloud dimensions differ");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (cloud.distance(spec.center, i) <= spec.radius) out.push_back(i);
  return out;
}

std::vector<std::size_t> select(const PointCloud& cloud, const RegionPredicate& region) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (region(cloud[i])) out.push_back(i);
  return out;
}

}  // namespace eres
