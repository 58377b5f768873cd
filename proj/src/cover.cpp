#include "eres/cover.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "eres/error.hpp"
#include "eres/graph.hpp"
#include "eres/voltage.hpp"

namespace eres {

AlphaCover build_alpha_cover(const PointCloud& cloud, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("alpha must be positive");
  if (cloud.empty()) throw InvalidInput("cannot cover an empty cloud");
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    bool separated = true;
    for (std::size_t c : origin)
      if (cloud.distance(i, c) < alpha) {
        separated = false;
        break;
      }
    if (separated) origin.push_back(i);
  }
  AlphaCover cover;
  cover.centers = cloud.subset(origin);
  cover.alpha = alpha;
  cover.origin = std::move(origin);
  return cover;
}

std::vector<std::size_t> assign_voronoi(const AlphaCover& cover, const PointCloud& cloud) {
  if (cover.size() == 0) throw InvalidInput("cover has no centers");
  if (cloud.dim() != cover.centers.dim()) throw InvalidInput("cover and cloud dimensions differ");
  std::vector<std::size_t> cell(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t c = 0; c < cover.size(); ++c) {
      const double d = cover.centers.distance(cloud[i], c);
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    cell[i] = arg;
  }
  return cell;
}

void CellCounts::add(const AlphaCover& cover, const PointCloud& sample) {
  if (counts_.size() != cover.size()) throw InvalidInput("cell counts do not match the cover");
  for (std::size_t c : assign_voronoi(cover, sample)) ++counts_[c];
  total_ += sample.size();
}

void CellCounts::merge(const CellCounts& other) {
  if (other.counts_.size() != counts_.size()) throw InvalidInput("cell counts differ in size");
  for (std::size_t c = 0; c < counts_.size(); ++c) counts_[c] += other.counts_[c];
  total_ += other.total_;
}

DensityWeights CellCounts::weights() const {
  if (total_ == 0) throw InvalidInput("no samples counted");
  DensityWeights w;
  w.gamma.reserve(counts_.size());
  for (std::uint64_t c : counts_) w.gamma.push_back(static_cast<double>(c) / static_cast<double>(total_));
  return w;
}

DensityWeights estimate_density(const AlphaCover& cover, const PointCloud& sample) {
  if (sample.empty()) throw InvalidInput("density estimation needs a non-empty sample");
  CellCounts counts(cover.size());
  counts.add(cover, sample);
  return counts.weights();
}

WeightedGraph cover_graph(const AlphaCover& cover, const DensityWeights& density, const Kernel& kernel) {
  if (density.gamma.size() != cover.size())
    throw InvalidInput("density weights do not match the cover");
  return build_graph(cover.centers, kernel, Regionwise{density.gamma});
}

RegionPair cover_regions(const AlphaCover& cover, const RegionPredicate& source,
                         const RegionPredicate& sink) {
  RegionPair regions;
  for (std::size_t c = 0; c < cover.size(); ++c) {
    const bool in_source = source(cover.centers[c]);
    const bool in_sink = sink(cover.centers[c]);
    if (in_source && in_sink)
      throw InvalidInput("center " + std::to_string(c) + " lies in both the source and sink region");
    if (in_source) regions.source.push_back(c);
    if (in_sink) regions.sink.push_back(c);
  }
  if (regions.source.empty()) throw EmptyRegion("source region contains no cover center");
  if (regions.sink.empty()) throw EmptyRegion("sink region contains no cover center");
  return regions;
}

double cover_region_er(const AlphaCover& cover, const DensityWeights& density, const Kernel& kernel,
                       const RegionPredicate& source, const RegionPredicate& sink) {
  const RegionPair regions = cover_regions(cover, source, sink);
  return region_er(cover_graph(cover, density, kernel), regions);
}

void write_cover_csv(std::ostream& os, const AlphaCover& cover, const CellCounts& counts) {
  if (counts.counts().size() != cover.size()) throw InvalidInput("cell counts do not match the cover");
  const DensityWeights w = counts.weights();
  os << "center_index";
  for (std::size_t k = 0; k < cover.centers.dim(); ++k) os << ",x" << k;
  os << ",gamma,cell_count\n";
  const auto old = os.precision(17);
  for (std::size_t c = 0; c < cover.size(); ++c) {
    os << c;
    for (double x : cover.centers[c]) os << ',' << x;
    os << ',' << w.gamma[c] << ',' << counts.counts()[c] << '\n';
  }
  os.precision(old);
}

}  // namespace eres
