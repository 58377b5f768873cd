#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "eres/dirichlet.hpp"
#include "eres/graph.hpp"
#include "eres/kernel.hpp"
#include "eres/point_cloud.hpp"
#include "eres/region.hpp"

namespace eres {

/// Centers that are pairwise at least `alpha` apart and jointly within
/// `alpha` of every point they were built from.
struct AlphaCover {
  PointCloud centers;
  double alpha = 0.0;
  /// Index in the input cloud of each center.
  std::vector<std::size_t> origin;

  std::size_t size() const noexcept { return centers.size(); }
};

/// Greedy sequential insertion in data order: a point becomes a center iff it
/// is at least alpha from every existing center.
AlphaCover build_alpha_cover(const PointCloud& cloud, double alpha);

/// Nearest center of every point; ties go to the lowest center index.
std::vector<std::size_t> assign_voronoi(const AlphaCover& cover, const PointCloud& cloud);

/// Per-center gamma_i = count_i / total.
struct DensityWeights {
  std::vector<double> gamma;
};

/// Integer Voronoi cell counts. Counts from disjoint samples merge exactly,
/// so streamed estimates equal the batch estimate on the union.
class CellCounts {
public:
  explicit CellCounts(std::size_t cells = 0) : counts_(cells, 0) {}

  void add(const AlphaCover& cover, const PointCloud& sample);
  void merge(const CellCounts& other);

  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }

  /// InvalidInput when no point has been counted yet.
  DensityWeights weights() const;

private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

DensityWeights estimate_density(const AlphaCover& cover, const PointCloud& sample);

/// Cover resistor graph W_ij = gamma_i gamma_j k(c_i, c_j).
WeightedGraph cover_graph(const AlphaCover& cover, const DensityWeights& density, const Kernel& kernel);

/// Centers inside the source and sink regions (predicate evaluated at the
/// center coordinates). EmptyRegion names a region without centers;
/// InvalidInput when a center lies in both.
RegionPair cover_regions(const AlphaCover& cover, const RegionPredicate& source,
                         const RegionPredicate& sink);

/// Region ER on the cover resistor graph W_ij = gamma_i gamma_j k(c_i, c_j).
/// A center belongs to a region when the predicate holds at its coordinates.
/// EmptyRegion names the region that contains no center; InvalidInput when a
/// center lies in both.
double cover_region_er(const AlphaCover& cover, const DensityWeights& density, const Kernel& kernel,
                       const RegionPredicate& source, const RegionPredicate& sink);

/// CSV dump: center_index,x0,...,x{d-1},gamma,cell_count.
void write_cover_csv(std::ostream& os, const AlphaCover& cover, const CellCounts& counts);

}  // namespace eres
