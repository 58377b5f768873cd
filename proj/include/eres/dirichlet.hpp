#pragma once

#include <cstddef>
#include <vector>

#include "eres/graph.hpp"

namespace eres {

/// Source and sink node sets of a set-to-set resistance query.
struct RegionPair {
  std::vector<std::size_t> source;
  std::vector<std::size_t> sink;
};

/// Throws InvalidInput unless both sets are non-empty, disjoint, free of
/// repeats and index nodes < n.
void validate(const RegionPair& regions, std::size_t n);

/// What to do with interior nodes that cannot reach the source or the sink.
enum class IsolatedPolicy {
  fail,
  drop,
};

/// The interior block of a Dirichlet problem with the boundary A ∪ B:
/// L_cc over interior nodes plus the couplings W_{c,A}·1 and W_{c,B}·1.
struct InteriorSystem {
  static constexpr std::ptrdiff_t kNotInterior = -1;

  std::vector<std::size_t> interior;    // global ids, ascending
  std::vector<std::size_t> dropped;     // interior nodes with no path to the boundary
  std::vector<std::ptrdiff_t> local;    // global id -> row of l_cc, or kNotInterior
  SparseMatrix l_cc;
  Eigen::VectorXd source_coupling;      // W_{c,A} 1
  Eigen::VectorXd sink_coupling;        // W_{c,B} 1
};

/// Validates the regions, checks that some source node reaches some sink node
/// (NoPath otherwise) and assembles the interior block. Interior nodes in a
/// component without boundary nodes either raise NoPath or are dropped with a
/// warning, per `policy`.
InteriorSystem make_interior_system(const WeightedGraph& graph, const RegionPair& regions,
                                    IsolatedPolicy policy);

}  // namespace eres
