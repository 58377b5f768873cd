#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <vector>

#include "eres/dirichlet.hpp"
#include "eres/graph.hpp"
#include "eres/spd_solver.hpp"

namespace eres {

/// Dense Moore-Penrose pseudoinverse of the Laplacian via a symmetric
/// eigendecomposition. Eigenvalues below 1e-12 times the largest are treated
/// as zero. Intended for small graphs and as a reference.
Eigen::MatrixXd laplacian_pseudoinverse(const WeightedGraph& graph);

/// Pairwise effective resistance with one factorization per connected
/// component, shared by every query.
///
/// Each component is grounded at its lowest-index node; the grounded
/// Laplacian is positive definite and its inverse agrees with L^+ on
/// differences e_i - e_j, so R(i,j) = (e_i - e_j)^T L_g^{-1} (e_i - e_j).
class PairwiseResistance {
public:
  explicit PairwiseResistance(const WeightedGraph& graph);

  /// Throws InvalidInput for i == j or out-of-range nodes, NoPath when i and j
  /// lie in different components.
  double operator()(std::size_t i, std::size_t j) const;

  std::size_t size() const noexcept { return component_.size(); }

private:
  struct Block {
    std::vector<std::size_t> nodes;  // nodes[0] is the ground
    SpdSolver solver;
  };
  std::vector<std::size_t> component_;
  std::vector<std::ptrdiff_t> row_;  // position in the grounded block, -1 for the ground
  std::vector<Block> blocks_;
};

/// R(i,j) for one pair. Prefer PairwiseResistance for repeated queries.
double pairwise_er(const WeightedGraph& graph, std::size_t i, std::size_t j);

/// M/M_EE = M_KK - M_KE M_EE^{-1} M_EK for the kept indices K (ascending
/// complement of `eliminate`). M_EE must be symmetric positive definite;
/// SingularBlock otherwise.
Eigen::MatrixXd schur_complement(const Eigen::MatrixXd& matrix,
                                 std::span<const std::size_t> eliminate);

/// Sparse variant: M_EE is factorized once and reused for every kept column.
/// The result is dense on the kept indices.
Eigen::MatrixXd schur_complement(const SparseMatrix& matrix,
                                 std::span<const std::size_t> eliminate);

/// Set-to-set effective resistance
///   R(A,B) = (e_A^T (L / L_cc) e_A)^{-1},  X_c = X \ (A ∪ B),
/// with the quadratic form expanded as 1^T L_AA 1 - b^T L_cc^{-1} b for
/// b = L_cA 1. Interior nodes that reach neither set are dropped with a
/// warning. NoPath when no source node reaches a sink node.
double set_er(const WeightedGraph& graph, const RegionPair& regions);

/// Graph with each listed set collapsed into a single node, L' = P^T L P.
/// Nodes outside every set keep their relative order at rows 0..c-1; set p
/// becomes row c+p.
struct ReducedGraph {
  WeightedGraph graph;
  SparseMatrix laplacian;
  std::vector<std::size_t> set_index;  // set p -> row
  std::vector<std::size_t> node_map;   // original node -> row
};

ReducedGraph reduce_graph(const WeightedGraph& graph,
                          const std::vector<std::vector<std::size_t>>& sets);

/// Degree of the node obtained by collapsing `set`:
/// sum of member degrees minus the internal weights counted in both directions.
double aggregated_degree(const WeightedGraph& graph, std::span<const std::size_t> set);

/// 1/deg_a + 1/deg_b.
double von_luxburg_limit(double deg_a, double deg_b);

struct DeviationStats {
  double max_rel = 0.0;
  double mean_rel = 0.0;
};

/// Max and mean of |R_i - eta_i| / R_i.
DeviationStats deviation_stats(std::span<const double> resistances, std::span<const double> limits);

}  // namespace eres
