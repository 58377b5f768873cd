#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstddef>
#include <iosfwd>
#include <variant>
#include <vector>

#include "eres/kernel.hpp"
#include "eres/point_cloud.hpp"

namespace eres {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct Edge {
  std::size_t i;
  std::size_t j;
  double weight;
};

/// Symmetric non-negative weight matrix with zero diagonal and cached degrees.
///
/// Weights are stored once per direction in a compressed column matrix; every
/// constructor mirrors a single value per unordered pair, so W(i,j) and W(j,i)
/// are bit-identical.
class WeightedGraph {
public:
  WeightedGraph() = default;

  /// Builds from undirected edges. Repeated pairs are summed (parallel
  /// conductances); zero weights are skipped. Throws InvalidInput on a
  /// self-loop, a negative or non-finite weight, or an index >= n.
  static WeightedGraph from_edges(std::size_t n, const std::vector<Edge>& edges);

  /// Takes a symmetric weight matrix as-is after validating it.
  static WeightedGraph from_weights(SparseMatrix weights);

  /// Skips validation; the caller guarantees a compressed symmetric matrix
  /// with zero diagonal and non-negative entries.
  static WeightedGraph adopt(SparseMatrix weights);

  std::size_t size() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t edge_count() const noexcept { return static_cast<std::size_t>(weights_.nonZeros()) / 2; }

  const SparseMatrix& weights() const noexcept { return weights_; }
  const Eigen::VectorXd& degrees() const noexcept { return degrees_; }
  double degree(std::size_t i) const { return degrees_[static_cast<Eigen::Index>(i)]; }
  double weight(std::size_t i, std::size_t j) const;

  /// Same graph with every weight multiplied by c > 0.
  WeightedGraph scaled(double c) const;

  /// L = D - W.
  SparseMatrix laplacian() const;

  /// Connected-component label per node; labels are 0..k-1 in order of the
  /// lowest node index of each component.
  std::vector<std::size_t> components() const;

  template <class F>
  void for_each_neighbor(std::size_t i, F&& f) const {
    for (SparseMatrix::InnerIterator it(weights_, static_cast<Eigen::Index>(i)); it; ++it)
      f(static_cast<std::size_t>(it.row()), it.value());
  }

  /// Debug dump: one "i j w" line per unordered edge.
  void dump(std::ostream& os) const;

private:
  SparseMatrix weights_;
  Eigen::VectorXd degrees_;
};

struct Unscaled {};
/// Every weight times 1/n^2 with n the full sample size.
struct Pointwise {};
/// Edge (i,j) times gamma_i * gamma_j.
struct Regionwise {
  std::vector<double> gamma;
};
using Scaling = std::variant<Unscaled, Pointwise, Regionwise>;

/// Gaussian weights below this fraction of the largest weight are dropped.
inline constexpr double kGaussianSparsityFloor = 1e-12;

/// Kernel graph on the cloud with the requested edge scaling.
WeightedGraph build_graph(const PointCloud& cloud, const Kernel& kernel, const Scaling& scaling);

/// Laplacian of the graph.
inline SparseMatrix laplacian(const WeightedGraph& graph) { return graph.laplacian(); }

}  // namespace eres
