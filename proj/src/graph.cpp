#include "eres/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "eres/error.hpp"

namespace eres {

namespace {

using Triplet = Eigen::Triplet<double, SparseMatrix::StorageIndex>;

Eigen::VectorXd column_sums(const SparseMatrix& w) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(w.cols());
  for (Eigen::Index c = 0; c < w.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(w, c); it; ++it) d[c] += it.value();
  return d;
}

// Appends both orientations of one unordered pair.
void push_pair(std::vector<Triplet>& t, std::size_t i, std::size_t j, double w) {
  const auto a = static_cast<SparseMatrix::StorageIndex>(i);
  const auto b = static_cast<SparseMatrix::StorageIndex>(j);
  t.emplace_back(a, b, w);
  t.emplace_back(b, a, w);
}

SparseMatrix assemble(std::size_t n, std::vector<Triplet>& triplets) {
  SparseMatrix w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  w.setFromTriplets(triplets.begin(), triplets.end());
  triplets.clear();
  triplets.shrink_to_fit();
  w.makeCompressed();
  return w;
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<Triplet> t;
  t.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    if (e.i >= n || e.j >= n) throw InvalidInput("edge endpoint out of range");
    if (e.i == e.j) throw InvalidInput("self-loops are not allowed");
    if (!std::isfinite(e.weight) || e.weight < 0.0)
      throw InvalidInput("edge weights must be finite and non-negative");
    if (e.weight == 0.0) continue;
    // Canonical orientation so that summed duplicates are identical in both halves.
    push_pair(t, std::min(e.i, e.j), std::max(e.i, e.j), e.weight);
  }
  return adopt(assemble(n, t));
}

WeightedGraph WeightedGraph::from_weights(SparseMatrix weights) {
  if (weights.rows() != weights.cols()) throw InvalidInput("weight matrix must be square");
  weights.prune(0.0);
  weights.makeCompressed();
  for (Eigen::Index c = 0; c < weights.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(weights, c); it; ++it) {
      if (it.row() == it.col()) throw InvalidInput("weight matrix must have a zero diagonal");
      if (!std::isfinite(it.value()) || it.value() < 0.0)
        throw InvalidInput("edge weights must be finite and non-negative");
    }
  const SparseMatrix transposed = weights.transpose();
  if ((weights - transposed).norm() != 0.0) throw InvalidInput("weight matrix must be symmetric");
  return adopt(std::move(weights));
}

WeightedGraph WeightedGraph::adopt(SparseMatrix weights) {
  WeightedGraph g;
  g.weights_ = std::move(weights);
  g.degrees_ = column_sums(g.weights_);
  return g;
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw InvalidInput("node index out of range");
  return weights_.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

WeightedGraph WeightedGraph::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("scale factor must be positive");
  WeightedGraph g;
  g.weights_ = weights_ * c;
  g.degrees_ = column_sums(g.weights_);
  return g;
}

SparseMatrix WeightedGraph::laplacian() const {
  SparseMatrix l = -weights_;
  for (Eigen::Index i = 0; i < l.rows(); ++i) l.coeffRef(i, i) = degrees_[i];
  l.makeCompressed();
  return l;
}

std::vector<std::size_t> WeightedGraph::components() const {
  const std::size_t n = size();
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, unset);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for_each_neighbor(u, [&](std::size_t v, double) {
        if (label[v] == unset) {
          label[v] = next;
          stack.push_back(v);
        }
      });
    }
    ++next;
  }
  return label;
}

void WeightedGraph::dump(std::ostream& os) const {
  os << "# n=" << size() << " edges=" << edge_count() << '\n';
  for (Eigen::Index c = 0; c < weights_.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(weights_, c); it; ++it)
      if (it.row() < c) os << it.row() << ' ' << c << ' ' << it.value() << '\n';
}

WeightedGraph build_graph(const PointCloud& cloud, const Kernel& kernel, const Scaling& scaling) {
  validate(kernel);
  const std::size_t n = cloud.size();
  if (n < 2) throw InvalidInput("graph construction needs at least two points");

  const std::vector<double>* gamma = nullptr;
  if (const auto* rw = std::get_if<Regionwise>(&scaling)) {
    if (rw->gamma.size() != n)
      throw InvalidInput("regionwise gamma has length " + std::to_string(rw->gamma.size()) +
                         " but the cloud has " + std::to_string(n) + " points");
    double total = 0.0;
    for (double g : rw->gamma) {
      if (!(g >= 0.0 && g <= 1.0)) throw InvalidInput("regionwise gamma must lie in [0,1]");
      total += g;
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("regionwise gamma must sum to 1");
    gamma = &rw->gamma;
  }
  const double uniform =
      std::holds_alternative<Pointwise>(scaling) ? 1.0 / (static_cast<double>(n) * static_cast<double>(n)) : 1.0;
  auto scale = [&](std::size_t i, std::size_t j) {
    return gamma ? (*gamma)[i] * (*gamma)[j] : uniform;
  };

  std::vector<Triplet> t;
  if (const auto* knn = std::get_if<Knn>(&kernel)) {
    for (const auto& e : knn_adjacency(cloud, knn->kappa)) {
      const double w = scale(e.i, e.j);
      if (w > 0.0) push_pair(t, e.i, e.j, w);
    }
    return WeightedGraph::adopt(assemble(n, t));
  }

  // Parameters were validated above; the pair loop skips per-call checks.
  const auto* radial = std::get_if<Radial>(&kernel);
  const double two_sigma_sq =
      radial ? 0.0 : 2.0 * std::get<Gaussian>(kernel).sigma * std::get<Gaussian>(kernel).sigma;
  auto value = [&](std::size_t i, std::size_t j) {
    const double d = cloud.distance(i, j);
    if (radial) return d <= radial->radius ? 1.0 : 0.0;
    return std::exp(-d * d / two_sigma_sq);
  };

  // Sparsity floor for the gaussian kernel, relative to the largest scaled weight.
  double floor = 0.0;
  if (!radial) {
    double max_w = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) max_w = std::max(max_w, scale(i, j) * value(i, j));
    floor = kGaussianSparsityFloor * max_w;
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = scale(i, j);
      if (s == 0.0) continue;
      const double w = s * value(i, j);
      if (w > 0.0 && w >= floor) push_pair(t, i, j, w);
    }
  }
  return WeightedGraph::adopt(assemble(n, t));
}

}  // namespace eres
