#include "eres/resistance.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "eres/error.hpp"

namespace eres {

namespace {

constexpr std::ptrdiff_t kSkip = -1;

// Principal submatrix on the rows/columns with map[i] >= 0. The map must be
// increasing over the selected indices.
SparseMatrix principal_submatrix(const SparseMatrix& m, const std::vector<std::ptrdiff_t>& map,
                                 Eigen::Index size) {
  SparseMatrix out(size, size);
  Eigen::VectorXi per_column = Eigen::VectorXi::Zero(size);
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    if (map[static_cast<std::size_t>(c)] == kSkip) continue;
    for (SparseMatrix::InnerIterator it(m, c); it; ++it)
      if (map[static_cast<std::size_t>(it.row())] != kSkip) ++per_column[map[static_cast<std::size_t>(c)]];
  }
  out.reserve(per_column);
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    const auto lc = map[static_cast<std::size_t>(c)];
    if (lc == kSkip) continue;
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      const auto lr = map[static_cast<std::size_t>(it.row())];
      if (lr != kSkip) out.insert(lr, lc) = it.value();
    }
  }
  out.makeCompressed();
  return out;
}

std::vector<std::size_t> complement(std::span<const std::size_t> eliminate, std::size_t n,
                                    std::vector<std::ptrdiff_t>& elim_pos) {
  elim_pos.assign(n, kSkip);
  for (std::size_t r = 0; r < eliminate.size(); ++r) {
    const std::size_t e = eliminate[r];
    if (e >= n) throw InvalidInput("eliminated index " + std::to_string(e) + " out of range");
    if (elim_pos[e] != kSkip) throw InvalidInput("eliminated index " + std::to_string(e) + " repeated");
    elim_pos[e] = static_cast<std::ptrdiff_t>(r);
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (elim_pos[i] == kSkip) kept.push_back(i);
  return kept;
}

void check_set(std::span<const std::size_t> set, std::size_t n, std::vector<char>& seen,
               const char* what) {
  if (set.empty()) throw InvalidInput(std::string(what) + " is empty");
  for (std::size_t i : set) {
    if (i >= n) throw InvalidInput(std::string(what) + " index " + std::to_string(i) + " out of range");
    if (seen[i]) throw InvalidInput(std::string(what) + " overlaps at node " + std::to_string(i));
    seen[i] = 1;
  }
}

}  // namespace

Eigen::MatrixXd laplacian_pseudoinverse(const WeightedGraph& graph) {
  const Eigen::MatrixXd l = Eigen::MatrixXd(graph.laplacian());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd inv(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    inv[k] = std::abs(lambda[k]) > cutoff ? 1.0 / lambda[k] : 0.0;
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

PairwiseResistance::PairwiseResistance(const WeightedGraph& graph)
    : component_(graph.components()), row_(graph.size(), kSkip) {
  std::size_t n_comp = 0;
  for (std::size_t c : component_) n_comp = std::max(n_comp, c + 1);
  std::vector<std::vector<std::size_t>> members(n_comp);
  for (std::size_t i = 0; i < component_.size(); ++i) members[component_[i]].push_back(i);

  const SparseMatrix l = graph.laplacian();
  blocks_.reserve(n_comp);
  std::vector<std::ptrdiff_t> map(graph.size(), kSkip);
  for (auto& nodes : members) {
    // nodes[0] is grounded; the rest are numbered in ascending order.
    for (std::size_t k = 1; k < nodes.size(); ++k) map[nodes[k]] = static_cast<std::ptrdiff_t>(k - 1);
    for (std::size_t k = 1; k < nodes.size(); ++k) row_[nodes[k]] = static_cast<std::ptrdiff_t>(k - 1);
    SparseMatrix grounded =
        principal_submatrix(l, map, static_cast<Eigen::Index>(nodes.size() - 1));
    for (std::size_t k = 1; k < nodes.size(); ++k) map[nodes[k]] = kSkip;
    blocks_.push_back(Block{std::move(nodes), SpdSolver(grounded)});
  }
}

double PairwiseResistance::operator()(std::size_t i, std::size_t j) const {
  const std::size_t n = component_.size();
  if (i >= n || j >= n) throw InvalidInput("node index out of range");
  if (i == j) throw InvalidInput("effective resistance needs two distinct nodes");
  if (component_[i] != component_[j])
    throw NoPath("nodes " + std::to_string(i) + " and " + std::to_string(j) +
                 " lie in different components");
  const Block& b = blocks_[component_[i]];
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(b.solver.size());
  if (row_[i] != kSkip) rhs[row_[i]] += 1.0;
  if (row_[j] != kSkip) rhs[row_[j]] -= 1.0;
  const Eigen::VectorXd x = b.solver.solve(rhs);
  const double xi = row_[i] == kSkip ? 0.0 : x[row_[i]];
  const double xj = row_[j] == kSkip ? 0.0 : x[row_[j]];
  return xi - xj;
}

double pairwise_er(const WeightedGraph& graph, std::size_t i, std::size_t j) {
  if (i >= graph.size() || j >= graph.size()) throw InvalidInput("node index out of range");
  if (i == j) throw InvalidInput("effective resistance needs two distinct nodes");
  return PairwiseResistance(graph)(i, j);
}

Eigen::MatrixXd schur_complement(const Eigen::MatrixXd& matrix,
                                 std::span<const std::size_t> eliminate) {
  if (matrix.rows() != matrix.cols()) throw InvalidInput("Schur complement needs a square matrix");
  const auto n = static_cast<std::size_t>(matrix.rows());
  std::vector<std::ptrdiff_t> pos;
  const auto kept = complement(eliminate, n, pos);
  const auto k = static_cast<Eigen::Index>(kept.size());
  const auto e = static_cast<Eigen::Index>(eliminate.size());

  Eigen::MatrixXd a(k, k), b(k, e), d(e, e);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) a(r, c) = matrix(kept[r], kept[c]);
    for (Eigen::Index c = 0; c < e; ++c) b(r, c) = matrix(kept[r], eliminate[c]);
  }
  for (Eigen::Index r = 0; r < e; ++r)
    for (Eigen::Index c = 0; c < e; ++c) d(r, c) = matrix(eliminate[r], eliminate[c]);
  if (e == 0) return a;

  Eigen::LLT<Eigen::MatrixXd> llt(d);
  if (llt.info() != Eigen::Success || !(llt.rcond() > 1e-14))
    throw SingularBlock("eliminated block is singular or not positive definite");
  return a - b * llt.solve(b.transpose());
}

Eigen::MatrixXd schur_complement(const SparseMatrix& matrix,
                                 std::span<const std::size_t> eliminate) {
  if (matrix.rows() != matrix.cols()) throw InvalidInput("Schur complement needs a square matrix");
  const auto n = static_cast<std::size_t>(matrix.rows());
  std::vector<std::ptrdiff_t> pos;
  const auto kept = complement(eliminate, n, pos);
  const auto k = static_cast<Eigen::Index>(kept.size());
  const auto e = static_cast<Eigen::Index>(eliminate.size());

  std::vector<std::ptrdiff_t> kept_pos(n, kSkip);
  for (std::size_t r = 0; r < kept.size(); ++r) kept_pos[kept[r]] = static_cast<std::ptrdiff_t>(r);

  // principal_submatrix needs an increasing map; renumber the eliminated set.
  std::vector<std::ptrdiff_t> elim_sorted(n, kSkip);
  std::vector<std::size_t> elim_order;
  for (std::size_t i = 0; i < n; ++i)
    if (pos[i] != kSkip) {
      elim_sorted[i] = static_cast<std::ptrdiff_t>(elim_order.size());
      elim_order.push_back(i);
    }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(e, k);  // M_EK in sorted elimination order
  for (Eigen::Index c = 0; c < matrix.outerSize(); ++c) {
    const auto kc = kept_pos[static_cast<std::size_t>(c)];
    if (kc == kSkip) continue;
    for (SparseMatrix::InnerIterator it(matrix, c); it; ++it) {
      const auto row = static_cast<std::size_t>(it.row());
      if (kept_pos[row] != kSkip) a(kept_pos[row], kc) = it.value();
      else b(elim_sorted[row], kc) = it.value();
    }
  }
  if (e == 0) return a;

  const SparseMatrix d = principal_submatrix(matrix, elim_sorted, e);
  const SpdSolver solver(d);
  const Eigen::MatrixXd x = solver.solve(b);
  Eigen::MatrixXd s = a - b.transpose() * x;
  return 0.5 * (s + s.transpose());
}

double set_er(const WeightedGraph& graph, const RegionPair& regions) {
  const InteriorSystem sys = make_interior_system(graph, regions, IsolatedPolicy::drop);
  const SpdSolver solver(sys.l_cc);
  const Eigen::VectorXd& b = sys.source_coupling;
  const double boundary = aggregated_degree(graph, regions.source);
  const double form = sys.interior.empty() ? boundary : boundary - b.dot(solver.solve(b));
  if (!(form > 0.0))
    throw NoPath("source and sink regions are not connected (Schur form " + std::to_string(form) + ")");
  return 1.0 / form;
}

ReducedGraph reduce_graph(const WeightedGraph& graph,
                          const std::vector<std::vector<std::size_t>>& sets) {
  const std::size_t n = graph.size();
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, unset);
  for (std::size_t p = 0; p < sets.size(); ++p) {
    if (sets[p].empty()) throw InvalidInput("set " + std::to_string(p) + " is empty");
    for (std::size_t i : sets[p]) {
      if (i >= n) throw InvalidInput("set index " + std::to_string(i) + " out of range");
      if (owner[i] != unset)
        throw InvalidInput("sets overlap (or repeat) at node " + std::to_string(i));
      owner[i] = p;
    }
  }

  ReducedGraph out;
  out.node_map.assign(n, unset);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (owner[i] == unset) out.node_map[i] = next++;
  for (std::size_t p = 0; p < sets.size(); ++p) out.set_index.push_back(next + p);
  for (std::size_t i = 0; i < n; ++i)
    if (owner[i] != unset) out.node_map[i] = out.set_index[owner[i]];

  std::vector<Edge> edges;
  edges.reserve(graph.edge_count());
  const SparseMatrix& w = graph.weights();
  for (Eigen::Index c = 0; c < w.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(w, c); it; ++it) {
      if (it.row() >= c) continue;
      const std::size_t a = out.node_map[static_cast<std::size_t>(it.row())];
      const std::size_t b = out.node_map[static_cast<std::size_t>(c)];
      if (a != b) edges.push_back({a, b, it.value()});
    }
  out.graph = WeightedGraph::from_edges(next + sets.size(), edges);
  out.laplacian = out.graph.laplacian();
  return out;
}

double aggregated_degree(const WeightedGraph& graph, std::span<const std::size_t> set) {
  const std::size_t n = graph.size();
  std::vector<char> in(n, 0);
  check_set(set, n, in, "set");
  double total = 0.0;
  double internal = 0.0;
  for (std::size_t i : set) {
    total += graph.degree(i);
    graph.for_each_neighbor(i, [&](std::size_t j, double w) {
      if (in[j]) internal += w;
    });
  }
  return total - internal;
}

double von_luxburg_limit(double deg_a, double deg_b) {
  if (!(deg_a > 0.0) || !(deg_b > 0.0)) throw InvalidInput("degrees must be positive");
  return 1.0 / deg_a + 1.0 / deg_b;
}

DeviationStats deviation_stats(std::span<const double> resistances, std::span<const double> limits) {
  if (resistances.size() != limits.size())
    throw InvalidInput("resistances and limits differ in length");
  if (resistances.empty()) throw InvalidInput("deviation stats need at least one pair");
  DeviationStats s;
  double sum = 0.0;
  for (std::size_t k = 0; k < resistances.size(); ++k) {
    const double r = resistances[k];
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("resistances must be positive");
    const double rel = std::abs(r - limits[k]) / r;
    s.max_rel = std::max(s.max_rel, rel);
    sum += rel;
  }
  s.mean_rel = sum / static_cast<double>(resistances.size());
  return s;
}

}  // namespace eres
