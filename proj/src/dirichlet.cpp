#include "eres/dirichlet.hpp"

#include <string>

#include "eres/error.hpp"
#include "eres/log.hpp"

namespace eres {

void validate(const RegionPair& regions, std::size_t n) {
  if (regions.source.empty()) throw InvalidInput("source region is empty");
  if (regions.sink.empty()) throw InvalidInput("sink region is empty");
  std::vector<char> seen(n, 0);
  for (std::size_t i : regions.source) {
    if (i >= n) throw InvalidInput("source index " + std::to_string(i) + " out of range");
    if (seen[i]) throw InvalidInput("source index " + std::to_string(i) + " repeated");
    seen[i] = 1;
  }
  for (std::size_t i : regions.sink) {
    if (i >= n) throw InvalidInput("sink index " + std::to_string(i) + " out of range");
    if (seen[i] == 1) throw InvalidInput("source and sink overlap at node " + std::to_string(i));
    if (seen[i] == 2) throw InvalidInput("sink index " + std::to_string(i) + " repeated");
    seen[i] = 2;
  }
}

InteriorSystem make_interior_system(const WeightedGraph& graph, const RegionPair& regions,
                                    IsolatedPolicy policy) {
  const std::size_t n = graph.size();
  validate(regions, n);

  // 0 interior, 1 source, 2 sink
  std::vector<char> role(n, 0);
  for (std::size_t i : regions.source) role[i] = 1;
  for (std::size_t i : regions.sink) role[i] = 2;

  const auto comp = graph.components();
  std::size_t n_comp = 0;
  for (std::size_t c : comp) n_comp = std::max(n_comp, c + 1);
  std::vector<char> has_source(n_comp, 0), has_sink(n_comp, 0);
  for (std::size_t i : regions.source) has_source[comp[i]] = 1;
  for (std::size_t i : regions.sink) has_sink[comp[i]] = 1;
  bool connected = false;
  for (std::size_t c = 0; c < n_comp; ++c) connected = connected || (has_source[c] && has_sink[c]);
  if (!connected) throw NoPath("no path connects the source region to the sink region");

  InteriorSystem sys;
  sys.local.assign(n, InteriorSystem::kNotInterior);
  for (std::size_t i = 0; i < n; ++i) {
    if (role[i] != 0) continue;
    if (!has_source[comp[i]] && !has_sink[comp[i]]) {
      sys.dropped.push_back(i);
      continue;
    }
    sys.local[i] = static_cast<std::ptrdiff_t>(sys.interior.size());
    sys.interior.push_back(i);
  }
  if (!sys.dropped.empty()) {
    if (policy == IsolatedPolicy::fail)
      throw NoPath(std::to_string(sys.dropped.size()) +
                   " interior node(s) have no path to the source or sink, e.g. node " +
                   std::to_string(sys.dropped.front()));
    warn("dropping " + std::to_string(sys.dropped.size()) +
         " interior node(s) with no path to the source or sink");
  }

  const auto m = static_cast<Eigen::Index>(sys.interior.size());
  sys.l_cc.resize(m, m);
  sys.source_coupling = Eigen::VectorXd::Zero(m);
  sys.sink_coupling = Eigen::VectorXd::Zero(m);

  Eigen::VectorXi per_column(m);
  for (Eigen::Index c = 0; c < m; ++c) {
    int count = 1;
    graph.for_each_neighbor(sys.interior[static_cast<std::size_t>(c)], [&](std::size_t j, double) {
      if (sys.local[j] != InteriorSystem::kNotInterior) ++count;
    });
    per_column[c] = count;
  }
  sys.l_cc.reserve(per_column);

  for (Eigen::Index c = 0; c < m; ++c) {
    const std::size_t gi = sys.interior[static_cast<std::size_t>(c)];
    bool diag_done = false;
    // Neighbours arrive in ascending global order, and local ids are monotone in it.
    graph.for_each_neighbor(gi, [&](std::size_t j, double w) {
      const auto lj = sys.local[j];
      if (lj == InteriorSystem::kNotInterior) {
        if (role[j] == 1) sys.source_coupling[c] += w;
        else if (role[j] == 2) sys.sink_coupling[c] += w;
        return;
      }
      if (!diag_done && lj > c) {
        sys.l_cc.insert(c, c) = graph.degree(gi);
        diag_done = true;
      }
      sys.l_cc.insert(lj, c) = -w;
    });
    if (!diag_done) sys.l_cc.insert(c, c) = graph.degree(gi);
  }
  sys.l_cc.makeCompressed();
  return sys;
}

}  // namespace eres
