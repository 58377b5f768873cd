#include "eres/voltage.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include "eres/error.hpp"
#include "eres/spd_solver.hpp"

namespace eres {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> pinned_boundary(const VoltageProblem& p, const InteriorSystem& sys) {
  std::vector<double> v(p.graph.size(), 0.0);
  for (std::size_t i : p.regions.source) v[i] = 1.0;
  for (std::size_t i : sys.dropped) v[i] = kNaN;
  return v;
}

}  // namespace

VoltageSolution solve_direct(const VoltageProblem& problem, IsolatedPolicy policy) {
  const InteriorSystem sys = make_interior_system(problem.graph, problem.regions, policy);
  VoltageSolution out;
  out.values = pinned_boundary(problem, sys);
  out.dropped = sys.dropped;
  if (sys.interior.empty()) return out;

  const SpdSolver solver(sys.l_cc);
  const Eigen::VectorXd vc = solver.solve(sys.source_coupling);
  for (std::size_t r = 0; r < sys.interior.size(); ++r)
    out.values[sys.interior[r]] = vc[static_cast<Eigen::Index>(r)];
  return out;
}

VoltageSolution solve_fixed_point(const VoltageProblem& problem, const FixedPointOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidInput("fixed-point tolerance must be positive");
  if (options.max_iter < 1) throw InvalidInput("fixed-point iteration cap must be >= 1");
  const InteriorSystem sys = make_interior_system(problem.graph, problem.regions, options.policy);
  VoltageSolution out;
  out.values = pinned_boundary(problem, sys);
  out.dropped = sys.dropped;
  if (sys.interior.empty()) return out;

  // A_n = D_c^{-1} W_cc and b_n = D_c^{-1} W_cA 1, as a sparse row-major operator.
  const auto m = static_cast<Eigen::Index>(sys.interior.size());
  Eigen::SparseMatrix<double, Eigen::RowMajor> a = -sys.l_cc;
  Eigen::VectorXd b(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double d = problem.graph.degree(sys.interior[static_cast<std::size_t>(r)]);
    for (decltype(a)::InnerIterator it(a, r); it; ++it)
      it.valueRef() = it.col() == r ? 0.0 : it.value() / d;
    b[r] = sys.source_coupling[r] / d;
  }
  a.prune(0.0);

  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd next(m);
  double residual = std::numeric_limits<double>::infinity();
  long it = 0;
  while (it < options.max_iter) {
    next.noalias() = a * v;
    next += b;
    residual = (next - v).cwiseAbs().maxCoeff();
    v.swap(next);
    ++it;
    if (options.history) options.history->push_back(residual);
    if (residual < options.tol) break;
  }
  if (!(residual < options.tol))
    throw NonConvergence("fixed-point iteration did not reach tol " + std::to_string(options.tol) +
                             " within " + std::to_string(options.max_iter) + " sweeps",
                         residual, it);

  for (Eigen::Index r = 0; r < m; ++r) out.values[sys.interior[static_cast<std::size_t>(r)]] = v[r];
  out.iterations = it;
  out.residual = residual;
  return out;
}

double total_current(const WeightedGraph& graph, const VoltageSolution& voltage,
                     std::span<const std::size_t> nodes) {
  if (voltage.values.size() != graph.size())
    throw InvalidInput("voltage length does not match the graph");
  double j_tot = 0.0;
  for (std::size_t i : nodes) {
    if (i >= graph.size()) throw InvalidInput("node index out of range");
    const double vi = voltage.values[i];
    graph.for_each_neighbor(i, [&](std::size_t j, double w) { j_tot += w * (vi - voltage.values[j]); });
  }
  return j_tot;
}

double region_er(const WeightedGraph& graph, const RegionPair& regions) {
  const VoltageSolution v = solve_direct({graph, regions}, IsolatedPolicy::drop);
  const double j_tot = total_current(graph, v, regions.source);
  if (!(j_tot > 0.0))
    throw NoPath("no current flows between the regions (J_tot " + std::to_string(j_tot) + ")");
  return 1.0 / j_tot;
}

double energy(const WeightedGraph& graph, std::span<const double> v) {
  if (v.size() != graph.size()) throw InvalidInput("voltage length does not match the graph");
  const SparseMatrix& w = graph.weights();
  double e = 0.0;
  for (Eigen::Index c = 0; c < w.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(w, c); it; ++it) {
      if (it.row() >= c) continue;
      const double d = v[static_cast<std::size_t>(it.row())] - v[static_cast<std::size_t>(c)];
      e += it.value() * d * d;
    }
  return e;
}

double extend_voltage(const PointCloud& cloud, const Kernel& kernel, const VoltageSolution& solution,
                      const RegionPredicate& source, const RegionPredicate& sink, PointView x) {
  if (x.size() != cloud.dim()) throw InvalidInput("query point has the wrong dimension");
  if (solution.values.size() != cloud.size())
    throw InvalidInput("voltage length does not match the cloud");
  if (source(x)) return 1.0;
  if (sink(x)) return 0.0;
  double mass = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double vi = solution.values[i];
    if (std::isnan(vi)) continue;
    const double k = eval_kernel(kernel, cloud.distance(x, i));
    mass += k;
    weighted += k * vi;
  }
  if (!(mass > 0.0)) throw IsolatedPoint("query point has no kernel weight to the sample");
  return weighted / mass;
}

void write_voltage_csv(std::ostream& os, const PointCloud& cloud, const VoltageSolution& solution) {
  if (solution.values.size() != cloud.size())
    throw InvalidInput("voltage length does not match the cloud");
  os << "node_index";
  for (std::size_t k = 0; k < cloud.dim(); ++k) os << ",x" << k;
  os << ",voltage\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    os << i;
    for (double c : cloud[i]) os << ',' << c;
    os << ',' << solution.values[i] << '\n';
  }
  os.precision(old);
}

}  // namespace eres
