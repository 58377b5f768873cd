#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "eres/dirichlet.hpp"
#include "eres/graph.hpp"
#include "eres/kernel.hpp"
#include "eres/point_cloud.hpp"
#include "eres/region.hpp"

namespace eres {

/// Voltage pinned to 1 on the source and 0 on the sink.
struct VoltageProblem {
  const WeightedGraph& graph;
  RegionPair regions;
};

struct VoltageSolution {
  /// Per-node voltage; NaN at dropped nodes.
  std::vector<double> values;
  /// Sweeps performed (0 for the direct solve).
  long iterations = 0;
  /// Sup-norm of the last update (0 for the direct solve).
  double residual = 0.0;
  /// Interior nodes with no path to the boundary, removed under IsolatedPolicy::drop.
  std::vector<std::size_t> dropped;
};

/// Harmonic extension of the boundary data: solves L_cc v_c = W_cA 1.
VoltageSolution solve_direct(const VoltageProblem& problem,
                             IsolatedPolicy policy = IsolatedPolicy::fail);

struct FixedPointOptions {
  double tol = 1e-10;
  long max_iter = 1'000'000;
  IsolatedPolicy policy = IsolatedPolicy::fail;
  /// When set, receives the sup-norm update of every sweep.
  std::vector<double>* history = nullptr;
};

/// Jacobi iteration v <- A v + b on the interior, where
///   (A v)_i = sum_{j interior} W_ij v_j / D_i,   b_i = sum_{j in source} W_ij / D_i,
/// starting from v = 0. Stops once the sup-norm update drops below tol;
/// NonConvergence if max_iter sweeps do not get there.
VoltageSolution solve_fixed_point(const VoltageProblem& problem, const FixedPointOptions& options = {});

/// Net current leaving `nodes`: sum_{i in nodes} sum_j W_ij (v_i - v_j).
/// Positive at the source; the sink carries the same amount with opposite sign.
double total_current(const WeightedGraph& graph, const VoltageSolution& voltage,
                     std::span<const std::size_t> nodes);

/// 1 / J_tot for the direct solution. Interior nodes that reach neither
/// region are dropped with a warning.
double region_er(const WeightedGraph& graph, const RegionPair& regions);

/// Dirichlet energy over unordered pairs, sum_{i<j} W_ij (v_i - v_j)^2 = v^T L v.
double energy(const WeightedGraph& graph, std::span<const double> v);

/// Out-of-sample voltage: 1 inside the source region, 0 inside the sink
/// region, otherwise the kernel-weighted mean of the sample voltages.
/// IsolatedPoint when no sample point carries kernel weight.
double extend_voltage(const PointCloud& cloud, const Kernel& kernel, const VoltageSolution& solution,
                      const RegionPredicate& source, const RegionPredicate& sink, PointView x);

/// CSV dump: node_index,x0,...,x{d-1},voltage.
void write_voltage_csv(std::ostream& os, const PointCloud& cloud, const VoltageSolution& solution);

}  // namespace eres
