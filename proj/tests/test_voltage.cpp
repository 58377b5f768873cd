#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "eres/error.hpp"
#include "eres/log.hpp"
#include "eres/region.hpp"
#include "eres/resistance.hpp"
#include "eres/voltage.hpp"
#include "oracles.hpp"

using namespace eres;

namespace {

WeightedGraph unit_path(std::size_t nodes) {
  std::vector<Edge> e;
  for (std::size_t k = 0; k + 1 < nodes; ++k) e.push_back({k, k + 1, 1.0});
  return WeightedGraph::from_edges(nodes, e);
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

RegionPair random_regions(std::size_t n, std::mt19937_64& rng) {
  const auto s = oracle::random_disjoint_sets(n, {1 + rng() % 3, 1 + rng() % 3}, rng);
  return {s[0], s[1]};
}

}  // namespace

TEST_CASE("solve_direct examples") {
  const auto p3 = unit_path(3);
  const auto mid = solve_direct({p3, {{0}, {2}}});
  CHECK(mid.values[0] == 1.0);
  CHECK(mid.values[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mid.values[2] == 0.0);
  CHECK(mid.iterations == 0);

  const auto p4 = solve_direct({unit_path(4), {{0}, {3}}});
  CHECK(p4.values[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p4.values[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto edge = WeightedGraph::from_edges(2, {{0, 1, 0.3}});
  CHECK(solve_direct({edge, {{0}, {1}}}).values == std::vector<double>{1.0, 0.0});
}

TEST_CASE("solve_direct errors") {
  const auto g = WeightedGraph::from_edges(5, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}});
  CHECK_THROWS_AS(solve_direct({g, {{0}, {2}}}), NoPath);
  CHECK_THROWS_AS(solve_direct({g, {{0}, {0}}}), InvalidInput);
  CHECK_THROWS_AS(solve_direct({g, {{0}, {3}}}, IsolatedPolicy::drop), NoPath);

  const WarningSink previous = set_warning_sink({});
  const auto dropped = solve_direct({g, {{0}, {2}}}, IsolatedPolicy::drop);
  set_warning_sink(previous);
  CHECK(dropped.dropped == std::vector<std::size_t>{3, 4});
  CHECK(std::isnan(dropped.values[3]));
  CHECK(dropped.values[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("dropping an isolated node emits a warning") {
  std::vector<std::string> seen;
  const WarningSink previous = set_warning_sink([&](std::string_view m) { seen.emplace_back(m); });
  const auto g = WeightedGraph::from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(region_er(g, {{0}, {2}}) == doctest::Approx(2.0).epsilon(1e-14));
  set_warning_sink(previous);
  REQUIRE(seen.size() == 1);
  CHECK(seen[0].find("1 interior node") != std::string::npos);
}

TEST_CASE("solve_direct matches the dense Dirichlet oracle and its invariants") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_connected(10, rng);
    const auto rp = random_regions(10, rng);
    const auto sol = solve_direct({g, rp});
    const auto ref = oracle::voltages(g, rp.source, rp.sink);
    for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(sol.values[i] - ref[static_cast<Eigen::Index>(i)]) < 1e-12);
    for (auto i : rp.source) CHECK(sol.values[i] == 1.0);
    for (auto i : rp.sink) CHECK(sol.values[i] == 0.0);

    std::vector<char> boundary(10, 0);
    for (auto i : rp.source) boundary[i] = 1;
    for (auto i : rp.sink) boundary[i] = 1;
    const Eigen::Map<const Eigen::VectorXd> v(sol.values.data(), 10);
    const Eigen::VectorXd lv = g.laplacian() * v;
    for (std::size_t i = 0; i < 10; ++i)
      if (!boundary[i]) {
        CHECK(sol.values[i] > 0.0);
        CHECK(sol.values[i] < 1.0);
        CHECK(std::abs(lv[static_cast<Eigen::Index>(i)]) < 1e-9 * g.degrees().maxCoeff());
      }
  }
}

TEST_CASE("fixed point on the unit path") {
  const auto g = unit_path(3);
  const auto sol = solve_fixed_point({g, {{0}, {2}}});
  CHECK(std::abs(sol.values[1] - 0.5) < 1e-9);
  CHECK(sol.iterations >= 1);
  CHECK(sol.residual < 1e-10);
}

TEST_CASE("fixed point agrees with solve_direct") {
  std::mt19937_64 rng(89);
  const double tol = 1e-10;
  int within_ten_tol = 0;
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_connected(12, rng);
    const auto rp = random_regions(12, rng);
    const auto fp = solve_fixed_point({g, rp}, {.tol = tol});
    const double err = sup_distance(fp.values, solve_direct({g, rp}).values);
    CHECK(err < 1e-8);
    // The update-based stop leaves an error near update * rho / (1 - rho), so
    // 10 * tol is only reached when the contraction rate is below 10/11.
    if (err < 10 * tol) ++within_ten_tol;
  }
  MESSAGE("fixed point within 10*tol of the direct solve on " << within_ten_tol << "/30 problems");
}

TEST_CASE("fixed point residuals contract") {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 10; ++t) {
    const auto g = oracle::random_connected(12, rng);
    const auto rp = random_regions(12, rng);
    std::vector<double> history;
    solve_fixed_point({g, rp}, {.tol = 1e-10, .history = &history});
    REQUIRE(history.size() >= 12);
    // Over a trailing window the update shrinks geometrically.
    const std::size_t w = 10;
    const double ratio = std::pow(history.back() / history[history.size() - 1 - w], 1.0 / w);
    CHECK(ratio < 1.0);
  }
}

TEST_CASE("fixed point non-convergence carries the residual") {
  std::mt19937_64 rng(101);
  const auto g = oracle::random_connected(12, rng);
  try {
    solve_fixed_point({g, {{0}, {11}}}, {.tol = 1e-14, .max_iter = 3});
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.iterations() == 3);
    CHECK(e.residual() > 1e-14);
  }
  CHECK_THROWS_AS(solve_fixed_point({g, {{0}, {11}}}, {.tol = 0.0}), InvalidInput);
}

TEST_CASE("total_current") {
  const auto edge = WeightedGraph::from_edges(2, {{0, 1, 0.4}});
  const std::vector<std::size_t> src{0}, dst{1};
  const auto e = solve_direct({edge, {src, dst}});
  CHECK(total_current(edge, e, src) == doctest::Approx(0.4).epsilon(1e-15));

  const auto p3 = unit_path(3);
  const std::vector<std::size_t> end{2};
  const auto v = solve_direct({p3, {src, end}});
  CHECK(total_current(p3, v, src) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(region_er(p3, {src, end}) == doctest::Approx(2.0).epsilon(1e-14));

  std::mt19937_64 rng(103);
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_connected(10, rng);
    const auto rp = random_regions(10, rng);
    const auto sol = solve_direct({g, rp});
    const double in = total_current(g, sol, rp.source);
    CHECK(in > 0.0);
    CHECK(std::abs(in + total_current(g, sol, rp.sink)) < 1e-12 * std::max(1.0, in));
  }
}

TEST_CASE("region_er examples and agreement with set_er") {
  const auto tri = WeightedGraph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  CHECK(region_er(tri, {{0}, {1}}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  const auto star = WeightedGraph::from_edges(3, {{0, 2, 1.0}, {1, 2, 1.0}});
  CHECK(region_er(star, {{0, 1}, {2}}) == doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937_64 rng(107);
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_connected(10, rng);
    const auto rp = random_regions(10, rng);
    CHECK(oracle::rel_diff(region_er(g, rp), set_er(g, rp)) < 1e-10);
  }
}

TEST_CASE("energy") {
  const auto edge = WeightedGraph::from_edges(2, {{0, 1, 0.6}});
  const std::vector<double> constant{0.3, 0.3}, step{1.0, 0.0};
  CHECK(energy(edge, constant) == 0.0);
  CHECK(energy(edge, step) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK_THROWS_AS(energy(edge, std::vector<double>{1.0}), InvalidInput);

  std::mt19937_64 rng(109);
  std::normal_distribution<double> z;
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_connected(10, rng);
    std::vector<double> v(10);
    for (auto& x : v) x = z(rng);
    const Eigen::Map<const Eigen::VectorXd> vv(v.data(), 10);
    const double quad = vv.dot(g.laplacian() * vv);
    CHECK(std::abs(energy(g, v) - quad) < 1e-12 * std::max(1.0, quad));

    // For the minimizing voltage, energy equals the current across a unit gap.
    const auto rp = random_regions(10, rng);
    const auto sol = solve_direct({g, rp});
    const double j = total_current(g, sol, rp.source);
    CHECK(oracle::rel_diff(energy(g, sol.values), j) < 1e-10);
    CHECK(oracle::rel_diff(1.0 / j, set_er(g, rp)) < 1e-10);
  }
}

TEST_CASE("rescaling weights leaves voltages unchanged") {
  std::mt19937_64 rng(113);
  for (double c : {1e-4, 0.5, 40.0}) {
    const auto g = oracle::random_connected(10, rng);
    const auto s = g.scaled(c);
    const auto rp = random_regions(10, rng);
    CHECK(sup_distance(solve_direct({g, rp}).values, solve_direct({s, rp}).values) < 1e-12);
    CHECK(oracle::rel_diff(region_er(s, rp), region_er(g, rp) / c) < 1e-12);
  }
}

TEST_CASE("extend_voltage") {
  const auto cloud = PointCloud(1, {0.0, 0.4, 0.5, 1.0});
  const Kernel k = Radial{0.15};
  VoltageSolution sol;
  sol.values = {1.0, 0.7, 0.2, 0.0};
  const auto src = RegionSpec{{0.0}, 0.1}.predicate();
  const auto dst = RegionSpec{{1.0}, 0.1}.predicate();
  const std::vector<double> in_src{0.05}, in_dst{0.95}, near_one{0.3}, between{0.45}, far{0.75};
  CHECK(extend_voltage(cloud, k, sol, src, dst, in_src) == 1.0);
  CHECK(extend_voltage(cloud, k, sol, src, dst, in_dst) == 0.0);
  CHECK(extend_voltage(cloud, k, sol, src, dst, near_one) == 0.7);
  CHECK(extend_voltage(cloud, k, sol, src, dst, between) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK_THROWS_AS(extend_voltage(cloud, k, sol, src, dst, far), IsolatedPoint);

  // Dropped nodes carry NaN and do not contribute.
  sol.values[1] = std::nan("");
  CHECK(extend_voltage(cloud, k, sol, src, dst, between) == 0.2);
}

TEST_CASE("voltage csv dump") {
  const auto cloud = PointCloud(2, {0.0, 0.0, 1.0, 0.5});
  VoltageSolution sol;
  sol.values = {1.0, 0.25};
  std::ostringstream os;
  write_voltage_csv(os, cloud, sol);
  CHECK(os.str() == "node_index,x0,x1,voltage\n0,0,0,1\n1,1,0.5,0.25\n");
}
