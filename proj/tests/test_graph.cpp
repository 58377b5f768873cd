#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "eres/error.hpp"
#include "eres/graph.hpp"
#include "eres/kernel.hpp"
#include "eres/point_cloud.hpp"

using namespace eres;

namespace {

PointCloud line(std::vector<double> xs) { return PointCloud(1, std::move(xs)); }

PointCloud random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(n * dim);
  for (auto& x : c) x = u(rng);
  return PointCloud(dim, std::move(c));
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("point cloud validates its buffer") {
  CHECK_THROWS_AS(PointCloud(0, {}), InvalidInput);
  CHECK_THROWS_AS(PointCloud(2, {1.0, 2.0, 3.0}), InvalidInput);
  CHECK_THROWS_AS(PointCloud(1, {std::numeric_limits<double>::quiet_NaN()}), InvalidInput);
  CHECK_THROWS_AS(PointCloud::from_rows({{0.0, 1.0}, {2.0}}), InvalidInput);
  const auto c = PointCloud::from_rows({{0.0, 0.0}, {3.0, 4.0}});
  CHECK(c.size() == 2);
  CHECK(c.distance(0, 1) == 5.0);
  const std::vector<std::size_t> idx{1};
  CHECK(c.subset(idx)[0][1] == 4.0);
  CHECK(c.prefix(1).size() == 1);
}

TEST_CASE("eval_kernel") {
  CHECK(eval_kernel(Radial{0.08}, 0.05) == 1.0);
  CHECK(eval_kernel(Radial{0.08}, 0.10) == 0.0);
  CHECK(eval_kernel(Radial{0.08}, 0.08) == 1.0);
  CHECK(eval_kernel(Gaussian{0.3}, 0.0) == 1.0);
  CHECK(eval_kernel(Gaussian{17.0}, 0.0) == 1.0);
  CHECK(eval_kernel(Gaussian{1.0}, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(eval_kernel(Radial{1.0}, -0.1), InvalidInput);
  CHECK_THROWS_AS(eval_kernel(Radial{1.0}, std::numeric_limits<double>::infinity()), InvalidInput);
  CHECK_THROWS_AS(eval_kernel(Gaussian{1.0}, std::numeric_limits<double>::quiet_NaN()), InvalidInput);
  CHECK_THROWS_AS(eval_kernel(Knn{3}, 0.5), InvalidInput);
  CHECK_THROWS_AS(validate(Radial{0.0}), InvalidInput);
  CHECK_THROWS_AS(validate(Gaussian{-1.0}), InvalidInput);
  CHECK_THROWS_AS(validate(Knn{0}), InvalidInput);
}

TEST_CASE("kernel parsing round-trips") {
  for (const char* text : {"radial:0.08", "gaussian:0.5", "knn:100"})
    CHECK(to_string(parse_kernel(text)) == text);
  CHECK(std::get<Radial>(parse_kernel("radial:0.25")).radius == 0.25);
  CHECK_THROWS_AS(parse_kernel("radial"), InvalidInput);
  CHECK_THROWS_AS(parse_kernel("cosine:1"), InvalidInput);
  CHECK_THROWS_AS(parse_kernel("knn:2.5"), InvalidInput);
}

TEST_CASE("knn_adjacency") {
  const auto pts = line({0.0, 1.0, 3.0});
  CHECK(knn_adjacency(pts, 1) == std::vector<IndexPair>{{0, 1}, {1, 2}});
  CHECK(knn_adjacency(pts, 2) == std::vector<IndexPair>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(knn_adjacency(line({0.0, 5.0}), 1) == std::vector<IndexPair>{{0, 1}});
  CHECK_THROWS_AS(knn_adjacency(pts, 3), InvalidInput);
  CHECK_THROWS_AS(knn_adjacency(pts, 0), InvalidInput);

  const auto cloud = random_cloud(40, 2, 3);
  const auto complete = knn_adjacency(cloud, 39);
  CHECK(complete.size() == 40 * 39 / 2);
}

TEST_CASE("knn relation contains the directed neighbour relation of each endpoint") {
  const auto cloud = random_cloud(60, 3, 11);
  for (std::size_t k : {1u, 4u, 9u}) {
    const auto pairs = knn_adjacency(cloud, k);
    const std::set<IndexPair> relation(pairs.begin(), pairs.end());
    const auto nn = nearest_neighbors(cloud, k);
    for (std::size_t i = 0; i < cloud.size(); ++i)
      for (auto j : nn[i]) CHECK(relation.count({std::min(i, j), std::max(i, j)}) == 1);
    // Nothing beyond the union of the two directed relations.
    for (auto [i, j] : relation) {
      const bool ij = std::find(nn[i].begin(), nn[i].end(), j) != nn[i].end();
      const bool ji = std::find(nn[j].begin(), nn[j].end(), i) != nn[j].end();
      CHECK((ij || ji));
    }
  }
}

TEST_CASE("max_knn_distance") {
  const auto pts = line({0.0, 1.0, 3.0});
  CHECK(max_knn_distance(pts, 1) == 2.0);
  CHECK(max_knn_distance(pts, 2) == 3.0);
  CHECK(max_knn_distance(line({0.0, 5.0}), 1) == 5.0);
  CHECK_THROWS_AS(max_knn_distance(pts, 3), InvalidInput);
}

TEST_CASE("build_graph scaling examples") {
  const auto pair = line({0.0, 0.05});
  CHECK(build_graph(pair, Radial{0.08}, Pointwise{}).weight(0, 1) == 0.25);
  CHECK(build_graph(pair, Radial{0.08}, Unscaled{}).weight(0, 1) == 1.0);
  CHECK(build_graph(pair, Radial{0.08}, Regionwise{{0.5, 0.5}}).weight(0, 1) == 0.25);
  CHECK_THROWS_AS(build_graph(pair, Radial{0.08}, Regionwise{{1.0}}), InvalidInput);
  CHECK_THROWS_AS(build_graph(pair, Radial{0.08}, Regionwise{{0.7, 0.7}}), InvalidInput);
  CHECK_THROWS_AS(build_graph(line({0.0}), Radial{0.08}, Unscaled{}), InvalidInput);
}

TEST_CASE("duplicate points are kept as weight-one edges") {
  const auto g = build_graph(line({0.2, 0.2, 0.9}), Radial{0.1}, Unscaled{});
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(0, 0) == 0.0);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("gaussian graph has zero diagonal and drops negligible weights") {
  const auto g = build_graph(line({0.0, 0.01, 10.0}), Gaussian{0.05}, Unscaled{});
  CHECK(g.weight(0, 0) == 0.0);
  CHECK(g.weight(0, 1) == doctest::Approx(std::exp(-0.02)).epsilon(1e-15));
  CHECK(g.weight(0, 2) == 0.0);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("graph structural invariants") {
  const auto cloud = random_cloud(120, 3, 5);
  const double r = max_knn_distance(cloud, 6);
  for (const Kernel& k : {Kernel{Radial{r}}, Kernel{Gaussian{r}}, Kernel{Knn{5}}}) {
    const auto g = build_graph(cloud, k, Pointwise{});
    const Eigen::MatrixXd w(g.weights());
    CHECK((w - w.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(w.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(w.minCoeff() >= 0.0);
    for (Eigen::Index i = 0; i < w.rows(); ++i) CHECK(g.degrees()[i] == doctest::Approx(w.row(i).sum()).epsilon(1e-15));
    const Eigen::MatrixXd l(g.laplacian());
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("pointwise graph equals unscaled graph times 1/n^2") {
  const auto cloud = random_cloud(80, 2, 9);
  for (const Kernel& k : {Kernel{Radial{0.2}}, Kernel{Gaussian{0.1}}, Kernel{Knn{4}}}) {
    const Eigen::MatrixXd plain(build_graph(cloud, k, Unscaled{}).weights());
    const Eigen::MatrixXd point(build_graph(cloud, k, Pointwise{}).weights());
    CHECK((point - plain / (80.0 * 80.0)).cwiseAbs().maxCoeff() <= 1e-18);
  }
}

TEST_CASE("regionwise weights with gamma 1/n equal pointwise weights") {
  const auto cloud = random_cloud(90, 2, 21);
  const std::vector<double> gamma(90, 1.0 / 90.0);
  const Eigen::MatrixXd region(build_graph(cloud, Radial{0.25}, Regionwise{gamma}).weights());
  const Eigen::MatrixXd point(build_graph(cloud, Radial{0.25}, Pointwise{}).weights());
  CHECK((region - point).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("laplacian examples") {
  const auto edge = WeightedGraph::from_edges(2, {{0, 1, 0.7}});
  const Eigen::MatrixXd l(edge.laplacian());
  CHECK(l(0, 0) == 0.7);
  CHECK(l(0, 1) == -0.7);
  CHECK(l(1, 0) == -0.7);
  CHECK(l(1, 1) == 0.7);

  const auto tri = WeightedGraph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const Eigen::MatrixXd t(tri.laplacian());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(t(i, j) == (i == j ? 2.0 : -1.0));
}

TEST_CASE("laplacian quadratic form is non-negative") {
  const auto g = build_graph(random_cloud(100, 2, 17), Radial{0.2}, Unscaled{});
  const SparseMatrix l = g.laplacian();
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd v(100);
    for (auto& x : v) x = z(rng);
    CHECK(v.dot(l * v) >= -1e-12);
  }
}

TEST_CASE("from_edges and from_weights validation") {
  CHECK_THROWS_AS(WeightedGraph::from_edges(2, {{0, 0, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(WeightedGraph::from_edges(2, {{0, 1, -1.0}}), InvalidInput);
  CHECK_THROWS_AS(WeightedGraph::from_edges(2, {{0, 2, 1.0}}), InvalidInput);
  const auto g = WeightedGraph::from_edges(3, {{0, 1, 1.0}, {1, 0, 2.0}, {1, 2, 0.0}});
  CHECK(g.weight(0, 1) == 3.0);
  CHECK(g.edge_count() == 1);
  CHECK(g.components() == std::vector<std::size_t>{0, 0, 1});
  CHECK(g.scaled(2.0).weight(1, 0) == 6.0);

  SparseMatrix asym(2, 2);
  asym.insert(0, 1) = 1.0;
  asym.makeCompressed();
  CHECK_THROWS_AS(WeightedGraph::from_weights(asym), InvalidInput);

  std::ostringstream dump;
  g.dump(dump);
  CHECK(dump.str().find("0 1 3") != std::string::npos);
}

TEST_CASE("read_points formats") {
  SUBCASE("whitespace with comments") {
    const auto p = temp_file("eres_pts_ws.txt", "# header\n0.5 0.25\n\n1.0   2.0\n");
    const auto c = read_points(p);
    CHECK(c.size() == 2);
    CHECK(c.dim() == 2);
    CHECK(c[1][1] == 2.0);
  }
  SUBCASE("comma separated with a trailing label") {
    const auto p = temp_file("eres_pts_csv.txt", "0.5,0.25,3\n1.5,2.75,7\n");
    const auto c = read_points(p);
    CHECK(c.dim() == 2);
    CHECK(c[0][0] == 0.5);
    CHECK(read_points(p, LabelColumn::none).dim() == 3);
  }
  SUBCASE("integer coordinates are not mistaken for labels") {
    const auto p = temp_file("eres_pts_int.txt", "1 2\n3 4\n");
    CHECK(read_points(p).dim() == 2);
    CHECK(read_points(p, LabelColumn::present).dim() == 1);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(read_points("/nonexistent/eres/points.txt"), IoError);
    const auto ragged = temp_file("eres_pts_bad.txt", "0.1 0.2\n0.3\n");
    CHECK_THROWS_AS(read_points(ragged), IoError);
    const auto junk = temp_file("eres_pts_junk.txt", "0.1 abc\n");
    CHECK_THROWS_AS(read_points(junk), IoError);
  }
}
