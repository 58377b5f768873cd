#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "eres/cover.hpp"
#include "eres/datasets.hpp"
#include "eres/error.hpp"
#include "eres/graph.hpp"
#include "eres/log.hpp"
#include "eres/region.hpp"
#include "eres/voltage.hpp"

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

}  // namespace

TEST_CASE("build_alpha_cover examples") {
  const auto pts = line({0.0, 0.5, 1.0});
  const auto all = build_alpha_cover(pts, 0.4);
  CHECK(all.origin == std::vector<std::size_t>{0, 1, 2});
  const auto two = build_alpha_cover(pts, 0.6);
  CHECK(two.origin == std::vector<std::size_t>{0, 2});
  CHECK(two.centers[1][0] == 1.0);
  CHECK(two.alpha == 0.6);
  CHECK_THROWS_AS(build_alpha_cover(pts, 0.0), InvalidInput);
  CHECK_THROWS_AS(build_alpha_cover(PointCloud{}, 0.1), InvalidInput);
}

TEST_CASE("cover packing and covering hold exhaustively") {
  for (std::size_t dim : {1u, 2u, 3u}) {
    const auto cloud = random_cloud(1500, dim, 40 + dim);
    const double alpha = 0.08 * static_cast<double>(dim);
    const auto cover = build_alpha_cover(cloud, alpha);
    for (std::size_t a = 0; a < cover.size(); ++a)
      for (std::size_t b = a + 1; b < cover.size(); ++b)
        CHECK(cover.centers.distance(a, b) >= alpha);
    const auto cell = assign_voronoi(cover, cloud);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      CHECK(cover.centers.distance(cloud[i], cell[i]) <= alpha);
      for (std::size_t c = 0; c < cover.size(); ++c)
        CHECK(cover.centers.distance(cloud[i], c) >= cover.centers.distance(cloud[i], cell[i]));
    }
  }
}

TEST_CASE("cover construction is deterministic") {
  const auto cloud = random_cloud(800, 2, 3);
  CHECK(build_alpha_cover(cloud, 0.05).origin == build_alpha_cover(cloud, 0.05).origin);
}

TEST_CASE("assign_voronoi tie rule") {
  const auto cover = build_alpha_cover(line({0.0, 1.0}), 0.5);
  const auto probe = line({0.0, 0.5, 1.0, 0.49, 0.51});
  CHECK(assign_voronoi(cover, probe) == std::vector<std::size_t>{0, 0, 1, 0, 1});
}

TEST_CASE("estimate_density") {
  const auto cover = build_alpha_cover(line({0.0, 1.0}), 0.5);
  const auto g = estimate_density(cover, line({0.1, 0.2, 0.9, 0.8}));
  CHECK(g.gamma == std::vector<double>{0.5, 0.5});
  const auto skew = estimate_density(cover, line({0.1, 0.2, 0.3}));
  CHECK(skew.gamma == std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(estimate_density(cover, PointCloud{}), InvalidInput);

  const auto cloud = random_cloud(3000, 2, 8);
  const auto big = build_alpha_cover(cloud, 0.07);
  const auto gamma = estimate_density(big, random_cloud(5000, 2, 9)).gamma;
  CHECK(std::accumulate(gamma.begin(), gamma.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double x : gamma) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("cell counts are exact rationals and merge like the batch") {
  const auto cover = build_alpha_cover(random_cloud(2000, 2, 12), 0.06);
  const auto a = random_cloud(700, 2, 13);
  const auto b = random_cloud(1300, 2, 14);
  std::vector<double> both(a.coords());
  both.insert(both.end(), b.coords().begin(), b.coords().end());
  const PointCloud joined(2, both);

  CellCounts left(cover.size()), right(cover.size()), batch(cover.size());
  left.add(cover, a);
  right.add(cover, b);
  left.merge(right);
  batch.add(cover, joined);
  CHECK(left.counts() == batch.counts());
  CHECK(left.total() == 2000);
  CHECK(std::accumulate(batch.counts().begin(), batch.counts().end(), std::uint64_t{0}) == 2000);
  const auto w = left.weights().gamma;
  CHECK(w == estimate_density(cover, joined).gamma);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == static_cast<double>(batch.counts()[i]) / 2000.0);

  CHECK_THROWS_AS(CellCounts(cover.size()).weights(), InvalidInput);
  CellCounts wrong(cover.size() + 1);
  CHECK_THROWS_AS(wrong.merge(left), InvalidInput);
}

TEST_CASE("cover graph weights and empty cells") {
  const auto cover = build_alpha_cover(line({0.0, 0.1, 0.2}), 0.05);
  const DensityWeights g{{0.5, 0.5, 0.0}};
  const auto graph = cover_graph(cover, g, Radial{0.15});
  CHECK(graph.weight(0, 1) == 0.25);
  CHECK(graph.weight(1, 2) == 0.0);
  CHECK(graph.degree(2) == 0.0);
  CHECK_THROWS_AS(cover_graph(cover, DensityWeights{{1.0}}, Radial{0.15}), InvalidInput);
}

TEST_CASE("cover_region_er examples") {
  const auto two = build_alpha_cover(line({0.0, 1.0}), 0.5);
  const DensityWeights half{{0.5, 0.5}};
  const auto src = RegionSpec{{0.0}, 0.1}.predicate();
  const auto dst = RegionSpec{{1.0}, 0.1}.predicate();
  CHECK(cover_region_er(two, half, Radial{2.0}, src, dst) == doctest::Approx(4.0).epsilon(1e-14));

  const auto nowhere = RegionSpec{{5.0}, 0.1}.predicate();
  try {
    cover_region_er(two, half, Radial{2.0}, src, nowhere);
    FAIL("expected EmptyRegion");
  } catch (const EmptyRegion& e) {
    CHECK(std::string(e.what()).find("sink") != std::string::npos);
  }
  CHECK_THROWS_AS(cover_region_er(two, half, Radial{2.0}, nowhere, dst), EmptyRegion);
  const auto everywhere = RegionSpec{{0.5}, 1.0}.predicate();
  CHECK_THROWS_AS(cover_region_er(two, half, Radial{2.0}, everywhere, dst), InvalidInput);
}

TEST_CASE("cover equal to the sample with gamma 1/n reproduces the pointwise graph") {
  const auto cloud = random_cloud(400, 2, 21);
  // alpha below the smallest gap keeps every point as a center.
  const auto cover = build_alpha_cover(cloud, 1e-9);
  REQUIRE(cover.size() == 400);
  const DensityWeights uniform{std::vector<double>(400, 1.0 / 400.0)};
  const Kernel k = Radial{0.15};
  const auto src = RegionSpec{{0.2, 0.2}, 0.1}.predicate();
  const auto dst = RegionSpec{{0.8, 0.7}, 0.1}.predicate();

  const auto pointwise = build_graph(cloud, k, Pointwise{});
  const RegionPair rp{select(cloud, src), select(cloud, dst)};
  const WarningSink previous = set_warning_sink({});
  const double dense = region_er(pointwise, rp);
  const double on_cover = cover_region_er(cover, uniform, k, src, dst);
  set_warning_sink(previous);
  CHECK(on_cover == doctest::Approx(dense).epsilon(1e-12));
}

TEST_CASE("cover size does not grow with the sample on a fixed support") {
  const double alpha = 0.02;
  const auto big = generate({TwoBump1d{40000}, 5});
  const auto cover = build_alpha_cover(big, alpha);
  std::size_t previous = 0;
  for (std::size_t n : {5000u, 10000u, 20000u, 40000u}) {
    const auto c = build_alpha_cover(big.prefix(n), alpha).size();
    CHECK(c >= previous);
    CHECK(c <= cover.size());
    previous = c;
  }
  // Packing on [0,1] caps the count regardless of n.
  CHECK(cover.size() <= static_cast<std::size_t>(1.0 / alpha) + 1);
}

TEST_CASE("cover csv dump") {
  const auto cover = build_alpha_cover(line({0.0, 1.0}), 0.5);
  CellCounts counts(2);
  counts.add(cover, line({0.1, 0.2, 0.3, 0.9}));
  std::ostringstream os;
  write_cover_csv(os, cover, counts);
  CHECK(os.str() == "center_index,x0,gamma,cell_count\n0,0,0.75,3\n1,1,0.25,1\n");
}
