#include "eres/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "eres/error.hpp"

namespace eres {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidInput(std::string(name) + " must be positive and finite");
}

}  // namespace

void validate(const Kernel& kernel) {
  std::visit(overloaded{
                 [](const Radial& k) { check_positive(k.radius, "radial radius"); },
                 [](const Gaussian& k) { check_positive(k.sigma, "gaussian sigma"); },
                 [](const Knn& k) {
                   if (k.kappa == 0) throw InvalidInput("knn kappa must be >= 1");
                 },
             },
             kernel);
}

double eval_kernel(const Kernel& kernel, double distance) {
  if (!std::isfinite(distance) || distance < 0.0)
    throw InvalidInput("kernel distance must be finite and non-negative");
  validate(kernel);
  return std::visit(overloaded{
                        [&](const Radial& k) { return distance <= k.radius ? 1.0 : 0.0; },
                        [&](const Gaussian& k) {
                          return std::exp(-distance * distance / (2.0 * k.sigma * k.sigma));
                        },
                        [](const Knn&) -> double {
                          throw InvalidInput("knn kernel has no pointwise evaluation");
                        },
                    },
                    kernel);
}

Kernel parse_kernel(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw InvalidInput("kernel must look like name:parameter, got '" + std::string(text) + "'");
  const auto name = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  auto parse_double = [&] {
    double v = 0.0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
    if (ec != std::errc() || p != arg.data() + arg.size())
      throw InvalidInput("bad kernel parameter '" + std::string(arg) + "'");
    return v;
  };
  Kernel k;
  if (name == "radial") {
    k = Radial{parse_double()};
  } else if (name == "gaussian") {
    k = Gaussian{parse_double()};
  } else if (name == "knn") {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
    if (ec != std::errc() || p != arg.data() + arg.size())
      throw InvalidInput("bad knn parameter '" + std::string(arg) + "'");
    k = Knn{v};
  } else {
    throw InvalidInput("unknown kernel '" + std::string(name) + "'");
  }
  validate(k);
  return k;
}

namespace {

std::string shortest(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

std::string to_string(const Kernel& kernel) {
  return std::visit(overloaded{
                        [](const Radial& k) { return "radial:" + shortest(k.radius); },
                        [](const Gaussian& k) { return "gaussian:" + shortest(k.sigma); },
                        [](const Knn& k) { return "knn:" + std::to_string(k.kappa); },
                    },
                    kernel);
}

std::vector<std::vector<std::size_t>> nearest_neighbors(const PointCloud& cloud, std::size_t k) {
  const std::size_t n = cloud.size();
  if (k == 0 || k >= n)
    throw InvalidInput("nearest-neighbour count must satisfy 1 <= k < n (k=" + std::to_string(k) +
                       ", n=" + std::to_string(n) + ")");
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::pair<double, std::size_t>> cand(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) cand[m++] = {cloud.distance(i, j), j};
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    out[i].reserve(k);
    for (std::size_t r = 0; r < k; ++r) out[i].push_back(cand[r].second);
  }
  return out;
}

double max_knn_distance(const PointCloud& cloud, std::size_t k) {
  const std::size_t n = cloud.size();
  if (k == 0 || k >= n)
    throw InvalidInput("nearest-neighbour count must satisfy 1 <= k < n (k=" + std::to_string(k) +
                       ", n=" + std::to_string(n) + ")");
  double best = 0.0;
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d[m++] = cloud.distance(i, j);
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
    best = std::max(best, d[k - 1]);
  }
  return best;
}

std::vector<IndexPair> knn_adjacency(const PointCloud& cloud, std::size_t kappa) {
  const auto nn = nearest_neighbors(cloud, kappa);
  std::vector<IndexPair> edges;
  edges.reserve(cloud.size() * kappa);
  for (std::size_t i = 0; i < nn.size(); ++i)
    for (std::size_t j : nn[i]) edges.push_back({std::min(i, j), std::max(i, j)});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace eres
