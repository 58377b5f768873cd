#include "eres/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "eres/cover.hpp"
#include "eres/datasets.hpp"
#include "eres/error.hpp"
#include "eres/graph.hpp"
#include "eres/kernel.hpp"
#include "eres/region.hpp"
#include "eres/resistance.hpp"

namespace eres {

namespace {

using Clock = std::chrono::steady_clock;

// Rethrows the active exception with context appended, keeping its type.
[[noreturn]] void rethrow_annotated(const std::string& context) {
  try {
    throw;
  } catch (const NonConvergence& e) {
    throw NonConvergence(std::string(e.what()) + " " + context, e.residual(), e.iterations());
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string(e.what()) + " " + context);
  } catch (const NoPath& e) {
    throw NoPath(std::string(e.what()) + " " + context);
  } catch (const SingularBlock& e) {
    throw SingularBlock(std::string(e.what()) + " " + context);
  } catch (const IsolatedPoint& e) {
    throw IsolatedPoint(std::string(e.what()) + " " + context);
  } catch (const EmptyRegion& e) {
    throw EmptyRegion(std::string(e.what()) + " " + context);
  } catch (const IoError& e) {
    throw IoError(std::string(e.what()) + " " + context);
  } catch (const Error& e) {
    throw Error(std::string(e.what()) + " " + context);
  }
}

std::string context(const char* experiment, std::size_t n, std::uint64_t seed) {
  return "[" + std::string(experiment) + " n=" + std::to_string(n) + " seed=" + std::to_string(seed) + "]";
}

// Runs task(k) for k < count on up to `threads` workers and concatenates the
// per-task records in index order.
template <class Task>
std::vector<ExperimentRecord> run_sweep(std::size_t count, std::size_t threads, Task&& task) {
  std::vector<std::vector<ExperimentRecord>> parts(count);
  std::vector<std::exception_ptr> errors(count);
  std::size_t next = 0;
  std::mutex m;
  auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard lock(m);
        if (next >= count) return;
        k = next++;
      }
      try {
        parts[k] = task(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<ExperimentRecord> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

template <class F>
double timed_ms(bool enabled, F&& f) {
  if (!enabled) {
    f();
    return 0.0;
  }
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::mt19937_64 pair_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 7u};
  return std::mt19937_64(seq);
}

Kernel make_kernel(KernelFamily family, const PointCloud& cloud, std::size_t k) {
  switch (family) {
    case KernelFamily::knn: return Knn{k};
    case KernelFamily::gaussian: return Gaussian{max_knn_distance(cloud, k)};
    case KernelFamily::radial: break;
  }
  return Radial{max_knn_distance(cloud, k)};
}

PointCloud vonluxburg_cloud(const VonLuxburgConfig& cfg, std::size_t n, std::uint64_t seed) {
  if (!cfg.points) return generate({UniformCube{cfg.dim, n}, seed});
  const PointCloud all = read_points(*cfg.points, cfg.labels);
  if (n > all.size())
    throw InvalidInput("sweep size " + std::to_string(n) + " exceeds the " +
                       std::to_string(all.size()) + " points in " + cfg.points->string());
  std::vector<std::size_t> idx(all.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto rng = pair_rng(seed ^ 0x5eedULL);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return all.subset(idx);
}

std::vector<ExperimentRecord> vonluxburg_point(const VonLuxburgConfig& cfg, const RunOptions& run,
                                               std::size_t n, std::uint64_t seed) {
  const PointCloud cloud = vonluxburg_cloud(cfg, n, seed);
  const std::size_t k = cfg.knn_k ? cfg.knn_k : std::max<std::size_t>(1, n / cfg.knn_divisor);
  const Kernel kernel = make_kernel(cfg.family, cloud, k);
  auto rng = pair_rng(seed);
  std::vector<ExperimentRecord> out;
  auto record = [&](const std::string& q, double v, double ms) {
    out.push_back({"vonluxburg", n, q, v, seed, ms});
  };

  // Standard ER on the unscaled graph, pairs drawn from the largest component.
  {
    const WeightedGraph graph = build_graph(cloud, kernel, Unscaled{});
    const auto comp = graph.components();
    std::vector<std::size_t> size(n, 0);
    for (std::size_t c : comp) ++size[c];
    const std::size_t giant = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == giant) members.push_back(i);
    if (members.size() < 2) throw NoPath("largest component has fewer than two nodes");

    std::vector<double> r, eta;
    double ms = timed_ms(run.timing, [&] {
      const PairwiseResistance er(graph);
      std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
      for (std::size_t p = 0; p < cfg.pairs; ++p) {
        std::size_t a = members[pick(rng)], b = members[pick(rng)];
        while (b == a) b = members[pick(rng)];
        r.push_back(er(a, b));
        eta.push_back(von_luxburg_limit(graph.degree(a), graph.degree(b)));
      }
    });
    const auto s = deviation_stats(r, eta);
    record("standard_max_rel_dev", s.max_rel, ms);
    record("standard_mean_rel_dev", s.mean_rel, ms);
  }

  // Region-based ER on the pointwise-scaled graph between disjoint r_s balls.
  {
    const WeightedGraph graph = build_graph(cloud, kernel, Pointwise{});
    const auto comp = graph.components();
    const double r_s = max_knn_distance(cloud, cfg.source_k);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> r, eta;
    double ms = 0.0;
    for (std::size_t p = 0; p < cfg.region_pairs; ++p) {
      std::size_t a = 0, b = 0;
      std::size_t attempts = 0;
      do {
        if (++attempts > 10000)
          throw InvalidInput("could not place disjoint source/sink balls of radius " + std::to_string(r_s));
        a = pick(rng);
        b = pick(rng);
      } while (cloud.distance(a, b) <= 2.0 * r_s || comp[a] != comp[b]);
      const auto ca = cloud[a], cb = cloud[b];
      RegionPair regions{ball_region(cloud, {{ca.begin(), ca.end()}, r_s}),
                         ball_region(cloud, {{cb.begin(), cb.end()}, r_s})};
      double value = 0.0;
      ms += timed_ms(run.timing, [&] { value = set_er(graph, regions); });
      r.push_back(value);
      eta.push_back(von_luxburg_limit(aggregated_degree(graph, regions.source),
                                      aggregated_degree(graph, regions.sink)));
    }
    const auto s = deviation_stats(r, eta);
    record("region_max_rel_dev", s.max_rel, ms);
    record("region_mean_rel_dev", s.mean_rel, ms);
  }
  return out;
}

std::vector<std::size_t> anchor_region(const PointCloud& cloud, const std::vector<double>& center,
                                       double radius, const std::string& name) {
  auto idx = ball_region(cloud, {center, radius});
  if (idx.empty()) throw EmptyRegion("anchor region " + name + " contains no sample point");
  return idx;
}

}  // namespace

KernelFamily parse_kernel_family(const std::string& name) {
  if (name == "radial") return KernelFamily::radial;
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "knn") return KernelFamily::knn;
  throw InvalidInput("unknown kernel family '" + name + "'");
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::radial: return "radial";
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::knn: return "knn";
  }
  return "radial";
}

std::vector<ExperimentRecord> run_vonluxburg(const VonLuxburgConfig& cfg, const RunOptions& run) {
  if (cfg.sizes.empty()) throw InvalidInput("vonluxburg sweep is empty");
  if (cfg.pairs == 0 || cfg.region_pairs == 0) throw InvalidInput("pair counts must be >= 1");
  if (cfg.knn_divisor == 0) throw InvalidInput("knn divisor must be >= 1");
  return run_sweep(cfg.sizes.size(), run.threads, [&](std::size_t k) {
    const std::size_t n = cfg.sizes[k];
    const std::uint64_t seed = sweep_seed(run.seed, k);
    try {
      return vonluxburg_point(cfg, run, n, seed);
    } catch (const Error&) {
      rethrow_annotated(context("vonluxburg", n, seed));
    }
  });
}

std::vector<ExperimentRecord> run_halfmoon(const HalfmoonConfig& cfg, const RunOptions& run) {
  if (cfg.moon_sizes.empty()) throw InvalidInput("halfmoon sweep is empty");
  if (cfg.anchors.size() != 4) throw InvalidInput("halfmoon needs exactly four anchors (i, j, k, p)");
  static const char* names[] = {"i", "j", "k", "p"};
  return run_sweep(cfg.moon_sizes.size(), run.threads, [&](std::size_t idx) {
    const std::size_t n = cfg.moon_sizes[idx];
    // One seed for every sweep point: the background is shared and each moon
    // sample is a prefix of the next larger one.
    const std::uint64_t seed = run.seed;
    try {
      Halfmoon spec;
      spec.n_background = cfg.background;
      spec.n_moon = n;
      spec.radius = cfg.radius;
      spec.noise_sd = cfg.noise_sd;
      spec.angle_lo = cfg.angle_lo;
      spec.angle_hi = cfg.angle_hi;
      const PointCloud cloud = generate({spec, seed});
      std::vector<std::vector<std::size_t>> regions;
      for (std::size_t a = 0; a < 4; ++a)
        regions.push_back(anchor_region(cloud, spec.arc_point(cfg.anchors[a]), cfg.source_radius, names[a]));
      const WeightedGraph graph = build_graph(cloud, Radial{cfg.kernel_radius}, Pointwise{});

      std::vector<ExperimentRecord> out;
      double r[4] = {0, 0, 0, 0};
      double ms[4] = {0, 0, 0, 0};
      for (std::size_t b = 1; b < 4; ++b)
        ms[b] = timed_ms(run.timing, [&] { r[b] = set_er(graph, {regions[0], regions[b]}); });
      out.push_back({"halfmoon", n, "R_s_ij", r[1], seed, ms[1]});
      out.push_back({"halfmoon", n, "R_s_ik", r[2], seed, ms[2]});
      out.push_back({"halfmoon", n, "R_s_ip", r[3], seed, ms[3]});
      out.push_back({"halfmoon", n, "ratio_ij_ip", r[1] / r[3], seed, 0.0});
      out.push_back({"halfmoon", n, "ratio_ik_ip", r[2] / r[3], seed, 0.0});
      return out;
    } catch (const Error&) {
      rethrow_annotated(context("halfmoon", n, seed));
    }
  });
}

std::vector<std::vector<double>> swiss_roll_anchors(std::size_t count) {
  if (count < 2) throw InvalidInput("need at least two anchors");
  std::vector<std::vector<double>> out;
  const double lo = SwissRoll::t_min(), hi = SwissRoll::t_max();
  for (std::size_t a = 0; a < count; ++a) {
    const double t = lo + (hi - lo) * (static_cast<double>(a) + 0.5) / static_cast<double>(count);
    out.push_back(SwissRoll::embed(t, 0.5 * SwissRoll::kHeight));
  }
  return out;
}

std::vector<ExperimentRecord> run_swissroll(const SwissRollConfig& cfg, const RunOptions& run) {
  if (cfg.sizes.empty()) throw InvalidInput("swissroll sweep is empty");
  const auto anchors = swiss_roll_anchors(cfg.anchors);
  return run_sweep(cfg.sizes.size(), run.threads, [&](std::size_t k) {
    const std::size_t n = cfg.sizes[k];
    const std::uint64_t seed = sweep_seed(run.seed, k);
    try {
      const PointCloud cloud = generate({SwissRoll{n}, seed});
      std::vector<std::vector<std::size_t>> regions;
      for (std::size_t a = 0; a < anchors.size(); ++a)
        regions.push_back(anchor_region(cloud, anchors[a], cfg.source_radius, std::to_string(a + 1)));
      const WeightedGraph graph = build_graph(cloud, Radial{cfg.kernel_radius}, Pointwise{});
      std::vector<ExperimentRecord> out;
      for (std::size_t b = 1; b < anchors.size(); ++b) {
        double r = 0.0;
        const double ms = timed_ms(run.timing, [&] { r = set_er(graph, {regions[0], regions[b]}); });
        out.push_back({"swissroll", n, "R_s_1" + std::to_string(b + 1), r, seed, ms});
      }
      return out;
    } catch (const Error&) {
      rethrow_annotated(context("swissroll", n, seed));
    }
  });
}

std::vector<ExperimentRecord> run_cover_compare(const CoverCompareConfig& cfg, const RunOptions& run) {
  if (cfg.dense_sizes.empty() || cfg.gamma_sizes.empty())
    throw InvalidInput("cover-compare sweeps must be non-empty");
  if (cfg.anchors.size() < 2) throw InvalidInput("cover-compare needs at least two anchors");
  for (std::size_t m : cfg.gamma_sizes)
    if (m == 0 || m > cfg.cover_samples)
      throw InvalidInput("gamma sample sizes must lie in [1, cover_samples]");
  const Kernel kernel = Radial{cfg.kernel_radius};
  std::vector<RegionSpec> balls;
  for (double a : cfg.anchors) balls.push_back({{a}, cfg.source_radius});
  auto label = [](std::size_t b) { return "R_s_1" + std::to_string(b + 1); };

  // (B) dense graphs on fresh samples with pointwise scaling.
  auto dense = run_sweep(cfg.dense_sizes.size(), run.threads, [&](std::size_t k) {
    const std::size_t n = cfg.dense_sizes[k];
    const std::uint64_t seed = sweep_seed(run.seed, k);
    try {
      const PointCloud cloud = generate({TwoBump1d{n}, seed});
      const WeightedGraph graph = build_graph(cloud, kernel, Pointwise{});
      const auto source = anchor_region(cloud, balls[0].center, cfg.source_radius, "1");
      std::vector<ExperimentRecord> out;
      for (std::size_t b = 1; b < balls.size(); ++b) {
        const auto sink = anchor_region(cloud, balls[b].center, cfg.source_radius, std::to_string(b + 1));
        double r = 0.0;
        const double ms = timed_ms(run.timing, [&] { r = set_er(graph, {source, sink}); });
        out.push_back({"cover_compare", n, "dense_" + label(b), r, seed, ms});
      }
      return out;
    } catch (const Error&) {
      rethrow_annotated(context("cover_compare/dense", n, seed));
    }
  });

  // (A) one cover built from the full sample; gamma from growing prefixes,
  // accumulated as a stream of disjoint chunks.
  std::vector<ExperimentRecord> out = std::move(dense);
  const std::uint64_t seed = run.seed;
  try {
    const PointCloud sample = generate({TwoBump1d{cfg.cover_samples}, seed});
    AlphaCover cover;
    const double build_ms = timed_ms(run.timing, [&] { cover = build_alpha_cover(sample, cfg.alpha); });
    out.push_back({"cover_compare", cfg.cover_samples, "cover_centers", static_cast<double>(cover.size()),
                   seed, build_ms});

    std::vector<std::size_t> sizes = cfg.gamma_sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    CellCounts counts(cover.size());
    std::size_t counted = 0;
    for (std::size_t m : sizes) {
      std::vector<std::size_t> chunk(m - counted);
      std::iota(chunk.begin(), chunk.end(), counted);
      const double density_ms =
          timed_ms(run.timing, [&] { counts.add(cover, sample.subset(chunk)); });
      counted = m;
      out.push_back({"cover_compare", m, "gamma_estimate", static_cast<double>(counts.total()), seed,
                     density_ms});
      const DensityWeights gamma = counts.weights();
      const WeightedGraph graph = cover_graph(cover, gamma, kernel);
      for (std::size_t b = 1; b < balls.size(); ++b) {
        const RegionPair regions =
            cover_regions(cover, balls[0].predicate(), balls[b].predicate());
        double r = 0.0;
        const double ms = timed_ms(run.timing, [&] { r = set_er(graph, regions); });
        out.push_back({"cover_compare", m, "cover_" + label(b), r, seed, ms});
      }
    }
  } catch (const Error&) {
    rethrow_annotated(context("cover_compare/cover", cfg.cover_samples, seed));
  }
  return out;
}

}  // namespace eres
