#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eres/point_cloud.hpp"
#include "eres/records.hpp"

namespace eres {

enum class KernelFamily { radial, gaussian, knn };

KernelFamily parse_kernel_family(const std::string& name);
std::string to_string(KernelFamily family);

/// Settings shared by every sweep.
struct RunOptions {
  std::uint64_t seed = 1;
  /// Worker threads for sweep points; results do not depend on it.
  std::size_t threads = 1;
  /// Record solve wall time in wall_ms. Off keeps CSV output byte-reproducible.
  bool timing = false;
};

/// Seed of the k-th sweep point.
inline std::uint64_t sweep_seed(std::uint64_t base, std::size_t index) {
  return base ^ static_cast<std::uint64_t>(index);
}

/// Standard vs region-based ER against 1/d_i + 1/d_j.
struct VonLuxburgConfig {
  std::vector<std::size_t> sizes{500, 1000, 2000, 5000};
  KernelFamily family = KernelFamily::radial;
  std::size_t dim = 3;
  /// Optional point file; each sweep point draws a subsample of size n from it.
  std::optional<std::filesystem::path> points;
  LabelColumn labels = LabelColumn::detect;
  /// Bandwidth neighbour rank; 0 means n / divisor.
  std::size_t knn_k = 0;
  std::size_t knn_divisor = 100;
  /// Source radius = max distance to this neighbour rank.
  std::size_t source_k = 20;
  std::size_t pairs = 50;
  std::size_t region_pairs = 50;
};

std::vector<ExperimentRecord> run_vonluxburg(const VonLuxburgConfig& config, const RunOptions& run);

/// Region ER ratios between anchors on a dense arc over a sparse background.
struct HalfmoonConfig {
  std::vector<std::size_t> moon_sizes{1000, 2000, 4000, 6000, 8000, 10000, 12000, 14000, 16000};
  std::size_t background = 10000;
  double radius = 0.3;
  double noise_sd = 0.01;
  double angle_lo = -20.0;
  double angle_hi = 200.0;
  double kernel_radius = 0.08;
  double source_radius = 0.05;
  /// Anchors i, j, k, p in degrees along the arc.
  std::vector<double> anchors{0.0, 45.0, 90.0, 180.0};
};

inline constexpr double kHalfmoonRatioIJ = 0.25;
inline constexpr double kHalfmoonRatioIK = 0.5;

std::vector<ExperimentRecord> run_halfmoon(const HalfmoonConfig& config, const RunOptions& run);

/// Region ER from anchor 1 to anchors 2..5 along a Swiss roll.
struct SwissRollConfig {
  std::vector<std::size_t> sizes{2000, 4000, 8000};
  double kernel_radius = 0.2;
  double source_radius = 0.1;
  std::size_t anchors = 5;
};

/// Anchor coordinates: equal parameter spacing at mid height.
std::vector<std::vector<double>> swiss_roll_anchors(std::size_t count);

std::vector<ExperimentRecord> run_swissroll(const SwissRollConfig& config, const RunOptions& run);

/// Dense sample graph with pointwise scaling (B) against a fixed alpha-cover
/// with region-wise scaling (A) on the two-bump density.
struct CoverCompareConfig {
  double alpha = 2.0 / 3.0 / 729.0;
  /// Points used to build the cover and, by prefixes, to estimate gamma.
  std::size_t cover_samples = 21122;
  std::vector<std::size_t> gamma_sizes{1122, 2122, 5122, 11122, 21122};
  std::vector<std::size_t> dense_sizes{500, 1000, 2000, 4000};
  double kernel_radius = 0.1;
  double source_radius = 0.1;
  std::vector<double> anchors{0.1, 0.3, 0.5, 0.7, 0.9};
};

std::vector<ExperimentRecord> run_cover_compare(const CoverCompareConfig& config,
                                                const RunOptions& run);

}  // namespace eres
