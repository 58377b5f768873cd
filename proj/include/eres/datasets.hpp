#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <variant>
#include <vector>

#include "eres/point_cloud.hpp"

namespace eres {

/// Uniform on [0,1]^dim.
struct UniformCube {
  std::size_t dim = 3;
  std::size_t n = 1000;
};

/// Uniform background on [0,1]^2 plus a noisy circular arc. Moon points draw
/// theta ~ U[angle_lo, angle_hi] (degrees) and radius ~ N(radius, noise_sd^2)
/// around `center`; the noise acts on the radial coordinate only.
struct Halfmoon {
  std::size_t n_background = 10000;
  std::size_t n_moon = 1000;
  double radius = 0.3;
  double angle_lo = -20.0;
  double angle_hi = 200.0;
  double noise_sd = 0.01;
  double center_x = 0.5;
  double center_y = 0.4;

  /// Point on the noiseless arc at the given angle (degrees).
  std::vector<double> arc_point(double degrees) const;
};

/// Swiss roll (t cos t, h, t sin t) with t ~ U[1.5 pi, 4.5 pi], h ~ U[0, 21],
/// mapped into [0,1]^3 by one uniform scale so distances keep their ratios.
struct SwissRoll {
  std::size_t n = 4000;

  static constexpr double kHeight = 21.0;
  static double t_min();
  static double t_max();
  /// Point of the roll at parameter t and height h, in the rescaled frame.
  static std::vector<double> embed(double t, double h);
};

/// Mixture 0.45 N(0.25, 0.05^2) + 0.45 N(0.75, 0.05^2) + 0.1 U[0,1] on [0,1],
/// truncated by rejection.
struct TwoBump1d {
  std::size_t n = 4000;
};

struct PointFile {
  std::filesystem::path path;
};

struct DatasetSpec {
  std::variant<UniformCube, Halfmoon, SwissRoll, TwoBump1d, PointFile> variant;
  std::uint64_t seed = 0;
};

/// Deterministic for a fixed spec and seed. Halfmoon draws the background and
/// the arc from separate streams, so the background does not depend on n_moon.
PointCloud generate(const DatasetSpec& spec);

/// Density of TwoBump1d on [0,1] (normalised after truncation).
double two_bump_density(double x);

}  // namespace eres
