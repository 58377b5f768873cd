#include "eres/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "eres/error.hpp"

namespace eres {

namespace {

using Rng = std::mt19937_64;

// Stream separation for generators that draw from several sources.
Rng stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

void require_count(std::size_t n, const char* what) {
  if (n == 0) throw InvalidInput(std::string(what) + " must be >= 1");
}

PointCloud uniform_cube(const UniformCube& s, std::uint64_t seed) {
  require_count(s.n, "uniform_cube n");
  require_count(s.dim, "uniform_cube dim");
  Rng rng = stream(seed, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> coords(s.n * s.dim);
  for (double& c : coords) c = u(rng);
  return PointCloud(s.dim, std::move(coords));
}

PointCloud halfmoon(const Halfmoon& s, std::uint64_t seed) {
  require_count(s.n_background + s.n_moon, "halfmoon point count");
  if (!(s.noise_sd >= 0.0)) throw InvalidInput("halfmoon noise_sd must be >= 0");
  if (!(s.angle_hi > s.angle_lo)) throw InvalidInput("halfmoon angle range is degenerate");
  if (!(s.radius > 0.0)) throw InvalidInput("halfmoon radius must be positive");
  std::vector<double> coords;
  coords.reserve(2 * (s.n_background + s.n_moon));

  Rng bg = stream(seed, 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < s.n_background; ++i) {
    const double x = u(bg);
    const double y = u(bg);
    coords.push_back(x);
    coords.push_back(y);
  }

  Rng moon = stream(seed, 2);
  std::uniform_real_distribution<double> angle(s.angle_lo, s.angle_hi);
  std::normal_distribution<double> radial(0.0, 1.0);
  for (std::size_t i = 0; i < s.n_moon; ++i) {
    const double theta = angle(moon) * std::numbers::pi / 180.0;
    const double r = s.radius + s.noise_sd * radial(moon);
    coords.push_back(s.center_x + r * std::cos(theta));
    coords.push_back(s.center_y + r * std::sin(theta));
  }
  return PointCloud(2, std::move(coords));
}

struct RollFrame {
  double offset[3];
  double scale;
};

const RollFrame& roll_frame() {
  static const RollFrame frame = [] {
    double lo[3] = {1e300, 0.0, 1e300};
    double hi[3] = {-1e300, SwissRoll::kHeight, -1e300};
    constexpr int steps = 200000;
    for (int k = 0; k <= steps; ++k) {
      const double t = SwissRoll::t_min() + (SwissRoll::t_max() - SwissRoll::t_min()) * k / steps;
      const double x = t * std::cos(t);
      const double z = t * std::sin(t);
      lo[0] = std::min(lo[0], x);
      hi[0] = std::max(hi[0], x);
      lo[2] = std::min(lo[2], z);
      hi[2] = std::max(hi[2], z);
    }
    const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
    return RollFrame{{lo[0], lo[1], lo[2]}, 1.0 / span};
  }();
  return frame;
}

PointCloud swiss_roll(const SwissRoll& s, std::uint64_t seed) {
  require_count(s.n, "swiss_roll n");
  Rng rng = stream(seed, 3);
  std::uniform_real_distribution<double> t(SwissRoll::t_min(), SwissRoll::t_max());
  std::uniform_real_distribution<double> h(0.0, SwissRoll::kHeight);
  std::vector<double> coords;
  coords.reserve(3 * s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    const double ti = t(rng);
    const double hi = h(rng);
    const auto p = SwissRoll::embed(ti, hi);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(3, std::move(coords));
}

PointCloud two_bump(const TwoBump1d& s, std::uint64_t seed) {
  require_count(s.n, "two_bump_1d n");
  Rng rng = stream(seed, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> left(0.25, 0.05), right(0.75, 0.05);
  std::vector<double> coords;
  coords.reserve(s.n);
  while (coords.size() < s.n) {
    const double pick = u(rng);
    const double x = pick < 0.45 ? left(rng) : pick < 0.9 ? right(rng) : u(rng);
    if (x >= 0.0 && x <= 1.0) coords.push_back(x);
  }
  return PointCloud(1, std::move(coords));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::vector<double> Halfmoon::arc_point(double degrees) const {
  const double theta = degrees * std::numbers::pi / 180.0;
  return {center_x + radius * std::cos(theta), center_y + radius * std::sin(theta)};
}

double SwissRoll::t_min() { return 1.5 * std::numbers::pi; }
double SwissRoll::t_max() { return 4.5 * std::numbers::pi; }

std::vector<double> SwissRoll::embed(double t, double h) {
  const RollFrame& f = roll_frame();
  return {(t * std::cos(t) - f.offset[0]) * f.scale, (h - f.offset[1]) * f.scale,
          (t * std::sin(t) - f.offset[2]) * f.scale};
}

PointCloud generate(const DatasetSpec& spec) {
  return std::visit(overloaded{
                        [&](const UniformCube& s) { return uniform_cube(s, spec.seed); },
                        [&](const Halfmoon& s) { return halfmoon(s, spec.seed); },
                        [&](const SwissRoll& s) { return swiss_roll(s, spec.seed); },
                        [&](const TwoBump1d& s) { return two_bump(s, spec.seed); },
                        [&](const PointFile& s) { return read_points(s.path); },
                    },
                    spec.variant);
}

double two_bump_density(double x) {
  if (x < 0.0 || x > 1.0) return 0.0;
  auto normal_pdf = [](double v, double mu, double sd) {
    const double z = (v - mu) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
  };
  auto normal_mass = [](double mu, double sd) {
    return 0.5 * (std::erf((1.0 - mu) / (sd * std::numbers::sqrt2)) -
                  std::erf((0.0 - mu) / (sd * std::numbers::sqrt2)));
  };
  const double raw = 0.45 * normal_pdf(x, 0.25, 0.05) + 0.45 * normal_pdf(x, 0.75, 0.05) + 0.1;
  const double mass = 0.45 * normal_mass(0.25, 0.05) + 0.45 * normal_mass(0.75, 0.05) + 0.1;
  return raw / mass;
}

}  // namespace eres
