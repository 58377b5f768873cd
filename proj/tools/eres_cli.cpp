// Command-line front end: experiment sweeps, one-shot region ER queries and
// cover dumps.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "eres/cover.hpp"
#include "eres/error.hpp"
#include "eres/experiments.hpp"
#include "eres/graph.hpp"
#include "eres/log.hpp"
#include "eres/records.hpp"
#include "eres/region.hpp"
#include "eres/resistance.hpp"
#include "eres/voltage.hpp"

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string out = "out";
  std::vector<std::string> formats{"csv"};
  double tol = 1e-10;
  std::size_t threads = 1;
  bool timing = false;
  bool quiet = false;
  std::string labels = "detect";
};

eres::LabelColumn label_column(const std::string& name) {
  if (name == "none") return eres::LabelColumn::none;
  if (name == "present") return eres::LabelColumn::present;
  return eres::LabelColumn::detect;
}

std::vector<eres::OutputFormat> parse_formats(const std::vector<std::string>& names) {
  std::vector<eres::OutputFormat> out;
  for (const auto& f : names) {
    if (f == "csv") out.push_back(eres::OutputFormat::csv);
    else if (f == "svg") out.push_back(eres::OutputFormat::svg);
    else throw eres::InvalidInput("unknown output format '" + f + "'");
  }
  return out;
}

// "x,y,...:r" -> ball
eres::RegionSpec parse_region(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos)
    throw eres::InvalidInput("region must look like x,y,...:radius, got '" + text + "'");
  auto number = [&](std::string_view s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw eres::InvalidInput("bad number '" + std::string(s) + "' in region '" + text + "'");
    return v;
  };
  eres::RegionSpec spec;
  std::string_view coords(text.data(), colon);
  while (!coords.empty()) {
    const auto comma = coords.find(',');
    spec.center.push_back(number(coords.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    coords.remove_prefix(comma + 1);
  }
  spec.radius = number(std::string_view(text).substr(colon + 1));
  return spec;
}

void write_outputs(const Common& c, const std::vector<eres::ExperimentRecord>& records,
                   const std::string& stem) {
  for (const auto& p : eres::emit(records, parse_formats(c.formats), c.out, stem))
    std::cout << "wrote " << p.string() << '\n';
}

eres::RunOptions run_options(const Common& c) { return {c.seed, c.threads, c.timing}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region-based effective resistance on point clouds"};
  app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");
  app.fallthrough();
  app.require_subcommand(1);

  Common common;
  app.add_option("--seed", common.seed, "Base random seed");
  app.add_option("--out", common.out, "Output directory");
  app.add_option("--format", common.formats, "Output formats: csv, svg")->delimiter(',');
  app.add_option("--tol", common.tol, "Fixed-point tolerance");
  app.add_option("--threads", common.threads, "Worker threads for sweep points");
  app.add_flag("--timing", common.timing, "Record solve wall time (output no longer reproducible)");
  app.add_flag("--quiet", common.quiet, "Suppress warnings");
  app.add_option("--labels", common.labels, "Trailing label column in point files: detect, none, present")
      ->check(CLI::IsMember({"detect", "none", "present"}));

  eres::VonLuxburgConfig vl;
  std::string vl_family = "radial";
  std::string vl_points;
  auto* vl_cmd = app.add_subcommand("vonluxburg", "Deviation of standard and region ER from 1/d_i + 1/d_j");
  vl_cmd->add_option("--sizes", vl.sizes, "Sample sizes")->delimiter(',');
  vl_cmd->add_option("--kernel-family", vl_family, "radial | gaussian | knn");
  vl_cmd->add_option("--dim", vl.dim, "Dimension of the uniform cube");
  vl_cmd->add_option("--points", vl_points, "Point file to subsample instead of the uniform cube");
  vl_cmd->add_option("--knn-k", vl.knn_k, "Bandwidth neighbour rank (0: n / knn-divisor)");
  vl_cmd->add_option("--knn-divisor", vl.knn_divisor, "Divisor for the default neighbour rank");
  vl_cmd->add_option("--source-k", vl.source_k, "Source radius neighbour rank");
  vl_cmd->add_option("--pairs", vl.pairs, "Node pairs per sample size");
  vl_cmd->add_option("--region-pairs", vl.region_pairs, "Region pairs per sample size");

  eres::HalfmoonConfig hm;
  auto* hm_cmd = app.add_subcommand("halfmoon", "Region ER ratios along a dense arc");
  hm_cmd->add_option("--moon-sizes", hm.moon_sizes, "Arc sample sizes")->delimiter(',');
  hm_cmd->add_option("--background", hm.background, "Background sample size");
  hm_cmd->add_option("--radius", hm.radius, "Arc radius");
  hm_cmd->add_option("--noise-sd", hm.noise_sd, "Radial noise standard deviation");
  hm_cmd->add_option("--kernel-radius", hm.kernel_radius, "Radial kernel radius");
  hm_cmd->add_option("--source-radius", hm.source_radius, "Anchor region radius");
  hm_cmd->add_option("--anchors", hm.anchors, "Anchor angles i,j,k,p in degrees")->delimiter(',');

  eres::SwissRollConfig sr;
  auto* sr_cmd = app.add_subcommand("swissroll", "Region ER ordering along a Swiss roll");
  sr_cmd->add_option("--sizes", sr.sizes, "Sample sizes")->delimiter(',');
  sr_cmd->add_option("--kernel-radius", sr.kernel_radius, "Radial kernel radius");
  sr_cmd->add_option("--source-radius", sr.source_radius, "Anchor region radius");
  sr_cmd->add_option("--anchors", sr.anchors, "Number of anchors");

  eres::CoverCompareConfig cc;
  auto* cc_cmd = app.add_subcommand("cover-compare", "Dense sample graph vs alpha-cover graph");
  cc_cmd->add_option("--alpha", cc.alpha, "Cover radius");
  cc_cmd->add_option("--cover-samples", cc.cover_samples, "Samples used to build the cover");
  cc_cmd->add_option("--gamma-sizes", cc.gamma_sizes, "Prefix sizes for gamma estimation")->delimiter(',');
  cc_cmd->add_option("--dense-sizes", cc.dense_sizes, "Dense graph sample sizes")->delimiter(',');
  cc_cmd->add_option("--kernel-radius", cc.kernel_radius, "Radial kernel radius");
  cc_cmd->add_option("--source-radius", cc.source_radius, "Anchor region radius");
  cc_cmd->add_option("--anchors", cc.anchors, "Anchor positions on [0,1]")->delimiter(',');

  std::string er_points, er_kernel = "radial:0.08", er_scaling = "pointwise", er_source, er_sink;
  std::string er_solver = "schur", er_voltage_csv;
  long er_max_iter = 1'000'000;
  auto* er_cmd = app.add_subcommand("er", "Region ER between two balls of a point file");
  er_cmd->add_option("--points", er_points, "Point file")->required();
  er_cmd->add_option("--kernel", er_kernel, "radial:R | gaussian:SIGMA | knn:K");
  er_cmd->add_option("--scaling", er_scaling, "none | pointwise");
  er_cmd->add_option("--source", er_source, "Source ball x,y,...:r_s")->required();
  er_cmd->add_option("--sink", er_sink, "Sink ball x,y,...:r_s")->required();
  er_cmd->add_option("--solver", er_solver, "schur | direct | fixed-point");
  er_cmd->add_option("--max-iter", er_max_iter, "Fixed-point iteration cap");
  er_cmd->add_option("--voltage-csv", er_voltage_csv, "Write per-node voltages to this file");

  std::string cover_points, cover_gamma_points;
  double cover_alpha = 0.0;
  auto* cover_cmd = app.add_subcommand("cover", "Build an alpha-cover and dump it as CSV");
  cover_cmd->add_option("--points", cover_points, "Point file the cover is built from")->required();
  cover_cmd->add_option("--alpha", cover_alpha, "Cover radius")->required();
  cover_cmd->add_option("--gamma-points", cover_gamma_points,
                        "Point file for the density weights (default: the cover points)");

  CLI11_PARSE(app, argc, argv);
  if (common.quiet) eres::set_warning_sink({});

  try {
    if (*vl_cmd) {
      vl.family = eres::parse_kernel_family(vl_family);
      if (!vl_points.empty()) vl.points = vl_points;
      vl.labels = label_column(common.labels);
      write_outputs(common, eres::run_vonluxburg(vl, run_options(common)), "vonluxburg");
    } else if (*hm_cmd) {
      write_outputs(common, eres::run_halfmoon(hm, run_options(common)), "halfmoon");
    } else if (*sr_cmd) {
      write_outputs(common, eres::run_swissroll(sr, run_options(common)), "swissroll");
    } else if (*cc_cmd) {
      write_outputs(common, eres::run_cover_compare(cc, run_options(common)), "cover_compare");
    } else if (*er_cmd) {
      const eres::PointCloud cloud = eres::read_points(er_points, label_column(common.labels));
      const eres::Kernel kernel = eres::parse_kernel(er_kernel);
      eres::Scaling scaling;
      if (er_scaling == "none") scaling = eres::Unscaled{};
      else if (er_scaling == "pointwise") scaling = eres::Pointwise{};
      else throw eres::InvalidInput("scaling must be none or pointwise");
      const auto source = parse_region(er_source);
      const auto sink = parse_region(er_sink);
      eres::RegionPair regions{eres::ball_region(cloud, source), eres::ball_region(cloud, sink)};
      if (regions.source.empty()) throw eres::EmptyRegion("source ball contains no point");
      if (regions.sink.empty()) throw eres::EmptyRegion("sink ball contains no point");
      const eres::WeightedGraph graph = eres::build_graph(cloud, kernel, scaling);

      double r = 0.0;
      eres::VoltageSolution v;
      if (er_solver == "schur") {
        r = eres::set_er(graph, regions);
        if (!er_voltage_csv.empty()) v = eres::solve_direct({graph, regions}, eres::IsolatedPolicy::drop);
      } else if (er_solver == "direct") {
        v = eres::solve_direct({graph, regions}, eres::IsolatedPolicy::drop);
        r = 1.0 / eres::total_current(graph, v, regions.source);
      } else if (er_solver == "fixed-point") {
        eres::FixedPointOptions opt;
        opt.tol = common.tol;
        opt.max_iter = er_max_iter;
        opt.policy = eres::IsolatedPolicy::drop;
        v = eres::solve_fixed_point({graph, regions}, opt);
        r = 1.0 / eres::total_current(graph, v, regions.source);
        std::cout << "iterations " << v.iterations << " residual " << v.residual << '\n';
      } else {
        throw eres::InvalidInput("solver must be schur, direct or fixed-point");
      }
      std::printf("source_nodes %zu\nsink_nodes %zu\nresistance %.17g\n", regions.source.size(),
                  regions.sink.size(), r);
      if (!er_voltage_csv.empty()) {
        std::ofstream out(er_voltage_csv);
        if (!out) throw eres::IoError("cannot write " + er_voltage_csv);
        eres::write_voltage_csv(out, cloud, v);
      }
    } else if (*cover_cmd) {
      const eres::PointCloud cloud = eres::read_points(cover_points, label_column(common.labels));
      const eres::AlphaCover cover = eres::build_alpha_cover(cloud, cover_alpha);
      eres::CellCounts counts(cover.size());
      counts.add(cover, cover_gamma_points.empty() ? cloud : eres::read_points(cover_gamma_points, label_column(common.labels)));
      std::filesystem::create_directories(common.out);
      const auto path = std::filesystem::path(common.out) / "cover.csv";
      std::ofstream out(path);
      if (!out) throw eres::IoError("cannot write " + path.string());
      eres::write_cover_csv(out, cover, counts);
      std::cout << "centers " << cover.size() << "\nwrote " << path.string() << '\n';
    }
  } catch (const eres::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
