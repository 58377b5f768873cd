#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace eres {

/// One measurement of an experiment sweep.
struct ExperimentRecord {
  std::string experiment;
  std::size_t n = 0;
  std::string quantity;
  double value = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

inline constexpr const char* kCsvHeader = "experiment,n,quantity,value,seed,wall_ms";

/// Header plus one LF-terminated row per record; reals with 17 significant digits.
void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_csv(std::istream& is);

/// One polyline per (experiment, quantity, seed) against n on a log-scaled x axis.
void write_svg(std::ostream& os, const std::vector<ExperimentRecord>& records,
               const std::string& title = "");

enum class OutputFormat { csv, svg };

/// Writes <dir>/<stem>.csv and/or <dir>/<stem>.svg, creating `dir` if needed.
/// InvalidInput for empty records, IoError when a file cannot be written.
std::vector<std::filesystem::path> emit(const std::vector<ExperimentRecord>& records,
                                        const std::vector<OutputFormat>& formats,
                                        const std::filesystem::path& dir, const std::string& stem);

}  // namespace eres
