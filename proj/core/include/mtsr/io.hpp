#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mtsr/calibration.hpp"
#include "mtsr/estimators.hpp"
#include "mtsr/experiment.hpp"
#include "mtsr/model.hpp"
#include "mtsr/theory.hpp"

namespace mtsr {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSweepCsvHeader =
    "procedure,p,k,s,n,beta,rho,n_runs,n_success,p_success,ci_low,ci_high";

/// Strict JSON (de)serialization. Unknown keys, wrong types and out-of-range
/// values raise ConfigError naming the field.
ProblemConfig problem_config_from_json(const std::string& text);
std::string to_json(const ProblemConfig& config);

SweepConfig sweep_config_from_json(const std::string& text);
std::string to_json(const SweepConfig& config);

/// Reads a config file. Documents with a "p_list" key are sweep configs;
/// everything else is parsed as a single problem. Throws IoError when the
/// file cannot be read.
std::variant<SweepConfig, ProblemConfig> parse_config(const std::filesystem::path& path);

/// Per-p derived sizes of a sweep (k, s, n and epsilon per beta) as JSON.
std::string describe_derived(const SweepConfig& config);

std::string to_json(const CalibrationReport& report);
std::string to_json(const LowerBoundReport& report);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// CSV with header `procedure,p,k,s,n,beta,rho,n_runs,n_success,p_success,ci_low,ci_high`.
std::string sweep_csv(const SweepResult& result);

/// Parses the sweep CSV back into cells (the header must match exactly).
std::vector<CellResult> parse_sweep_csv(const std::string& text);

/// Matrix CSV: header `row,t0,...,t{k-1}`, then one line per row.
std::string matrix_csv(const Matrix& values);
Matrix parse_matrix_csv(const std::string& text);

/// Support CSV: header `row`, then one index per line.
std::string support_csv(const SupportSet& support);

struct PlotInput {
  std::vector<CellResult> cells;
  /// Optional reference lines: lower-bound mu divided by each curve's mu scale.
  std::vector<MuReference> mu_reference;
  std::vector<LowerBoundReference> lower_bound_mu;
};

PlotInput plot_input(const SweepResult& result);

/// Plot input rebuilt from CSV cells. With a config, reference lines are
/// recomputed from the calibration formulas for every plotted curve.
PlotInput plot_input(std::vector<CellResult> cells, const std::optional<SweepConfig>& config);

/// One panel per (p, beta): success probability against rho for each
/// procedure, with dashed vertical lines at the rho implied by the minimax
/// lower bound. Output is a pure function of the input.
std::string render_svg(const PlotInput& input);

struct ManifestEntry {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command = "sweep";
  std::string config_digest;
  std::uint64_t master_seed = 0;
  std::string tool_version = kToolVersion;
  std::string started;
  std::string finished;
  std::vector<ManifestEntry> outputs;
};

std::string to_json(const RunManifest& manifest);

std::string sha256_hex(const std::string& bytes);
std::string utc_timestamp();

/// Writes to a sibling temporary file and renames it into place, so readers
/// never observe a partially written file. Throws IoError with the path.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

/// Writes the CSV (and SVG when requested), then `<csv>.manifest.json`
/// listing both with their digests.
RunManifest write_results(const SweepResult& result, const std::filesystem::path& csv_path,
                          const std::optional<std::filesystem::path>& svg_path = std::nullopt,
                          const std::string& started = {});

}  // namespace mtsr
