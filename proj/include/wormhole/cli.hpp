#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wormhole/gaussian.hpp"
#include "wormhole/sensitivity.hpp"

namespace wormhole::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Command { Figure2, Figure3, Figure4, Sweep, Mc, Threshold, Mimicker, Validate };
enum class Format { Csv, Json };

std::string_view to_string(Command c);
Command parse_command(std::string_view s);

/// Flat key -> value settings. Keys match the long flag names with '-' replaced by '_'.
using Settings = std::map<std::string, std::string>;

/// Every accepted settings key.
const std::vector<std::string>& known_keys();

/// Fully resolved run description. Lengths are in meters.
struct RunConfig {
  Command command = Command::Figure2;
  std::string preset;
  SensitivityInput input;

  // Photon-number grid for the figure commands.
  double n_min = 1e18;
  double n_max = 1e22;
  int n_points = 41;
  std::optional<double> L_alt;     ///< second curve for figure2/figure3
  std::vector<double> nT_grid;     ///< thermal occupations for figure4

  SweepAxis axis = SweepAxis::NPhotons;
  std::vector<double> values;

  ProbeSpec probe{10.0, 0.0, 0.0, 1.0};
  double theta = 0.0;
  int samples = 10000;
  int trials = 1000;

  double tolerance = 0.1;
  double delta_theta = 1e-10;

  std::string output_path;  ///< empty: standard output
  std::uint64_t seed = 0;
  Format format = Format::Csv;
  int threads = 1;

  /// Canonical settings reproducing this config (17 significant digits).
  Settings to_settings() const;
};

std::vector<std::string> preset_names();

/// Settings layer for a named preset. Throws std::invalid_argument listing the
/// available names for unknown presets.
Settings preset_settings(std::string_view name);

/// preset_settings(name) resolved into a RunConfig.
RunConfig preset(std::string_view name);

/// Parses a length with an optional unit suffix: m, nm, um, mm, cm, km, pc, upc.
double parse_length(std::string_view text);

/// Parses a real in plain or scientific notation; the whole string must be consumed.
double parse_real(std::string_view text);

/// Comma-separated reals, or "log:START:STOP:COUNT" for a log-spaced grid.
std::vector<double> parse_real_list(std::string_view text);

/// Reads a config file: flat "key = value" lines ('#' comments), or a JSON run
/// output / object whose settings are re-ingested. Unknown keys are rejected.
Settings read_config_file(const std::string& path);

/// Layers preset <- file <- flags (later wins) and validates every field.
RunConfig resolve(const Settings& file, const Settings& flags);

/// Tabular result of a run.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::string> warnings;
};

Table execute(const RunConfig& config);

std::string render_csv(const Table& table);
std::string render_json(const Table& table);

/// Exit codes of run_main.
enum ExitCode : int { kOk = 0, kParseError = 2, kRegimeError = 3, kNumericError = 4 };

/// Entry point shared by the executable and the tests.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wormhole::cli
