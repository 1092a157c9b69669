#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msd/exponent.hpp"
#include "msd/fem1d.hpp"
#include "msd/stepper.hpp"
#include "msd/weights.hpp"

namespace msd {

enum class ExperimentKind { Solve, ConvergenceTime, ConvergenceSpace, Figure1, WeightsDump };
enum class OutputFormat { Csv, Markdown };

const char* to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);
OutputFormat parse_format(const std::string& name);

using KeyValues = std::map<std::string, std::string>;

/// Parses a flat `key = value` file. Blank lines and lines starting with
/// '#' or ';' are skipped; anything else without '=' is an error.
KeyValues parse_key_values(const std::string& text);
KeyValues load_key_values(const std::string& path);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Solve;
  std::string exponent = "exp-example1";
  double alpha_T = 0.4;                 // exp-figure1 end value
  std::string exponent_table;           // CSV of (t, alpha) for `table`
  std::string u0 = "sin-pi";
  std::string u0_table;                 // CSV of (x, u0) for `custom-table`
  std::string source = "zero";          // zero | constant | sin-pi
  double source_amplitude = 1.0;
  double T = 1.0;
  int N = 128;
  int M = 32;
  int levels = 5;
  double x = 0.5;                       // figure1 sampling point
};

/// Builds a config for `kind` from defaults, then `values` (unknown keys and
/// malformed numbers raise ValidationError).
ExperimentConfig make_config(ExperimentKind kind, const KeyValues& values);

VariableExponent make_exponent(const ExperimentConfig& cfg);
SpatialFn make_initial(const ExperimentConfig& cfg);
SourceFn make_source(const ExperimentConfig& cfg);

struct RateRow {
  int level = 0;
  int param = 0;                 // N for time studies, M for space studies
  std::optional<double> error;   // empty when the level failed
  std::optional<double> rate;    // log2(error_{j-1} / error_j), empty on the first row
  std::string failure;

  bool operator==(const RateRow&) const = default;
};

struct RateTable {
  std::string param_name = "N";
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<RateRow> rows;

  bool operator==(const RateTable&) const = default;
  bool any_failed() const;
};

/// Row P compares the final states for P/2 and P steps on the fixed mesh
/// (E2 with h = 1/M). Rows are P = N, 2N, ..., 2^{levels-1} N.
RateTable run_convergence_time(const ExperimentConfig& cfg);

/// Row P compares the final states on P/2 and P cells at fixed N, with the
/// coarse node j matched to fine node 2j and the sum weighted by h = 1/P.
RateTable run_convergence_space(const ExperimentConfig& cfg);

/// Fills rate[j] = log2(error[j-1] / error[j]) where both errors exist.
void fill_rates(RateTable& table);

std::string emit_table(const RateTable& table, OutputFormat format);
/// Inverse of emit_table(..., Csv).
RateTable parse_table_csv(const std::string& text);

/// 5 significant digits, exponent without padding: 1.7768e-4.
std::string format_error(double v);
/// Four decimals: 0.8385.
std::string format_rate(double v);
/// Shortest representation that parses back to the same double.
std::string format_exact(double v);

std::string weights_csv(const WeightTable& table);
std::string snapshot_csv(const SolutionHistory& history, int n);

/// Runs the experiment and returns the serialized output. Throws
/// ValidationError, SolverError or IoError. `failed` is set when a
/// convergence level failed but the table was still produced.
std::string run_experiment(const ExperimentConfig& cfg, OutputFormat format, bool* failed = nullptr);

}  // namespace msd
