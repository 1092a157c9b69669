// msd: command-line driver for the multiscale diffusion solver.
//
//   msd solve|convergence-time|convergence-space|figure1|weights-dump
//       [--config <path>] [--key value ...] [--out <path>] [--format csv|markdown]
//
// Exit codes: 0 success, 2 validation error, 3 solver failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msd/error.hpp"
#include "msd/harness.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

// Remaining arguments must come as `--key value` or `--key=value` pairs.
msd::KeyValues parse_overrides(const std::vector<std::string>& extras) {
  msd::KeyValues out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() < 3) {
      throw msd::ValidationError("unexpected argument '" + arg + "'");
    }
    const auto eq = arg.find('=');
    if (eq != std::string::npos) {
      out[arg.substr(2, eq - 2)] = arg.substr(eq + 1);
      continue;
    }
    if (i + 1 >= extras.size()) throw msd::ValidationError("option '" + arg + "' needs a value");
    out[arg.substr(2)] = extras[++i];
  }
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw msd::IoError(path, "cannot open for writing");
  out << text;
  out.close();
  if (!out) throw msd::IoError(path, "write failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-exponent multiscale diffusion solver"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name = "csv";
  for (const char* name : {"solve", "convergence-time", "convergence-space", "figure1", "weights-dump"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_path, "output path (stdout when omitted)");
    sub->add_option("--format", format_name, "csv or markdown");
    sub->allow_extras();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const msd::ExperimentKind kind = msd::parse_kind(sub->get_name());
    const msd::OutputFormat format = msd::parse_format(format_name);
    msd::KeyValues values;
    if (!config_path.empty()) values = msd::load_key_values(config_path);
    for (auto& [k, v] : parse_overrides(sub->remaining())) values[k] = v;
    const msd::ExperimentConfig cfg = msd::make_config(kind, values);

    bool failed = false;
    const std::string text = msd::run_experiment(cfg, format, &failed);
    write_output(out_path, text);
    if (failed) {
      std::cerr << "msd: one or more refinement levels failed\n";
      return kExitSolver;
    }
    return 0;
  } catch (const msd::SolverError& e) {
    std::cerr << "msd: solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const msd::IoError& e) {
    std::cerr << "msd: " << e.what() << "\n";
    return kExitValidation;
  } catch (const msd::ValidationError& e) {
    std::cerr << "msd: invalid input: " << e.what() << "\n";
    return kExitValidation;
  }
}
