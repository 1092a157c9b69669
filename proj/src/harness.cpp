#include "msd/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <set>
#include <sstream>
#include <string_view>

#include "msd/error.hpp"
#include "msd/reference_models.hpp"

namespace msd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out = split(text, '\n');
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

double require_double(const std::string& key, const std::string& value) {
  const auto v = to_double(value);
  if (!v || !std::isfinite(*v)) throw ValidationError("config: '" + key + "' expects a number, got '" + value + "'");
  return *v;
}

int require_int(const std::string& key, const std::string& value) {
  const auto v = to_int(value);
  if (!v) throw ValidationError("config: '" + key + "' expects an integer, got '" + value + "'");
  return *v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return ss.str();
}

// Two-column numeric CSV; a non-numeric first row is taken as a header.
std::pair<std::vector<double>, std::vector<double>> read_two_columns(const std::string& path) {
  std::vector<double> a, b;
  bool first = true;
  const std::string text = read_file(path);  // the line views below point into it
  for (std::string_view line : lines(text)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    const auto x = cells.size() == 2 ? to_double(cells[0]) : std::nullopt;
    const auto y = cells.size() == 2 ? to_double(cells[1]) : std::nullopt;
    if (!x || !y) {
      if (first) {
        first = false;
        continue;
      }
      throw ValidationError(path + ": malformed row '" + std::string(line) + "'");
    }
    first = false;
    a.push_back(*x);
    b.push_back(*y);
  }
  return {a, b};
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Solve:
      return "solve";
    case ExperimentKind::ConvergenceTime:
      return "convergence-time";
    case ExperimentKind::ConvergenceSpace:
      return "convergence-space";
    case ExperimentKind::Figure1:
      return "figure1";
    case ExperimentKind::WeightsDump:
      return "weights-dump";
  }
  return "?";
}

ExperimentKind parse_kind(const std::string& name) {
  for (auto k : {ExperimentKind::Solve, ExperimentKind::ConvergenceTime, ExperimentKind::ConvergenceSpace,
                 ExperimentKind::Figure1, ExperimentKind::WeightsDump}) {
    if (name == to_string(k)) return k;
  }
  throw ValidationError("unknown experiment kind '" + name + "'");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "markdown") return OutputFormat::Markdown;
  throw ValidationError("unknown output format '" + name + "' (expected csv or markdown)");
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues out;
  int lineno = 0;
  for (std::string_view line : lines(text)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

KeyValues load_key_values(const std::string& path) { return parse_key_values(read_file(path)); }

ExperimentConfig make_config(ExperimentKind kind, const KeyValues& values) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  if (kind == ExperimentKind::Figure1) {
    cfg.exponent = "exp-figure1";
    cfg.T = 8.0;
    cfg.N = 800;
  }
  if (kind == ExperimentKind::ConvergenceSpace) {
    cfg.N = 64;
    cfg.M = 8;
  }

  for (const auto& [key, value] : values) {
    if (key == "exponent") cfg.exponent = value;
    else if (key == "alpha_T") cfg.alpha_T = require_double(key, value);
    else if (key == "exponent_table") cfg.exponent_table = value;
    else if (key == "u0") cfg.u0 = value;
    else if (key == "u0_table") cfg.u0_table = value;
    else if (key == "source") cfg.source = value;
    else if (key == "source_amplitude") cfg.source_amplitude = require_double(key, value);
    else if (key == "T") cfg.T = require_double(key, value);
    else if (key == "N") cfg.N = require_int(key, value);
    else if (key == "M") cfg.M = require_int(key, value);
    else if (key == "levels") cfg.levels = require_int(key, value);
    else if (key == "x") cfg.x = require_double(key, value);
    else throw ValidationError("config: unknown key '" + key + "'");
  }

  if (!(cfg.T > 0.0)) throw ValidationError("config: T must be positive");
  if (cfg.N < 1) throw ValidationError("config: N must be positive");
  if (cfg.M < 2) throw ValidationError("config: M must be at least 2");
  const bool convergence = kind == ExperimentKind::ConvergenceTime || kind == ExperimentKind::ConvergenceSpace;
  if (convergence) {
    if (cfg.levels < 2) throw ValidationError("config: convergence studies need levels >= 2");
    if (cfg.levels > 16) throw ValidationError("config: levels above 16 are not supported");
    const int base = kind == ExperimentKind::ConvergenceTime ? cfg.N : cfg.M;
    const int coarse_min = kind == ExperimentKind::ConvergenceTime ? 1 : 2;
    if (base % 2 != 0 || base / 2 < coarse_min) {
      throw ValidationError(std::string("config: the base ") + (kind == ExperimentKind::ConvergenceTime ? "N" : "M") +
                            " must be even and its half a valid discretization");
    }
  }
  if (!(cfg.x >= 0.0 && cfg.x <= 1.0)) throw ValidationError("config: x must lie in [0, 1]");
  return cfg;
}

VariableExponent make_exponent(const ExperimentConfig& cfg) {
  if (cfg.exponent == "exp-example1") return profiles::example1(cfg.T);
  if (cfg.exponent == "exp-example2") return profiles::example2(cfg.T);
  if (cfg.exponent == "exp-figure1") return profiles::figure1(cfg.T, cfg.alpha_T);
  if (cfg.exponent == "zero") return profiles::zero();
  if (cfg.exponent == "table") {
    if (cfg.exponent_table.empty()) throw ValidationError("config: exponent = table needs exponent_table");
    const auto [t, a] = read_two_columns(cfg.exponent_table);
    return profiles::table(t, a, cfg.T);
  }
  throw ValidationError("config: unknown exponent '" + cfg.exponent + "'");
}

SpatialFn make_initial(const ExperimentConfig& cfg) {
  if (cfg.u0 == "sin-pi") return [](double x) { return std::sin(std::numbers::pi * x); };
  if (cfg.u0 == "poly-x2-1mx2") return [](double x) { return x * x * (1.0 - x) * (1.0 - x); };
  if (cfg.u0 == "custom-table") {
    if (cfg.u0_table.empty()) throw ValidationError("config: u0 = custom-table needs u0_table");
    auto [xs, us] = read_two_columns(cfg.u0_table);
    if (xs.size() < 2 || xs.front() != 0.0 || xs.back() != 1.0) {
      throw ValidationError(cfg.u0_table + ": u0 samples must span x = 0 to x = 1");
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (!(xs[i + 1] > xs[i])) throw ValidationError(cfg.u0_table + ": x must increase strictly");
    }
    return [xs = std::move(xs), us = std::move(us)](double x) {
      auto it = std::upper_bound(xs.begin(), xs.end(), x);
      std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
      i = std::min(i, xs.size() - 2);
      const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
      return (1.0 - w) * us[i] + w * us[i + 1];
    };
  }
  throw ValidationError("config: unknown u0 '" + cfg.u0 + "'");
}

SourceFn make_source(const ExperimentConfig& cfg) {
  const double c = cfg.source_amplitude;
  if (cfg.source == "zero") return {};
  if (cfg.source == "constant") return [c](double, double) { return c; };
  if (cfg.source == "sin-pi") return [c](double x, double) { return c * std::sin(std::numbers::pi * x); };
  throw ValidationError("config: unknown source '" + cfg.source + "'");
}

bool RateTable::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const RateRow& r) { return !r.error; });
}

void fill_rates(RateTable& table) {
  for (std::size_t j = 0; j < table.rows.size(); ++j) {
    auto& row = table.rows[j];
    row.rate.reset();
    if (j == 0 || !row.error || !table.rows[j - 1].error) continue;
    row.rate = std::log2(*table.rows[j - 1].error / *row.error);
  }
}

namespace {

struct Outcome {
  std::optional<NodalVector> final_state;
  std::string failure;
};

// Solves every discretization in `params` concurrently; results are keyed by
// parameter so the assembled rows do not depend on completion order.
template <class MakeConfig>
std::map<int, Outcome> solve_all(const std::set<int>& params, MakeConfig make) {
  std::map<int, std::future<Outcome>> running;
  for (int p : params) {
    running.emplace(p, std::async(std::launch::async, [p, &make] {
      Outcome o;
      try {
        o.final_state = solve(make(p)).final_state();
      } catch (const std::exception& e) {
        o.failure = e.what();
      }
      return o;
    }));
  }
  std::map<int, Outcome> out;
  for (auto& [p, f] : running) out.emplace(p, f.get());
  return out;
}

std::vector<std::pair<std::string, std::string>> base_metadata(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> md = {
      {"kind", to_string(cfg.kind)}, {"exponent", cfg.exponent}, {"u0", cfg.u0}, {"source", cfg.source},
      {"T", format_exact(cfg.T)}};
  if (cfg.exponent == "exp-figure1") md.emplace_back("alpha_T", format_exact(cfg.alpha_T));
  return md;
}

template <class MakeConfig, class Measure>
RateTable run_study(const ExperimentConfig& cfg, int base, MakeConfig make, Measure measure) {
  std::vector<int> fine;
  std::set<int> params;
  for (int j = 0; j < cfg.levels; ++j) {
    fine.push_back(base << j);
    params.insert(fine.back());
    params.insert(fine.back() / 2);
  }
  const auto results = solve_all(params, make);

  RateTable table;
  for (int j = 0; j < cfg.levels; ++j) {
    RateRow row;
    row.level = j + 1;
    row.param = fine[static_cast<std::size_t>(j)];
    const Outcome& c = results.at(row.param / 2);
    const Outcome& f = results.at(row.param);
    if (!c.final_state || !f.final_state) {
      row.failure = !c.final_state ? c.failure : f.failure;
    } else {
      try {
        row.error = measure(*c.final_state, *f.final_state, row.param);
      } catch (const std::exception& e) {
        row.failure = e.what();
      }
    }
    table.rows.push_back(std::move(row));
  }
  fill_rates(table);
  return table;
}

}  // namespace

RateTable run_convergence_time(const ExperimentConfig& cfg) {
  const VariableExponent exp = make_exponent(cfg);
  const SpatialFn u0 = make_initial(cfg);
  const SourceFn f = make_source(cfg);
  const Mesh1D mesh(cfg.M);
  auto make = [&](int n) { return SolverConfig{cfg.T, n, mesh, exp, f, u0}; };
  auto measure = [&](const NodalVector& coarse, const NodalVector& fine, int) {
    return discrete_l2_diff(coarse, fine, RefinementMode::TimeRefined, mesh.h());
  };
  RateTable table = run_study(cfg, cfg.N, make, measure);
  table.param_name = "N";
  table.metadata = base_metadata(cfg);
  table.metadata.emplace_back("M", std::to_string(cfg.M));
  return table;
}

RateTable run_convergence_space(const ExperimentConfig& cfg) {
  const VariableExponent exp = make_exponent(cfg);
  const SpatialFn u0 = make_initial(cfg);
  const SourceFn f = make_source(cfg);
  auto make = [&](int m) { return SolverConfig{cfg.T, cfg.N, Mesh1D(m), exp, f, u0}; };
  auto measure = [](const NodalVector& coarse, const NodalVector& fine, int m) {
    return discrete_l2_diff(coarse, fine, RefinementMode::SpaceRefined, 1.0 / static_cast<double>(m));
  };
  RateTable table = run_study(cfg, cfg.M, make, measure);
  table.param_name = "M";
  table.metadata = base_metadata(cfg);
  table.metadata.emplace_back("N", std::to_string(cfg.N));
  return table;
}

std::string format_exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_error(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 4);
  std::string s(buf, ptr);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mant = s.substr(0, e);
  std::string exp = s.substr(e + 1);
  const bool negative = !exp.empty() && exp.front() == '-';
  if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) exp.erase(0, 1);
  const auto nz = exp.find_first_not_of('0');
  exp = nz == std::string::npos ? "0" : exp.substr(nz);
  return mant + "e" + (negative ? "-" : "") + exp;
}

std::string format_rate(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 4);
  return std::string(buf, ptr);
}

std::string emit_table(const RateTable& table, OutputFormat format) {
  if (table.rows.empty()) throw ValidationError("emit_table: table has no rows");
  std::string out;
  if (format == OutputFormat::Csv) {
    for (const auto& [k, v] : table.metadata) out += "# " + k + ": " + v + "\n";
    out += "level," + std::string(table.param_name == "M" ? "M" : "N") + ",error,rate\n";
    for (const auto& r : table.rows) {
      out += std::to_string(r.level) + "," + std::to_string(r.param) + ",";
      out += r.error ? format_exact(*r.error) : std::string("failed");
      out += ",";
      out += r.rate ? format_exact(*r.rate) : std::string("*");
      out += "\n";
    }
    return out;
  }

  const bool space = table.param_name == "M";
  std::string caption;
  for (const auto& [k, v] : table.metadata) caption += (caption.empty() ? "" : ", ") + k + "=" + v;
  if (!caption.empty()) out += caption + "\n\n";
  out += space ? "| M | G2(tau,h) | rate^x |\n" : "| N | E2(tau,h) | rate^t |\n";
  out += "|---|---|---|\n";
  for (const auto& r : table.rows) {
    out += "| " + std::to_string(r.param) + " | ";
    out += r.error ? format_error(*r.error) : std::string("failed");
    out += " | ";
    out += r.rate ? format_rate(*r.rate) : std::string("*");
    out += " |\n";
  }
  return out;
}

RateTable parse_table_csv(const std::string& text) {
  RateTable table;
  bool header_seen = false;
  for (std::string_view line : lines(text)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) throw ValidationError("rate table: malformed metadata line");
      table.metadata.emplace_back(std::string(trim(body.substr(0, colon))), std::string(trim(body.substr(colon + 1))));
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 4) throw ValidationError("rate table: expected 4 columns in '" + std::string(line) + "'");
    if (!header_seen) {
      if (cells[0] != "level" || cells[2] != "error" || cells[3] != "rate") {
        throw ValidationError("rate table: missing header");
      }
      table.param_name = std::string(cells[1]);
      header_seen = true;
      continue;
    }
    RateRow r;
    const auto level = to_int(cells[0]);
    const auto param = to_int(cells[1]);
    if (!level || !param) throw ValidationError("rate table: malformed row '" + std::string(line) + "'");
    r.level = *level;
    r.param = *param;
    if (cells[2] != "failed") {
      r.error = to_double(cells[2]);
      if (!r.error) throw ValidationError("rate table: malformed error in '" + std::string(line) + "'");
    }
    if (cells[3] != "*") {
      r.rate = to_double(cells[3]);
      if (!r.rate) throw ValidationError("rate table: malformed rate in '" + std::string(line) + "'");
    }
    table.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ValidationError("rate table: missing header");
  return table;
}

std::string weights_csv(const WeightTable& table) {
  std::string out = "n,k,b\n";
  for (int n = 1; n <= table.n_steps(); ++n) {
    const auto row = table.row(n);
    for (int k = 1; k <= n; ++k) {
      out += std::to_string(n) + "," + std::to_string(k) + "," +
             format_exact(row[static_cast<std::size_t>(k - 1)]) + "\n";
    }
  }
  return out;
}

std::string snapshot_csv(const SolutionHistory& history, int n) {
  std::string out = "x,value\n";
  const int m = history.mesh.cells();
  for (int i = 0; i <= m; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(m);
    out += format_exact(x) + "," + format_exact(sample_solution(history, x, n)) + "\n";
  }
  return out;
}

std::string run_experiment(const ExperimentConfig& cfg, OutputFormat format, bool* failed) {
  if (failed) *failed = false;
  const bool table_kind = cfg.kind == ExperimentKind::ConvergenceTime || cfg.kind == ExperimentKind::ConvergenceSpace;
  if (!table_kind && format == OutputFormat::Markdown) {
    throw ValidationError(std::string("markdown output is only available for convergence tables, not ") +
                          to_string(cfg.kind));
  }
  switch (cfg.kind) {
    case ExperimentKind::Solve: {
      SolverConfig sc{cfg.T, cfg.N, Mesh1D(cfg.M), make_exponent(cfg), make_source(cfg), make_initial(cfg)};
      const SolutionHistory h = solve(sc);
      return snapshot_csv(h, cfg.N);
    }
    case ExperimentKind::ConvergenceTime:
    case ExperimentKind::ConvergenceSpace: {
      const RateTable t =
          cfg.kind == ExperimentKind::ConvergenceTime ? run_convergence_time(cfg) : run_convergence_space(cfg);
      if (failed) *failed = t.any_failed();
      return emit_table(t, format);
    }
    case ExperimentKind::Figure1: {
      const Figure1Series s = figure1_profiles(cfg.T, cfg.alpha_T, cfg.N, cfg.M, cfg.x);
      std::string out = "t,heat,multiscale,subdiffusion\n";
      for (std::size_t i = 0; i < s.t.size(); ++i) {
        out += format_exact(s.t[i]) + "," + format_exact(s.heat[i]) + "," + format_exact(s.multiscale[i]) + "," +
               format_exact(s.subdiffusion[i]) + "\n";
      }
      return out;
    }
    case ExperimentKind::WeightsDump: {
      const WeightTable w = assemble_weights(cfg.N, cfg.T / static_cast<double>(cfg.N), make_exponent(cfg));
      return weights_csv(w);
    }
  }
  throw ValidationError("unsupported experiment kind");
}

}  // namespace msd
