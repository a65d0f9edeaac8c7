#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "udw/analysis.hpp"
#include "udw/harvest.hpp"

namespace udw::cli {

enum class Command { point, sweep, figure, lmax, lcrit };
enum class OutputFormat { csv, json };

struct RunConfig {
  Command command = Command::point;
  harvest::ScenarioKind scenario = harvest::ScenarioKind::vacuum_static;
  harvest::DetectorParams det;
  double rate = 0.0;        // shared axis: a*sigma = 2 pi T*sigma
  double separation = 1.0;  // L/sigma
  analysis::SweepSpec::Axis axis = analysis::SweepSpec::Axis::separation;
  std::vector<double> grid;
  int figure_id = 0;
  std::string output_path;  // empty = stdout (directory for figures)
  OutputFormat format = OutputFormat::csv;
  int threads = 1;
  double quad_tol = 1e-6;
};

// Exit codes: 0 success, 2 accuracy error, 3 domain/validation error,
// 4 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAccuracy = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitIo = 4;

// "start:stop:step" -> inclusive grid.
std::vector<double> parse_grid(const std::string& text);

// Doubles printed with 17 significant digits so CSV round-trips bit-exactly.
std::string format_double(double v);

void write_sweep_csv(std::ostream& os, const std::vector<analysis::SweepRow>& rows);
std::vector<analysis::SweepRow> read_sweep_csv(std::istream& is);
void write_sweep_json(std::ostream& os, const std::vector<analysis::SweepRow>& rows);

// Figure reproduction: one CSV per panel plus one gnuplot script per figure,
// written into config.output_path (default current directory).
void run_figure(int fig_id, const RunConfig& config);

// Parse argv (flags override --config file values) and execute.  Returns the
// process exit code; never throws.
int run(int argc, const char* const* argv);

// Parse only; throws CLI::ParseError wrapped into domain/contract errors.
RunConfig parse_config(int argc, const char* const* argv);

}  // namespace udw::cli
