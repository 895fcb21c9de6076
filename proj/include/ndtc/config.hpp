#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ndtc/dynamics.hpp"
#include "ndtc/model.hpp"

namespace ndtc {

// Bad command-line / config-file input.  The CLI maps this to exit code 2.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

enum class SweepAxis { None, Alpha, Nbar, Dphi };

// One fully validated run request, angles in radians.
struct RunConfig {
  ModelParams params;
  AtomPreparation prep;
  double gt_max = 25.0;
  int gt_steps = 500;
  EngineMode engine = EngineMode::Numeric;
  std::string preset;  // empty when none was requested

  SweepAxis sweep = SweepAxis::None;
  std::vector<double> sweep_values;        // parsed values, one run each
  std::vector<std::string> sweep_tokens;   // filename-safe value tokens

  std::string output_path = "negativity.csv";
  std::string report_path;  // empty: no JSON report
  bool appendix_check = false;
  int threads = 0;  // <=0: use hardware concurrency
};

struct ParseOutcome {
  bool exit_now = false;  // --help or a parser-level error was already handled
  int exit_code = 0;
  RunConfig config;
};

// Parses argv (and an optional --config key=value file; explicit flags win).
// Angles are taken in units of pi on the command line.  Throws UsageError on
// invalid values; parser-level errors are reported via the outcome instead.
ParseOutcome parse_command_line(int argc, const char* const* argv);

// Named parameter sets matching the documented example runs.  apply_preset
// overwrites every physics field (coupling ratio, occupations, angles) and
// leaves numerical controls (grid, cutoffs, engine) untouched.
std::vector<std::string> preset_names();
void apply_preset(const std::string& name, ModelParams& params, AtomPreparation& prep);

// Uniform time grid: gt_i = gt_max * i / (steps - 1); a single step yields
// {gt_max}.  steps < 1 or gt_max < 0 is a usage error.
std::vector<double> make_grid(double gt_max, int steps);

const char* engine_name(EngineMode mode);
EngineMode parse_engine(const std::string& name);  // throws UsageError

const char* sweep_axis_name(SweepAxis axis);

// "out/negativity.csv" + (Alpha, "0.3") -> "out/negativity_alpha-0.3.csv"
std::string sweep_file_name(const std::string& base, SweepAxis axis, const std::string& token);

}  // namespace ndtc
