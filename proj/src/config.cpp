#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "ndtc/config.hpp"

#include <CLI11.hpp>

namespace ndtc {

namespace {

struct PresetDef {
  const char* name;
  double alpha, nbar;      // both modes share the occupation in every preset
  double theta1, theta2;   // radians
  double phi1, phi2;
};

constexpr double kPi = std::numbers::pi;

// Named runs from the documentation; angles in radians.
const PresetDef kPresets[] = {
    {"fig1a", 0.1, 0.01, 0.0, kPi / 2, 0.0, 0.0},
    {"fig1b_solid", 0.1, 0.01, kPi / 4, kPi / 4, 0.0, kPi},
    {"fig1b_dashed", 0.1, 0.01, kPi / 4, kPi / 4, 0.0, 0.0},
    {"fig2a", 0.1, 0.2, kPi / 4, kPi / 4, 0.0, 0.0},
    {"fig2b_solid", 0.1, 0.2, kPi / 4, kPi / 4, kPi, 0.0},
    {"fig2b_dashed", 0.1, 0.2, kPi / 4, kPi / 4, kPi / 6, 0.0},
    {"fig3a", 0.1, 10.0, kPi / 4, kPi / 4, 0.0, kPi},
    {"fig3b", 0.1, 40.0, kPi / 4, kPi / 4, 0.0, kPi},
    {"fig4a", 0.3, 20.0, kPi / 4, kPi / 4, 0.0, kPi},
    {"fig4b", 1.0, 20.0, kPi / 4, kPi / 4, 0.0, kPi},
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

bool finite(double v) { return std::isfinite(v); }

// Filename-safe rendering of a sweep value token.
std::string sanitize_token(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
                    (c >= 'A' && c <= 'Z') || c == '.' || c == '+' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? std::string("value") : out;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    // trim surrounding spaces
    std::size_t b = item.find_first_not_of(" \t");
    std::size_t e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return parts;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const PresetDef& p : kPresets) names.emplace_back(p.name);
  return names;
}

void apply_preset(const std::string& name, ModelParams& params, AtomPreparation& prep) {
  for (const PresetDef& p : kPresets) {
    if (name == p.name) {
      params.alpha = p.alpha;
      params.nbar1 = p.nbar;
      params.nbar2 = p.nbar;
      prep.theta1 = p.theta1;
      prep.theta2 = p.theta2;
      prep.phi1 = p.phi1;
      prep.phi2 = p.phi2;
      return;
    }
  }
  throw UsageError("unknown preset '" + name + "'");
}

std::vector<double> make_grid(double gt_max, int steps) {
  require(steps >= 1, "gt-steps must be at least 1");
  require(finite(gt_max) && gt_max >= 0.0, "gt-max must be finite and non-negative");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid.push_back(gt_max);
    return grid;
  }
  for (int i = 0; i < steps; ++i)
    grid.push_back(gt_max * static_cast<double>(i) / static_cast<double>(steps - 1));
  return grid;
}

const char* engine_name(EngineMode mode) {
  switch (mode) {
    case EngineMode::Numeric: return "numeric";
    case EngineMode::Analytic: return "analytic";
    case EngineMode::Both: return "both";
  }
  return "numeric";
}

EngineMode parse_engine(const std::string& name) {
  if (name == "numeric") return EngineMode::Numeric;
  if (name == "analytic") return EngineMode::Analytic;
  if (name == "both") return EngineMode::Both;
  throw UsageError("unknown engine '" + name + "' (expected numeric, analytic, or both)");
}

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::Alpha: return "alpha";
    case SweepAxis::Nbar: return "nbar";
    case SweepAxis::Dphi: return "dphi";
  }
  return "none";
}

std::string sweep_file_name(const std::string& base, SweepAxis axis, const std::string& token) {
  const std::size_t slash = base.find_last_of("/\\");
  const std::size_t dot = base.find_last_of('.');
  const std::string suffix =
      "_" + std::string(sweep_axis_name(axis)) + "-" + sanitize_token(token);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + suffix;
  return base.substr(0, dot) + suffix + base.substr(dot);
}

ParseOutcome parse_command_line(int argc, const char* const* argv) {
  ParseOutcome out;
  RunConfig cfg;

  // Raw flag values; angles arrive in units of pi.
  double theta1 = 0.0, theta2 = 0.0, phi1 = 0.0, phi2 = 0.0;
  std::string engine = "numeric";
  std::string sweep_axis;
  std::string sweep_values;

  CLI::App app{
      "Atom-atom negativity for two dipole-coupled atoms exchanging photon pairs\n"
      "with a two-mode thermal field"};
  app.set_config("--config", "", "read options from a key=value file (explicit flags win)");

  app.add_option("--preset", cfg.preset,
                 "named parameter set; overrides --alpha/--nbar*/--theta*/--phi*")
      ->check(CLI::IsMember(preset_names()));
  app.add_option("--alpha", cfg.params.alpha, "dipole-dipole to field coupling ratio");
  app.add_option("--nbar1", cfg.params.nbar1, "mean thermal occupation of mode 1");
  app.add_option("--nbar2", cfg.params.nbar2, "mean thermal occupation of mode 2");
  app.add_option("--theta1", theta1, "atom 1 mixing angle, units of pi");
  app.add_option("--theta2", theta2, "atom 2 mixing angle, units of pi");
  app.add_option("--phi1", phi1, "atom 1 phase, units of pi");
  app.add_option("--phi2", phi2, "atom 2 phase, units of pi");
  app.add_option("--gt-max", cfg.gt_max, "end of the dimensionless time grid");
  app.add_option("--gt-steps", cfg.gt_steps, "number of grid points (endpoints included)");
  app.add_option("--engine", engine, "numeric, analytic, or both");
  app.add_option("--cutoff-tail", cfg.params.cutoff_tail,
                 "discarded thermal weight per mode");
  app.add_option("--cutoff-cap", cfg.params.cutoff_cap, "hard cap on the photon cutoff");
  app.add_option("--sweep", sweep_axis, "sweep axis: alpha, nbar, or dphi");
  app.add_option("--sweep-values", sweep_values,
                 "comma-separated sweep values (dphi in units of pi)");
  app.add_option("--output", cfg.output_path, "CSV output path");
  app.add_option("--report", cfg.report_path, "JSON run-report path");
  app.add_flag("--appendix-check", cfg.appendix_check,
               "evaluate the published element formulas at sample times and report");
  app.add_option("--threads", cfg.threads, "worker threads (<=0: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    out.exit_now = true;
    out.exit_code = code == 0 ? 0 : 2;
    return out;
  }

  cfg.prep.theta1 = theta1 * kPi;
  cfg.prep.phi1 = phi1 * kPi;
  cfg.prep.theta2 = theta2 * kPi;
  cfg.prep.phi2 = phi2 * kPi;
  if (!cfg.preset.empty()) apply_preset(cfg.preset, cfg.params, cfg.prep);
  cfg.engine = parse_engine(engine);

  require(finite(cfg.params.alpha) && cfg.params.alpha >= 0.0,
          "alpha must be finite and non-negative");
  require(finite(cfg.params.nbar1) && cfg.params.nbar1 >= 0.0,
          "nbar1 must be finite and non-negative");
  require(finite(cfg.params.nbar2) && cfg.params.nbar2 >= 0.0,
          "nbar2 must be finite and non-negative");
  require(finite(cfg.params.cutoff_tail) && cfg.params.cutoff_tail > 0.0 &&
              cfg.params.cutoff_tail < 1.0,
          "cutoff-tail must lie in (0, 1)");
  require(cfg.params.cutoff_cap >= 1, "cutoff-cap must be at least 1");
  require(finite(cfg.prep.theta1) && finite(cfg.prep.theta2) && finite(cfg.prep.phi1) &&
              finite(cfg.prep.phi2),
          "angles must be finite");
  require(finite(cfg.gt_max) && cfg.gt_max >= 0.0, "gt-max must be finite and non-negative");
  require(cfg.gt_steps >= 1, "gt-steps must be at least 1");

  if (!sweep_axis.empty() || !sweep_values.empty()) {
    require(!sweep_axis.empty(), "--sweep-values requires --sweep");
    require(!sweep_values.empty(), "--sweep requires --sweep-values");
    if (sweep_axis == "alpha")
      cfg.sweep = SweepAxis::Alpha;
    else if (sweep_axis == "nbar")
      cfg.sweep = SweepAxis::Nbar;
    else if (sweep_axis == "dphi")
      cfg.sweep = SweepAxis::Dphi;
    else
      throw UsageError("unknown sweep axis '" + sweep_axis +
                       "' (expected alpha, nbar, or dphi)");
    for (const std::string& token : split_csv(sweep_values)) {
      require(!token.empty(), "empty entry in --sweep-values");
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        throw UsageError("sweep value '" + token + "' is not a number");
      }
      require(used == token.size(), "sweep value '" + token + "' is not a number");
      require(finite(value), "sweep value '" + token + "' is not finite");
      if (cfg.sweep != SweepAxis::Dphi)
        require(value >= 0.0, "sweep value '" + token + "' must be non-negative");
      cfg.sweep_values.push_back(value);
      cfg.sweep_tokens.push_back(sanitize_token(token));
    }
    require(!cfg.sweep_values.empty(), "--sweep-values is empty");
  }

  out.config = std::move(cfg);
  return out;
}

}  // namespace ndtc
