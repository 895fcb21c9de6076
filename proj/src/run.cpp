#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "ndtc/run.hpp"

#include <json.hpp>

namespace ndtc {

namespace {

// Locale-free shortest-faithful rendering (17 significant digits round-trips).
std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string element_name(int row, int col) {
  return "rho" + std::to_string(row) + std::to_string(col);
}

nlohmann::json mode_report(double nbar, const ThermalWeights& w) {
  return {{"nbar", nbar}, {"cutoff", w.cutoff}, {"tail", w.tail}, {"clamped", w.clamped}};
}

// Up to five distinct sample times spread over the grid.
std::vector<double> appendix_sample_times(const std::vector<double>& grid) {
  const std::size_t n = grid.size();
  std::set<std::size_t> idx = {0, n / 4, n / 2, (3 * n) / 4, n - 1};
  std::vector<double> times;
  for (std::size_t i : idx)
    if (i < n) times.push_back(grid[i]);
  return times;
}

int severity(AppendixStatus s) {
  switch (s) {
    case AppendixStatus::Matched: return 0;
    case AppendixStatus::NotPrinted: return 1;
    case AppendixStatus::Deviating: return 2;
    case AppendixStatus::Malformed: return 3;
  }
  return 0;
}

struct ErratumRow {
  AppendixStatus status = AppendixStatus::Matched;
  double max_deviation = 0.0;
  std::string note;
};

nlohmann::json run_appendix_check(const RunConfig& cfg, const std::vector<double>& grid) {
  nlohmann::json samples = nlohmann::json::array();
  // Keyed by (row, col); collects the worst status seen across sample times.
  std::map<std::pair<int, int>, ErratumRow> errata;

  for (double gt : appendix_sample_times(grid)) {
    nlohmann::json elements = nlohmann::json::array();
    for (const AppendixElement& el : appendix_elements(cfg.params, cfg.prep, gt)) {
      nlohmann::json item = {{"element", element_name(el.row, el.col)},
                             {"row", el.row},
                             {"col", el.col},
                             {"status", appendix_status_name(el.status)},
                             {"engine_re", el.engine.real()},
                             {"engine_im", el.engine.imag()}};
      if (el.status == AppendixStatus::Matched || el.status == AppendixStatus::Deviating) {
        item["printed_re"] = el.printed.real();
        item["printed_im"] = el.printed.imag();
        item["deviation"] = el.deviation;
      }
      if (!el.note.empty()) item["note"] = el.note;
      elements.push_back(std::move(item));

      const bool clean = el.status == AppendixStatus::Matched && el.note.empty();
      if (!clean) {
        ErratumRow& row = errata[{el.row, el.col}];
        if (severity(el.status) >= severity(row.status)) row.status = el.status;
        row.max_deviation = std::max(row.max_deviation, el.deviation);
        if (row.note.empty()) row.note = el.note;
      }
    }
    samples.push_back({{"gt", gt}, {"elements", std::move(elements)}});
  }

  nlohmann::json errata_json = nlohmann::json::array();
  for (const auto& [key, row] : errata)
    errata_json.push_back({{"element", element_name(key.first, key.second)},
                           {"status", appendix_status_name(row.status)},
                           {"max_deviation", row.max_deviation},
                           {"note", row.note}});
  return {{"samples", std::move(samples)}, {"errata", std::move(errata_json)}};
}

int run_single(const RunConfig& cfg, const std::string& out_path,
               const std::string& report_path) {
  const std::vector<double> grid = make_grid(cfg.gt_max, cfg.gt_steps);

  const ReducedDynamics dyn(cfg.params, cfg.prep, cfg.engine);
  if (dyn.truncation_clamped())
    std::cerr << "warning: photon cutoff clamped at cap " << cfg.params.cutoff_cap
              << "; discarded thermal weight exceeds " << fmt_double(cfg.params.cutoff_tail)
              << " (mode tails " << fmt_double(dyn.weights1().tail) << ", "
              << fmt_double(dyn.weights2().tail) << ")\n";

  const auto t0 = std::chrono::steady_clock::now();
  const NegativityTrace trace = negativity_series(dyn, grid, cfg.engine, cfg.threads);
  const double wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const bool both = cfg.engine == EngineMode::Both;
  std::ofstream csv(out_path, std::ios::binary);
  if (!csv) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return 1;
  }
  csv << "gt,epsilon,trace_error,min_eig";
  if (both) csv << ",engine_disagreement";
  csv << '\n';

  double max_eps = 0.0, max_eps_gt = grid.front();
  double max_trace_error = 0.0, min_eig = 0.0, max_disagreement = 0.0;
  for (const SeriesRow& row : trace.rows) {
    csv << fmt_double(row.state.gt) << ',' << fmt_double(row.neg.epsilon) << ','
        << fmt_double(row.state.trace_error) << ',' << fmt_double(row.state.min_eig);
    if (both) csv << ',' << fmt_double(row.engine_disagreement);
    csv << '\n';
    if (row.neg.epsilon > max_eps) {
      max_eps = row.neg.epsilon;
      max_eps_gt = row.state.gt;
    }
    max_trace_error = std::max(max_trace_error, row.state.trace_error);
    min_eig = std::min(min_eig, row.state.min_eig);
    max_disagreement = std::max(max_disagreement, row.engine_disagreement);
  }
  csv.flush();
  if (!csv) {
    std::cerr << "error: failed writing '" << out_path << "'\n";
    return 1;
  }

  if (!report_path.empty()) {
    nlohmann::json j = {
        {"engine", engine_name(cfg.engine)},
        {"preset", cfg.preset},
        {"alpha", cfg.params.alpha},
        {"nbar1", cfg.params.nbar1},
        {"nbar2", cfg.params.nbar2},
        {"theta1", cfg.prep.theta1},
        {"phi1", cfg.prep.phi1},
        {"theta2", cfg.prep.theta2},
        {"phi2", cfg.prep.phi2},
        {"cutoff_tail", cfg.params.cutoff_tail},
        {"cutoff_cap", cfg.params.cutoff_cap},
        {"gt_max", cfg.gt_max},
        {"gt_steps", cfg.gt_steps},
        {"threads", cfg.threads},
        {"mode1", mode_report(cfg.params.nbar1, dyn.weights1())},
        {"mode2", mode_report(cfg.params.nbar2, dyn.weights2())},
        {"trace_target", dyn.trace_target()},
        {"truncation_clamped", dyn.truncation_clamped()},
        {"rows", trace.rows.size()},
        {"wall_time_s", wall_s},
        {"max_epsilon", max_eps},
        {"max_epsilon_gt", max_eps_gt},
        {"max_trace_error", max_trace_error},
        {"min_eigenvalue", min_eig},
        {"output", out_path},
    };
    if (both) j["max_engine_disagreement"] = max_disagreement;
    if (cfg.appendix_check) j["appendix"] = run_appendix_check(cfg, grid);

    std::ofstream rep(report_path, std::ios::binary);
    if (!rep) {
      std::cerr << "error: cannot open '" << report_path << "' for writing\n";
      return 1;
    }
    rep << j.dump(2) << '\n';
    rep.flush();
    if (!rep) {
      std::cerr << "error: failed writing '" << report_path << "'\n";
      return 1;
    }
  }

  std::cout << "wrote " << out_path << " (" << trace.rows.size() << " rows, max epsilon "
            << fmt_double(max_eps) << " at gt=" << fmt_double(max_eps_gt) << ")\n";
  return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    if (cfg.sweep == SweepAxis::None) return run_single(cfg, cfg.output_path, cfg.report_path);

    for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
      RunConfig one = cfg;
      one.sweep = SweepAxis::None;
      one.sweep_values.clear();
      one.sweep_tokens.clear();
      const double v = cfg.sweep_values[i];
      switch (cfg.sweep) {
        case SweepAxis::Alpha:
          one.params.alpha = v;
          break;
        case SweepAxis::Nbar:
          one.params.nbar1 = v;
          one.params.nbar2 = v;
          break;
        case SweepAxis::Dphi:
          one.prep.phi1 = v * std::numbers::pi;
          one.prep.phi2 = 0.0;
          break;
        case SweepAxis::None:
          break;
      }
      const std::string& token = cfg.sweep_tokens[i];
      const std::string out_path = sweep_file_name(cfg.output_path, cfg.sweep, token);
      const std::string report_path =
          cfg.report_path.empty() ? std::string()
                                  : sweep_file_name(cfg.report_path, cfg.sweep, token);
      const int code = run_single(one, out_path, report_path);
      if (code != 0) return code;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ndtc
