#pragma once

#include <string>
#include <vector>

#include "ndtc/entanglement.hpp"
#include "ndtc/model.hpp"
#include "ndtc/propagator.hpp"

namespace ndtc {

// Numeric: every sector block via its eigensystem.  Analytic: interior quads
// from the closed forms (boundary triples stay numeric).  Both: run the two
// and record their max entrywise disagreement; numeric is the engine of record.
enum class EngineMode { Numeric, Analytic, Both };

struct ReducedState {
  double gt = 0.0;
  MatC rho;                  // 4x4 Hermitian by construction
  double trace_error = 0.0;  // |Re tr(rho) - 1| (the thermal tail deficit)
  double min_eig = 0.0;      // most negative eigenvalue, diagnostic
};

struct SeriesRow {
  ReducedState state;
  NegativityResult neg;
  double engine_disagreement = 0.0;  // Both mode only
};

struct NegativityTrace {
  std::vector<SeriesRow> rows;  // one per grid point, in grid order
};

// Reusable per-worker scratch for the thermal double sum: three rolling rows
// of quad propagator blocks (field index n1, n1-1, n1-2) plus the boundary
// triple blocks for the current time point.  Contents are fully rewritten on
// each evolve call; reuse only amortizes allocation.
struct EvolveScratch {
  std::vector<std::array<cplx, 16>> row_a, row_b, row_c;
  std::vector<std::array<cplx, 9>> tl, tr;
};

// Precomputes thermal weights, the initial atomic density, and per-sector
// eigensystems for one parameter set, then evolves the reduced two-atom state
// to any time.  Construction does the O(cutoff^2) eigenwork once; each time
// point reuses it.  const member functions are safe to call concurrently.
class ReducedDynamics {
 public:
  // engines selects which propagator tables to prepare (Numeric and Both
  // build the quad eigensystem table; Analytic needs only the triples).
  ReducedDynamics(const ModelParams& params, const AtomPreparation& prep,
                  EngineMode engines = EngineMode::Numeric);

  MatC evolve_rho(double gt, EngineMode engine, EvolveScratch& scratch) const;
  ReducedState evolve(double gt, EngineMode engine = EngineMode::Numeric) const;
  SeriesRow evolve_row(double gt, EngineMode mode, EvolveScratch& scratch) const;

  const ThermalWeights& weights1() const { return w1_; }
  const ThermalWeights& weights2() const { return w2_; }
  bool truncation_clamped() const { return w1_.clamped || w2_.clamped; }
  double trace_target() const { return sw1_ * sw2_; }  // (sum p1)(sum p2)
  const MatC& rho0() const { return rho0_; }
  const ModelParams& params() const { return params_; }

 private:
  void fill_quad_row(int m1, double gt, EngineMode engine,
                     std::vector<std::array<cplx, 16>>& row) const;

  ModelParams params_;
  AtomPreparation prep_;
  MatC rho0_;
  ThermalWeights w1_, w2_;
  double sw1_ = 1.0, sw2_ = 1.0;
  EngineMode engines_;
  std::vector<SectorEigen> quad_;  // index m1*(c2+1)+m2; empty in Analytic mode
  std::vector<SectorEigen> tl_;    // index k in 0..c2
  std::vector<SectorEigen> tr_;    // index k in 1..c1 (slot 0 unused)

  // Per target entry (upper triangle), the initial-state index pairs (a,b)
  // with matching excitation difference and nonzero rho0 weight.
  struct Src {
    int a, b;
    cplx w;
  };
  std::array<std::vector<Src>, 10> srcs_;
};

// One-shot evolution (builds the tables for a single time point).
ReducedState evolve_reduced(const ModelParams& params, const AtomPreparation& prep, double gt,
                            EngineMode engine = EngineMode::Numeric);

// Negativity along a time grid.  threads <= 0 means hardware concurrency.
// Rows are computed independently per grid point with a fixed per-point
// summation order, so the result is bitwise identical for any thread count.
NegativityTrace negativity_series(const ReducedDynamics& dyn, const std::vector<double>& gt_grid,
                                  EngineMode mode = EngineMode::Numeric, int threads = 1);
NegativityTrace negativity_series(const ModelParams& params, const AtomPreparation& prep,
                                  const std::vector<double>& gt_grid,
                                  EngineMode mode = EngineMode::Numeric, int threads = 1);

// --- Published element-formula cross-check ----------------------------------

enum class AppendixStatus {
  Matched,    // evaluates as printed and agrees with the engine at this config
  Deviating,  // evaluates as printed but disagrees with the engine
  Malformed,  // cannot be evaluated as printed; skipped
  NotPrinted, // no published formula exists for this element
};

struct AppendixElement {
  int row = 1, col = 1;  // 1-based upper-triangle position
  AppendixStatus status = AppendixStatus::NotPrinted;
  cplx printed;       // as-printed evaluation (valid unless Malformed/NotPrinted)
  cplx engine;        // evolve_reduced truth
  double deviation = 0.0;
  std::string note;   // print-defect description; empty when the text is clean
};

// Evaluates the ten published element formulas verbatim (typos included) at
// one time point and reports each against the engine.  Unparseable entries
// degrade to Malformed errata instead of failing the run.
std::vector<AppendixElement> appendix_elements(const ModelParams& params,
                                               const AtomPreparation& prep, double gt,
                                               double match_tol = 1e-8);

const char* appendix_status_name(AppendixStatus s);

}  // namespace ndtc
