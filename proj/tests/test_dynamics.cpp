#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ndtc/dynamics.hpp"
#include "oracle.hpp"

using namespace ndtc;
using ndtc_test::FullSpaceOracle;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams params_with(double alpha, double nbar1, double nbar2, double tail = 1e-8,
                        int cap = 2048) {
  ModelParams p;
  p.alpha = alpha;
  p.nbar1 = nbar1;
  p.nbar2 = nbar2;
  p.cutoff_tail = tail;
  p.cutoff_cap = cap;
  return p;
}

AtomPreparation prep_with(double theta1, double phi1, double theta2, double phi2) {
  return AtomPreparation{theta1, phi1, theta2, phi2};
}

const AtomPreparation kPlusMinus = prep_with(0.0, 0.0, kPi / 2, 0.0);       // |+,->
const AtomPreparation kCoherent = prep_with(kPi / 4, 0.3, kPi / 4, 1.1);    // all coherences

MatC scale(const MatC& m, double s) {
  MatC out = m;
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) out.at(i, j) *= s;
  return out;
}

// Conjugation by the permutation swapping the |+-> and |-+> basis slots.
MatC swap_central(const MatC& m) {
  const auto s = [](int i) { return i == 1 ? 2 : i == 2 ? 1 : i; };
  MatC out = MatC::zero(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.at(i, j) = m.at(s(i), s(j));
  return out;
}

const AppendixElement& find_element(const std::vector<AppendixElement>& els, int row, int col) {
  for (const AppendixElement& el : els)
    if (el.row == row && el.col == col) return el;
  REQUIRE(false);
  return els.front();
}

}  // namespace

TEST_CASE("zero time returns the preparation scaled by the retained weight") {
  for (const AtomPreparation& prep : {kPlusMinus, kCoherent}) {
    const ModelParams params = params_with(0.1, 0.2, 0.05);
    const ReducedDynamics dyn(params, prep);
    const ReducedState st = dyn.evolve(0.0);
    const MatC expected = scale(initial_atomic_density(prep), dyn.trace_target());
    CHECK(max_abs_diff(st.rho, expected) <= 1e-13);
    CHECK(negativity(st.rho).epsilon == 0.0);
  }
}

TEST_CASE("dark configuration stays put") {
  // |-,-> with mode 1 in vacuum: every populated joint state is inert.
  const ModelParams params = params_with(0.1, 0.0, 0.4);
  const AtomPreparation prep = prep_with(kPi / 2, 0.0, kPi / 2, 0.0);
  const ReducedDynamics dyn(params, prep);
  for (double gt : {0.0, 1.0, 7.7}) {
    CAPTURE(gt);
    const ReducedState st = dyn.evolve(gt);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != 3 || j != 3) CHECK(st.rho.at(i, j) == cplx(0.0));
    CHECK(std::abs(st.rho.at(3, 3).real() - dyn.trace_target()) <= 1e-15);
    CHECK(negativity(st.rho).epsilon == 0.0);
  }
}

TEST_CASE("full-space oracle equivalence at the smallest documented configuration") {
  // alpha=0.1, nbar=0.01 both modes, prep |+,->; engine capped to cutoff 6 so
  // both sides sum the same thermal terms.
  const ModelParams params = params_with(0.1, 0.01, 0.01, 1e-30, 6);
  const ReducedDynamics dyn(params, kPlusMinus);
  REQUIRE(dyn.weights1().cutoff == 6);
  const FullSpaceOracle oracle(params.alpha, 6, 6);
  const std::array<cplx, 4> psi = initial_atomic_state(kPlusMinus);
  for (double gt : {0.5, 1.0, 3.0, 10.0}) {
    CAPTURE(gt);
    const MatC ref =
        oracle.reduced_density(psi, dyn.weights1().weights, dyn.weights2().weights, gt);
    CHECK(max_abs_diff(dyn.evolve(gt).rho, ref) <= 1e-8);
  }
}

TEST_CASE("full-space oracle equivalence across preparations and couplings") {
  const AtomPreparation tilted = prep_with(0.3, 0.7, 1.1, -0.4);
  for (double alpha : {0.0, 0.3}) {
    CAPTURE(alpha);
    const FullSpaceOracle oracle(alpha, 6, 6);
    const ModelParams params = params_with(alpha, 0.3, 0.2, 1e-30, 6);
    for (const AtomPreparation& prep :
         {prep_with(0.0, 0.0, 0.0, 0.0), prep_with(kPi / 4, 0.0, kPi / 4, kPi), tilted}) {
      const ReducedDynamics dyn(params, prep);
      const std::array<cplx, 4> psi = initial_atomic_state(prep);
      for (double gt : {0.5, 3.0}) {
        CAPTURE(gt);
        const MatC ref =
            oracle.reduced_density(psi, dyn.weights1().weights, dyn.weights2().weights, gt);
        CHECK(max_abs_diff(dyn.evolve(gt).rho, ref) <= 1e-8);
      }
    }
  }
}

TEST_CASE("state invariants on a generic run") {
  const ModelParams params = params_with(0.3, 0.6, 0.25);
  const ReducedDynamics dyn(params, kCoherent);
  EvolveScratch ws;
  for (double gt : {0.3, 1.7, 12.0, 24.9}) {
    CAPTURE(gt);
    const SeriesRow row = dyn.evolve_row(gt, EngineMode::Numeric, ws);
    CHECK(hermiticity_error(row.state.rho) <= 1e-12);
    CHECK(std::abs(row.state.rho.trace().real() - dyn.trace_target()) <= 1e-10);
    CHECK(row.state.min_eig >= -1e-9);
    CHECK(row.neg.epsilon >= 0.0);
    CHECK(row.neg.epsilon <= 1.0 + 1e-9);
  }
}

TEST_CASE("atom-exchange covariance") {
  const ModelParams params = params_with(0.2, 0.25, 0.6);
  const AtomPreparation prep = prep_with(0.4, 1.1, 1.0, -0.3);
  const AtomPreparation swapped = prep_with(1.0, -0.3, 0.4, 1.1);
  const ReducedDynamics dyn_a(params, prep);
  const ReducedDynamics dyn_b(params, swapped);
  for (double gt : {0.7, 4.1}) {
    CAPTURE(gt);
    CHECK(max_abs_diff(dyn_b.evolve(gt).rho, swap_central(dyn_a.evolve(gt).rho)) <= 1e-10);
  }
}

TEST_CASE("incoherent preparations ignore phases bitwise") {
  const ModelParams params = params_with(0.1, 0.2, 0.05);
  for (double theta1 : {0.0, kPi / 2})
    for (double theta2 : {0.0, kPi / 2}) {
      CAPTURE(theta1);
      CAPTURE(theta2);
      const MatC a =
          evolve_reduced(params, prep_with(theta1, 0.0, theta2, 0.0), 2.3).rho;
      const MatC b =
          evolve_reduced(params, prep_with(theta1, 0.37 * kPi, theta2, 1.9), 2.3).rho;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(a.at(i, j) == b.at(i, j));
    }
}

TEST_CASE("enlarging the cutoffs moves entries by at most the tail bound") {
  const ModelParams params = params_with(0.1, 0.2, 0.35, 1e-6);
  const ReducedDynamics dyn(params, kCoherent);
  const double tail_bound = dyn.weights1().tail + dyn.weights2().tail;

  const int big = std::max(dyn.weights1().cutoff, dyn.weights2().cutoff) + 20;
  const ModelParams wide = params_with(0.1, 0.2, 0.35, 1e-30, big);
  const ReducedDynamics dyn_wide(wide, kCoherent);
  REQUIRE(dyn_wide.weights1().cutoff >= dyn.weights1().cutoff + 20);
  REQUIRE(dyn_wide.weights2().cutoff >= dyn.weights2().cutoff + 20);

  for (double gt : {0.9, 6.2}) {
    CAPTURE(gt);
    CHECK(max_abs_diff(dyn.evolve(gt).rho, dyn_wide.evolve(gt).rho) <= 10.0 * tail_bound);
  }
}

TEST_CASE("series is bitwise independent of the worker count") {
  const ModelParams params = params_with(0.1, 0.2, 0.2);
  std::vector<double> grid;
  for (int i = 0; i < 41; ++i) grid.push_back(25.0 * i / 40.0);
  const NegativityTrace one = negativity_series(params, kCoherent, grid, EngineMode::Numeric, 1);
  const NegativityTrace five = negativity_series(params, kCoherent, grid, EngineMode::Numeric, 5);
  REQUIRE(one.rows.size() == five.rows.size());
  for (std::size_t k = 0; k < one.rows.size(); ++k) {
    CHECK(one.rows[k].neg.epsilon == five.rows[k].neg.epsilon);
    CHECK(one.rows[k].state.min_eig == five.rows[k].state.min_eig);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(one.rows[k].state.rho.at(i, j) == five.rows[k].state.rho.at(i, j));
  }
}

TEST_CASE("thermal field generates entanglement from an incoherent preparation") {
  const ModelParams params = params_with(0.1, 0.01, 0.01);
  std::vector<double> grid;
  for (int i = 0; i < 101; ++i) grid.push_back(25.0 * i / 100.0);
  const NegativityTrace trace = negativity_series(params, kPlusMinus, grid);
  double max_eps = 0.0;
  for (const SeriesRow& row : trace.rows) max_eps = std::max(max_eps, row.neg.epsilon);
  CHECK(max_eps > 0.01);
  CHECK(trace.rows.front().neg.epsilon == 0.0);
}

TEST_CASE("closed-form engine agrees with the numeric engine") {
  const ModelParams params = params_with(0.3, 0.4, 0.15);
  const ReducedDynamics dyn(params, kCoherent, EngineMode::Both);
  EvolveScratch ws;
  for (double gt : {0.6, 5.0, 19.3}) {
    CAPTURE(gt);
    const SeriesRow row = dyn.evolve_row(gt, EngineMode::Both, ws);
    CHECK(row.engine_disagreement <= 1e-9);
  }
}

TEST_CASE("series rejects bad grids and engine misuse") {
  const ModelParams params = params_with(0.1, 0.1, 0.1);
  CHECK_THROWS_AS(negativity_series(params, kPlusMinus, {}), std::invalid_argument);
  CHECK_THROWS_AS(negativity_series(params, kPlusMinus, {1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(evolve_reduced(params, kPlusMinus, 1.0, EngineMode::Both),
                  std::invalid_argument);
  const ReducedDynamics analytic_only(params, kPlusMinus, EngineMode::Analytic);
  EvolveScratch ws;
  CHECK_THROWS_AS(analytic_only.evolve_rho(1.0, EngineMode::Numeric, ws),
                  std::invalid_argument);
}

TEST_CASE("hard cap clamps the cutoff and flags it") {
  const ModelParams params = params_with(0.1, 3.0, 3.0, 1e-12, 5);
  const ReducedDynamics dyn(params, kPlusMinus);
  CHECK(dyn.truncation_clamped());
  CHECK(dyn.weights1().cutoff == 5);
  CHECK(dyn.weights1().tail > 1e-12);
  const ReducedState st = dyn.evolve(1.0);
  CHECK(std::abs(st.rho.trace().real() - dyn.trace_target()) <= 1e-10);
}

TEST_CASE("single separable point") {
  const NegativityTrace trace =
      negativity_series(params_with(0.1, 0.2, 0.2), kPlusMinus, {0.0});
  REQUIRE(trace.rows.size() == 1);
  CHECK(trace.rows[0].neg.epsilon == 0.0);
}

// ---------------------------------------------------------------------------
// Published element formulas, evaluated verbatim against the engine.

TEST_CASE("published rho11 formula matches for the doubly excited preparation") {
  const ModelParams params = params_with(0.1, 0.01, 0.01);
  const std::vector<AppendixElement> els =
      appendix_elements(params, prep_with(0.0, 0.0, 0.0, 0.0), 1.0);
  const AppendixElement& el = find_element(els, 1, 1);
  CHECK(el.status == AppendixStatus::Matched);
  CHECK(el.deviation <= 1e-8);
  CHECK(el.engine.real() > 0.0);
}

TEST_CASE("published formulas at the incoherent baseline configuration") {
  const ModelParams params = params_with(0.1, 0.01, 0.01);
  const std::vector<AppendixElement> els = appendix_elements(params, kPlusMinus, 2.0);
  REQUIRE(els.size() == 10);

  const auto status_of = [&](int r, int c) { return find_element(els, r, c).status; };
  // Sound formulas — and defective ones whose defect multiplies a vanishing
  // source here — agree with the engine.
  CHECK(status_of(1, 2) == AppendixStatus::Matched);
  CHECK(status_of(1, 3) == AppendixStatus::Matched);
  CHECK(status_of(2, 2) == AppendixStatus::Matched);
  CHECK(status_of(2, 3) == AppendixStatus::Matched);
  CHECK(status_of(2, 4) == AppendixStatus::Matched);
  CHECK(status_of(3, 4) == AppendixStatus::Matched);
  // The grouping slips zero out populations the engine feeds.
  CHECK(status_of(1, 1) == AppendixStatus::Deviating);
  CHECK(status_of(3, 3) == AppendixStatus::Deviating);
  CHECK(find_element(els, 1, 1).deviation > 1e-8);
  CHECK(find_element(els, 3, 3).deviation > 1e-6);
  // Unparseable / absent entries.
  CHECK(status_of(1, 4) == AppendixStatus::Malformed);
  CHECK(status_of(4, 4) == AppendixStatus::NotPrinted);

  // Every dispositioned defect carries an explanation.
  for (const AppendixElement& el : els)
    if (el.status != AppendixStatus::Matched) CHECK(!el.note.empty());
  // Engine truth is reported even where the formula is unusable.
  CHECK(std::abs(find_element(els, 4, 4).engine -
                 evolve_reduced(params, kPlusMinus, 2.0).rho.at(3, 3)) <= 1e-14);
}

TEST_CASE("published formulas at zero time, coherent preparation") {
  // At gt=0 every propagator factor collapses; deviations isolate the print
  // defects exactly.
  const ModelParams params = params_with(0.1, 0.01, 0.01, 1e-15);
  const MatC rho0 = initial_atomic_density(kCoherent);
  const ReducedDynamics dyn(params, kCoherent);
  const double target = dyn.trace_target();

  const std::vector<AppendixElement> els = appendix_elements(params, kCoherent, 0.0);

  // Structurally sound at t=0: reproduce the initial elements (times the
  // retained thermal weight) to near machine precision.
  for (const auto& [r, c] : std::vector<std::pair<int, int>>{
           {1, 1}, {1, 3}, {2, 2}, {2, 3}, {2, 4}, {3, 4}}) {
    CAPTURE(r);
    CAPTURE(c);
    const AppendixElement& el = find_element(els, r, c);
    CHECK(el.status == AppendixStatus::Matched);
    CHECK(std::abs(el.printed - rho0.at(r - 1, c - 1) * target) <= 1e-12);
  }

  // rho12's second coefficient is printed U*22 instead of U*23, which at t=0
  // injects the full rho13(0): the literal evaluator must reproduce exactly
  // that offset.
  const AppendixElement& r12 = find_element(els, 1, 2);
  CHECK(r12.status == AppendixStatus::Deviating);
  CHECK(std::abs(r12.deviation - std::abs(rho0.at(0, 2)) * target) <= 1e-12);

  // rho33's bracket is multiplied by rho11(0): offset (1 - rho11(0))rho33(0).
  const AppendixElement& r33 = find_element(els, 3, 3);
  CHECK(r33.status == AppendixStatus::Deviating);
  CHECK(std::abs(r33.deviation -
                 (1.0 - rho0.at(0, 0).real()) * rho0.at(2, 2).real() * target) <= 1e-12);
}
