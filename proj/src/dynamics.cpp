#include "ndtc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ndtc {

namespace {

// Excitation count of each two-atom basis state |++>, |+->, |-+>, |-->.
constexpr int kExc[4] = {2, 1, 1, 0};

// Accumulation targets: upper triangle of the reduced matrix.
struct Target {
  int r, c;
};
constexpr Target kTargets[10] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1},
                                 {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};

// Compensated accumulator for one complex entry.
struct KahanC {
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  inline void add(double re, double im) {
    double y = re - cr, t = sr + y;
    cr = (t - sr) - y;
    sr = t;
    y = im - ci;
    t = si + y;
    ci = (t - si) - y;
    si = t;
  }
  cplx value() const { return {sr, si}; }
};

double kahan_sum(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    const double y = x - c, t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace

ReducedDynamics::ReducedDynamics(const ModelParams& params, const AtomPreparation& prep,
                                 EngineMode engines)
    : params_(params), prep_(prep), engines_(engines) {
  rho0_ = initial_atomic_density(prep);
  w1_ = build_thermal_weights(params.nbar1, params.cutoff_tail, params.cutoff_cap);
  w2_ = build_thermal_weights(params.nbar2, params.cutoff_tail, params.cutoff_cap);
  sw1_ = kahan_sum(w1_.weights);
  sw2_ = kahan_sum(w2_.weights);

  const int c1 = w1_.cutoff, c2 = w2_.cutoff;
  if (engines != EngineMode::Analytic) {
    quad_.resize(static_cast<std::size_t>(c1 + 1) * (c2 + 1));
    for (int m1 = 0; m1 <= c1; ++m1)
      for (int m2 = 0; m2 <= c2; ++m2)
        quad_[static_cast<std::size_t>(m1) * (c2 + 1) + m2] =
            sector_eigensystem(Sector::quad(m1, m2), params.alpha);
  }
  tl_.resize(static_cast<std::size_t>(c2) + 1);
  for (int k = 0; k <= c2; ++k) tl_[static_cast<std::size_t>(k)] = sector_eigensystem(Sector::triple_left(k), params.alpha);
  tr_.resize(static_cast<std::size_t>(c1) + 1);
  for (int k = 1; k <= c1; ++k) tr_[static_cast<std::size_t>(k)] = sector_eigensystem(Sector::triple_right(k), params.alpha);

  // For each target (r,c): source pairs (a,b) with e(a)-e(b) = e(r)-e(c); the
  // field trace forbids everything else.  Pairs with zero initial weight are
  // dropped up front (input-dependent, so determinism is unaffected).
  for (int t = 0; t < 10; ++t) {
    const int de = kExc[kTargets[t].r] - kExc[kTargets[t].c];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (kExc[a] - kExc[b] == de && rho0_.at(a, b) != cplx(0.0))
          srcs_[static_cast<std::size_t>(t)].push_back({a, b, rho0_.at(a, b)});
  }
}

void ReducedDynamics::fill_quad_row(int m1, double gt, EngineMode engine,
                                    std::vector<std::array<cplx, 16>>& row) const {
  const int c2 = w2_.cutoff;
  if (engine == EngineMode::Analytic) {
    for (int m2 = 0; m2 <= c2; ++m2)
      quad_block_analytic_into(m1, m2, params_.alpha, gt, row[static_cast<std::size_t>(m2)].data());
  } else {
    for (int m2 = 0; m2 <= c2; ++m2)
      synthesize_propagator(quad_[static_cast<std::size_t>(m1) * (c2 + 1) + m2], gt,
                            row[static_cast<std::size_t>(m2)].data());
  }
}

MatC ReducedDynamics::evolve_rho(double gt, EngineMode engine, EvolveScratch& ws) const {
  if (engine == EngineMode::Both) {
    throw std::invalid_argument("evolve_rho: engine must be Numeric or Analytic");
  }
  if (engine == EngineMode::Numeric && quad_.empty()) {
    throw std::invalid_argument("evolve_rho: numeric tables were not built for this instance");
  }
  const int c1 = w1_.cutoff, c2 = w2_.cutoff;
  ws.row_a.resize(static_cast<std::size_t>(c2) + 1);
  ws.row_b.resize(static_cast<std::size_t>(c2) + 1);
  ws.row_c.resize(static_cast<std::size_t>(c2) + 1);
  ws.tl.resize(static_cast<std::size_t>(c2) + 1);
  ws.tr.resize(static_cast<std::size_t>(c1) + 1);
  for (int k = 0; k <= c2; ++k)
    synthesize_propagator(tl_[static_cast<std::size_t>(k)], gt, ws.tl[static_cast<std::size_t>(k)].data());
  for (int k = 1; k <= c1; ++k)
    synthesize_propagator(tr_[static_cast<std::size_t>(k)], gt, ws.tr[static_cast<std::size_t>(k)].data());

  std::array<KahanC, 10> acc{};
  cplx amp[4][4];  // amp[a][r]: initial atomic component a -> final component r

  // Fixed ascending order: n1 outer, n2 inner.  Quad blocks for rows n1, n1-1,
  // n1-2 are kept in three rolling buffers so each block is synthesized once.
  for (int f1 = 0; f1 <= c1; ++f1) {
    if (f1 > 0) {
      std::swap(ws.row_b, ws.row_c);  // row_c <- old row_b
      std::swap(ws.row_a, ws.row_b);  // row_b <- old row_a, row_a = scratch
    }
    fill_quad_row(f1, gt, engine, ws.row_a);
    const double wf1 = w1_.weights[static_cast<std::size_t>(f1)];

    for (int f2 = 0; f2 <= c2; ++f2) {
      const double w = wf1 * w2_.weights[static_cast<std::size_t>(f2)];

      // |++,f1,f2>: column 0 of Quad(f1,f2).
      const cplx* qa = ws.row_a[static_cast<std::size_t>(f2)].data();
      amp[0][0] = qa[0];
      amp[0][1] = qa[4];
      amp[0][2] = qa[8];
      amp[0][3] = qa[12];

      // |+-,f1,f2> and |-+,f1,f2>: columns 1,2 of Quad(f1-1,f2-1), or the
      // triple sector when a mode is exhausted (no |++> component there).
      if (f1 >= 1 && f2 >= 1) {
        const cplx* qb = ws.row_b[static_cast<std::size_t>(f2 - 1)].data();
        amp[1][0] = qb[1];
        amp[1][1] = qb[5];
        amp[1][2] = qb[9];
        amp[1][3] = qb[13];
        amp[2][0] = qb[2];
        amp[2][1] = qb[6];
        amp[2][2] = qb[10];
        amp[2][3] = qb[14];
      } else {
        const cplx* t3 = (f1 == 0 ? ws.tl[static_cast<std::size_t>(f2)]
                                  : ws.tr[static_cast<std::size_t>(f1)]).data();
        amp[1][0] = 0.0;
        amp[1][1] = t3[0];
        amp[1][2] = t3[3];
        amp[1][3] = t3[6];
        amp[2][0] = 0.0;
        amp[2][1] = t3[1];
        amp[2][2] = t3[4];
        amp[2][3] = t3[7];
      }

      // |--,f1,f2>: column 3 of Quad(f1-2,f2-2), the |--> column of a triple,
      // or a frozen state when a mode is empty.
      if (f1 >= 2 && f2 >= 2) {
        const cplx* qc = ws.row_c[static_cast<std::size_t>(f2 - 2)].data();
        amp[3][0] = qc[3];
        amp[3][1] = qc[7];
        amp[3][2] = qc[11];
        amp[3][3] = qc[15];
      } else if (f1 == 0 || f2 == 0) {
        amp[3][0] = 0.0;
        amp[3][1] = 0.0;
        amp[3][2] = 0.0;
        amp[3][3] = 1.0;
      } else {
        const cplx* t3 = (f1 == 1 ? ws.tl[static_cast<std::size_t>(f2 - 1)]
                                  : ws.tr[static_cast<std::size_t>(f1 - 1)]).data();
        amp[3][0] = 0.0;
        amp[3][1] = t3[2];
        amp[3][2] = t3[5];
        amp[3][3] = t3[8];
      }

      for (int t = 0; t < 10; ++t) {
        const int r = kTargets[t].r, c = kTargets[t].c;
        double re = 0.0, im = 0.0;
        for (const Src& s : srcs_[static_cast<std::size_t>(t)]) {
          const cplx v = s.w * amp[s.a][r] * std::conj(amp[s.b][c]);
          re += v.real();
          im += v.imag();
        }
        acc[static_cast<std::size_t>(t)].add(w * re, w * im);
      }
    }
  }

  MatC rho(4);
  for (int t = 0; t < 10; ++t) {
    const int r = kTargets[t].r, c = kTargets[t].c;
    const cplx v = acc[static_cast<std::size_t>(t)].value();
    if (r == c) {
      // Diagonal sums pair conjugate sources; the residual imaginary part is
      // rounding dust, dropped — equivalent to the (rho+rho†)/2 symmetrization.
      rho.at(r, r) = v.real();
    } else {
      rho.at(r, c) = v;
      rho.at(c, r) = std::conj(v);
    }
  }
  return rho;
}

ReducedState ReducedDynamics::evolve(double gt, EngineMode engine) const {
  EvolveScratch ws;
  return evolve_row(gt, engine, ws).state;
}

SeriesRow ReducedDynamics::evolve_row(double gt, EngineMode mode, EvolveScratch& ws) const {
  try {
    SeriesRow out;
    MatC rho = evolve_rho(gt, mode == EngineMode::Analytic ? EngineMode::Analytic
                                                           : EngineMode::Numeric, ws);
    if (mode == EngineMode::Both) {
      const MatC rho_a = evolve_rho(gt, EngineMode::Analytic, ws);
      out.engine_disagreement = max_abs_diff(rho, rho_a);
    }
    out.state.gt = gt;
    out.state.rho = rho;
    out.state.trace_error = std::abs(rho.trace().real() - 1.0);
    out.state.min_eig = herm_eigen(rho).values[0];
    out.neg = negativity(rho);
    return out;
  } catch (const NoConvergence& e) {
    throw NoConvergence("gt=" + std::to_string(gt) + ": " + e.what());
  }
}

ReducedState evolve_reduced(const ModelParams& params, const AtomPreparation& prep, double gt,
                            EngineMode engine) {
  if (engine == EngineMode::Both) {
    throw std::invalid_argument("evolve_reduced: engine must be Numeric or Analytic");
  }
  return ReducedDynamics(params, prep, engine).evolve(gt, engine);
}

NegativityTrace negativity_series(const ReducedDynamics& dyn, const std::vector<double>& gt_grid,
                                  EngineMode mode, int threads) {
  if (gt_grid.empty()) throw std::invalid_argument("negativity_series: empty time grid");
  for (std::size_t i = 1; i < gt_grid.size(); ++i)
    if (!(gt_grid[i] >= gt_grid[i - 1]))
      throw std::invalid_argument("negativity_series: time grid must be ascending");

  NegativityTrace out;
  out.rows.resize(gt_grid.size());
  int workers = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
  if (workers < 1) workers = 1;
  if (static_cast<std::size_t>(workers) > gt_grid.size())
    workers = static_cast<int>(gt_grid.size());

  if (workers == 1) {
    EvolveScratch ws;
    for (std::size_t i = 0; i < gt_grid.size(); ++i)
      out.rows[i] = dyn.evolve_row(gt_grid[i], mode, ws);
    return out;
  }

  // Each worker owns a disjoint interleaved slice of grid points; every row is
  // produced by the same per-point computation regardless of the slicing, so
  // the output is bitwise independent of the worker count.
  std::vector<std::thread> pool;
  std::mutex err_mu;
  std::exception_ptr err;
  for (int wk = 0; wk < workers; ++wk) {
    pool.emplace_back([&, wk] {
      EvolveScratch ws;
      try {
        for (std::size_t i = static_cast<std::size_t>(wk); i < gt_grid.size();
             i += static_cast<std::size_t>(workers))
          out.rows[i] = dyn.evolve_row(gt_grid[i], mode, ws);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

NegativityTrace negativity_series(const ModelParams& params, const AtomPreparation& prep,
                                  const std::vector<double>& gt_grid, EngineMode mode,
                                  int threads) {
  const ReducedDynamics dyn(params, prep, mode);
  return negativity_series(dyn, gt_grid, mode, threads);
}

const char* appendix_status_name(AppendixStatus s) {
  switch (s) {
    case AppendixStatus::Matched: return "matched";
    case AppendixStatus::Deviating: return "deviating";
    case AppendixStatus::Malformed: return "malformed";
    case AppendixStatus::NotPrinted: return "not-printed";
  }
  return "?";
}

}  // namespace ndtc
