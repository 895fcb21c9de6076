#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ndtc/config.hpp"
#include "ndtc/dynamics.hpp"

namespace py = pybind11;

namespace {

using ndtc::cplx;
using Rows4 = std::vector<std::vector<cplx>>;

Rows4 to_rows(const ndtc::MatC& m) {
  Rows4 rows(4, std::vector<cplx>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
  return rows;
}

ndtc::MatC to_mat(const Rows4& rows) {
  if (rows.size() != 4) throw ndtc::DimMismatch("expected a 4x4 matrix");
  ndtc::MatC m = ndtc::MatC::zero(4);
  for (int i = 0; i < 4; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    if (r.size() != 4) throw ndtc::DimMismatch("expected a 4x4 matrix");
    for (int j = 0; j < 4; ++j) m.at(i, j) = r[static_cast<std::size_t>(j)];
  }
  return m;
}

ndtc::ModelParams make_params(double alpha, double nbar1, double nbar2, double cutoff_tail,
                              int cutoff_cap) {
  ndtc::ModelParams p;
  p.alpha = alpha;
  p.nbar1 = nbar1;
  p.nbar2 = nbar2;
  p.cutoff_tail = cutoff_tail;
  p.cutoff_cap = cutoff_cap;
  return p;
}

ndtc::AtomPreparation make_prep(double theta1, double phi1, double theta2, double phi2) {
  ndtc::AtomPreparation prep;
  prep.theta1 = theta1;
  prep.phi1 = phi1;
  prep.theta2 = theta2;
  prep.phi2 = phi2;
  return prep;
}

py::dict state_dict(const ndtc::ReducedState& st) {
  py::dict d;
  d["gt"] = st.gt;
  d["rho"] = to_rows(st.rho);
  d["trace_error"] = st.trace_error;
  d["min_eig"] = st.min_eig;
  return d;
}

py::dict negativity_dict(const ndtc::NegativityResult& r) {
  py::dict d;
  d["epsilon"] = r.epsilon;
  d["pt_spectrum"] = std::vector<double>(r.pt_spectrum.begin(), r.pt_spectrum.end());
  d["negative_eigs"] = r.negative_eigs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Negativity dynamics of two dipole-coupled two-level atoms exchanging photon pairs "
      "with a two-mode thermal field";

  m.def("thermal_weight", &ndtc::thermal_weight, py::arg("nbar"), py::arg("n"),
        "Thermal photon-number weight nbar^n / (1 + nbar)^(n+1).");

  m.def("thermal_occupation", &ndtc::thermal_occupation, py::arg("x"),
        "Mean occupation 1 / (e^x - 1) for a positive scaled frequency x.");

  m.def(
      "build_thermal_weights",
      [](double nbar, double cutoff_tail, int cutoff_cap) {
        const ndtc::ThermalWeights w = ndtc::build_thermal_weights(nbar, cutoff_tail, cutoff_cap);
        py::dict d;
        d["cutoff"] = w.cutoff;
        d["weights"] = w.weights;
        d["tail"] = w.tail;
        d["clamped"] = w.clamped;
        return d;
      },
      py::arg("nbar"), py::arg("cutoff_tail") = 1e-8, py::arg("cutoff_cap") = 2048,
      "Truncated thermal distribution: smallest cutoff with tail <= cutoff_tail, capped.");

  m.def(
      "initial_atomic_density",
      [](double theta1, double phi1, double theta2, double phi2) {
        return to_rows(ndtc::initial_atomic_density(make_prep(theta1, phi1, theta2, phi2)));
      },
      py::arg("theta1"), py::arg("phi1") = 0.0, py::arg("theta2") = 0.0, py::arg("phi2") = 0.0,
      "4x4 two-atom density matrix for the product preparation (angles in radians).");

  m.def(
      "partial_transpose",
      [](const Rows4& rho) { return to_rows(ndtc::partial_transpose(to_mat(rho))); },
      py::arg("rho"), "Partial transpose over the second atom.");

  m.def(
      "negativity", [](const Rows4& rho) { return negativity_dict(ndtc::negativity(to_mat(rho))); },
      py::arg("rho"),
      "Twice the absolute sum of negative partial-transpose eigenvalues, with the spectrum.");

  m.def(
      "evolve_reduced",
      [](double gt, double alpha, double nbar1, double nbar2, double theta1, double phi1,
         double theta2, double phi2, double cutoff_tail, int cutoff_cap, const std::string& engine) {
        const ndtc::ReducedState st = ndtc::evolve_reduced(
            make_params(alpha, nbar1, nbar2, cutoff_tail, cutoff_cap),
            make_prep(theta1, phi1, theta2, phi2), gt, ndtc::parse_engine(engine));
        return state_dict(st);
      },
      py::arg("gt"), py::arg("alpha") = 0.1, py::arg("nbar1") = 0.0, py::arg("nbar2") = 0.0,
      py::arg("theta1") = 0.0, py::arg("phi1") = 0.0, py::arg("theta2") = 0.0,
      py::arg("phi2") = 0.0, py::arg("cutoff_tail") = 1e-8, py::arg("cutoff_cap") = 2048,
      py::arg("engine") = "numeric",
      "Reduced two-atom state at dimensionless time gt, with trace and positivity diagnostics.");

  m.def(
      "negativity_series",
      [](const std::vector<double>& gt_grid, double alpha, double nbar1, double nbar2,
         double theta1, double phi1, double theta2, double phi2, double cutoff_tail,
         int cutoff_cap, const std::string& engine, int threads) {
        const ndtc::EngineMode mode = ndtc::parse_engine(engine);
        const ndtc::NegativityTrace trace = ndtc::negativity_series(
            make_params(alpha, nbar1, nbar2, cutoff_tail, cutoff_cap),
            make_prep(theta1, phi1, theta2, phi2), gt_grid, mode, threads);
        std::vector<double> gts, eps, terr, meig, dis;
        for (const ndtc::SeriesRow& row : trace.rows) {
          gts.push_back(row.state.gt);
          eps.push_back(row.neg.epsilon);
          terr.push_back(row.state.trace_error);
          meig.push_back(row.state.min_eig);
          dis.push_back(row.engine_disagreement);
        }
        py::dict d;
        d["gt"] = gts;
        d["epsilon"] = eps;
        d["trace_error"] = terr;
        d["min_eig"] = meig;
        if (mode == ndtc::EngineMode::Both) d["engine_disagreement"] = dis;
        return d;
      },
      py::arg("gt_grid"), py::arg("alpha") = 0.1, py::arg("nbar1") = 0.0, py::arg("nbar2") = 0.0,
      py::arg("theta1") = 0.0, py::arg("phi1") = 0.0, py::arg("theta2") = 0.0,
      py::arg("phi2") = 0.0, py::arg("cutoff_tail") = 1e-8, py::arg("cutoff_cap") = 2048,
      py::arg("engine") = "numeric", py::arg("threads") = 0,
      "Negativity and diagnostics over an ascending time grid.");

  m.def(
      "preset",
      [](const std::string& name) {
        ndtc::ModelParams p;
        ndtc::AtomPreparation prep;
        ndtc::apply_preset(name, p, prep);
        py::dict d;
        d["alpha"] = p.alpha;
        d["nbar1"] = p.nbar1;
        d["nbar2"] = p.nbar2;
        d["theta1"] = prep.theta1;
        d["phi1"] = prep.phi1;
        d["theta2"] = prep.theta2;
        d["phi2"] = prep.phi2;
        return d;
      },
      py::arg("name"), "Physics fields of a named parameter set (angles in radians).");

  m.def("preset_names", &ndtc::preset_names, "Names of the documented parameter sets.");
}
