#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "degmlmc/cli.hpp"
#include "degmlmc/config.hpp"
#include "degmlmc/harness.hpp"
#include "degmlmc/parallel.hpp"
#include "degmlmc/sampling.hpp"

namespace py = pybind11;
using namespace degmlmc;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> centers(const GridSpec& g) {
  std::vector<double> x(g.n_cells());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = g.center(j);
  return to_array(x);
}

// Keys as in the config file; values may be str, int, float or bool.
ExperimentConfig make_config(const py::dict& settings) {
  ConfigMap entries;
  for (const auto& [k, v] : settings) {
    const auto key = py::str(k).cast<std::string>();
    std::string value;
    if (py::isinstance<py::bool_>(v))
      value = v.cast<bool>() ? "true" : "false";
    else if (py::isinstance<py::float_>(v))
      value = py::repr(v).cast<std::string>();
    else
      value = py::str(v).cast<std::string>();
    entries[key] = ConfigEntry{value, "argument '" + key + "'"};
  }
  ExperimentConfig cfg;
  apply_config(entries, cfg);
  cfg.validate();
  cfg.workers = resolve_workers(cfg.workers);
  return cfg;
}

py::dict work_dict(const WorkCounter& w) {
  py::dict d;
  d["flux_evals"] = w.flux_evals;
  d["cell_updates"] = w.cell_updates;
  d["newton_iters"] = w.newton_iters;
  d["linear_solves"] = w.linear_solves;
  return d;
}

py::dict estimator_dict(const EstimatorResult& r) {
  py::dict d;
  d["x"] = centers(r.mean.grid());
  d["mean"] = to_array(r.mean.values());
  d["std"] = to_array(r.std.values());
  d["m_samples"] = r.m_samples;
  d["work"] = work_dict(r.work);
  d["provenance"] = r.provenance;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "MC/MLMC finite difference solver for degenerate convection-diffusion equations";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def("config_keys", [] {
    std::vector<std::string> keys;
    for (const auto& s : config_sections())
      for (const auto& k : config_keys(s)) keys.push_back(k);
    return keys;
  });

  m.def(
      "solve",
      [](const py::dict& settings, std::vector<double> parameters) {
        const auto cfg = make_config(settings);
        const auto grid = single_level_grid(cfg);
        if (parameters.empty())
          for (const auto& [lo, hi] : cfg.model.parameter_box()) parameters.push_back(0.5 * (lo + hi));
        RunResult res = [&] {
          py::gil_scoped_release release;
          const auto sample = build_sample(cfg.model, parameters);
          return run(sample.u0, sample.flux, grid, cfg.scheme, cfg.T);
        }();
        py::dict d;
        d["x"] = centers(grid);
        d["u"] = to_array(res.field.values());
        d["time"] = res.field.time();
        d["work"] = work_dict(res.work);
        return d;
      },
      py::arg("settings") = py::dict(), py::arg("parameters") = std::vector<double>{},
      "Deterministic run on the grid of spacing `dx`; random parameters default to the box center.");

  m.def(
      "mc_estimate",
      [](const py::dict& settings) {
        const auto cfg = make_config(settings);
        const auto grid = single_level_grid(cfg);
        EstimatorResult r = [&] {
          py::gil_scoped_release release;
          return mc_estimate(cfg.model, grid, cfg.scheme, cfg.T, cfg.M, cfg.seed, cfg.workers);
        }();
        return estimator_dict(r);
      },
      py::arg("settings") = py::dict());

  m.def(
      "mlmc_estimate",
      [](const py::dict& settings) {
        const auto cfg = make_config(settings);
        const auto h = make_hierarchy(cfg, cfg.L_max);
        MlmcResult r = [&] {
          py::gil_scoped_release release;
          return mlmc_run(cfg.model, h, cfg.scheme, cfg.T, cfg.seed, cfg.workers);
        }();
        auto d = estimator_dict(r.mean);
        d["second_moment"] = to_array(r.second_moment.mean.values());
        py::list levels;
        for (const auto& s : r.diagnostics.levels) {
          py::dict l;
          l["level"] = s.level;
          l["dx"] = s.dx;
          l["M"] = s.samples;
          l["detail_l1_mean"] = s.detail_l1_mean;
          l["detail_l1_var"] = s.detail_l1_var;
          l["cell_updates"] = s.work.cell_updates;
          levels.append(l);
        }
        d["levels"] = levels;
        return d;
      },
      py::arg("settings") = py::dict());

  m.def(
      "convergence_study",
      [](const py::dict& settings) {
        const auto cfg = make_config(settings);
        ErrorReport rep = [&] {
          py::gil_scoped_release release;
          return convergence_study(cfg);
        }();
        py::list rows;
        for (const auto& r : rep.rows) {
          py::dict d;
          d["L"] = r.L;
          d["RE"] = r.re;
          d["dx"] = r.dx;
          d["runtime_s"] = r.runtime_s;
          d["cell_updates"] = r.cell_updates;
          d["bv"] = r.bv;
          d["linf"] = r.linf;
          rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["rate_dx"] = rep.rate_dx;
        out["rate_wall"] = rep.rate_wall;
        out["rate_cell_updates"] = rep.rate_cell_updates;
        return out;
      },
      py::arg("settings") = py::dict());

  m.def("sample_allocation", py::overload_cast<int, int, std::size_t>(&sample_allocation),
        py::arg("K"), py::arg("L"), py::arg("m_base"));
  m.def("philox4x32", &philox4x32, py::arg("counter"), py::arg("key"));
  m.def("thomas_periodic",
        [](const std::vector<double>& lower, const std::vector<double>& diag,
           const std::vector<double>& upper, double corner_bottom_left, double corner_top_right,
           const std::vector<double>& rhs) {
          return to_array(thomas_periodic(lower, diag, upper, corner_bottom_left, corner_top_right, rhs));
        },
        py::arg("lower"), py::arg("diag"), py::arg("upper"), py::arg("corner_bottom_left"),
        py::arg("corner_top_right"), py::arg("rhs"));

  m.def("capillary_pressure", &capillary_pressure, py::arg("s"));
  m.def(
      "fractional_flow",
      [](double s, double p, double q) {
        TwoPhaseParams params;
        params.q = q;
        return fractional_flow(s, exponent_permeability(p), params);
      },
      py::arg("s"), py::arg("p") = 2.0, py::arg("q") = 1.0);
  m.def(
      "diffusion_coefficient",
      [](double s, double p, double nu) {
        TwoPhaseParams params;
        params.nu = nu;
        return diffusion_coefficient(s, exponent_permeability(p), params);
      },
      py::arg("s"), py::arg("p") = 2.0, py::arg("nu") = 0.01);
}
