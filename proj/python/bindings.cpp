#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "temple/errors.hpp"
#include "temple/pipeline.hpp"

namespace py = pybind11;
using namespace temple;

namespace {

TransformSpec transform_for(const std::variant<std::string, std::vector<double>>& flux, std::pair<double, double> I,
                            std::optional<double> K) {
  RunConfig c;
  c.flux = flux;
  c.interval = {I.first, I.second};
  return make_transform(make_flux(c), K);
}

State to_state(std::pair<double, double> w) { return {w.first, w.second}; }
std::pair<double, double> from_state(State w) { return {w.eta, w.v}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temple-system Lagrangian solver for scalar conservation laws.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SchemeError>(m, "SchemeError", PyExc_RuntimeError);
  py::register_exception<PropertyViolation>(m, "PropertyViolation", PyExc_RuntimeError);

  py::class_<TransformSpec>(m, "Transform")
      .def_property_readonly("orientation", &TransformSpec::orientation)
      .def_property_readonly("L", &TransformSpec::L)
      .def_property_readonly("K", &TransformSpec::K)
      .def_property_readonly("K_bound", &TransformSpec::K_bound)
      .def_property_readonly("margin", &TransformSpec::margin)
      .def_property_readonly("interval_tilde",
                             [](const TransformSpec& t) {
                               return std::pair{t.interval_tilde().lo, t.interval_tilde().hi};
                             })
      .def("g", &TransformSpec::g)
      .def("G", &TransformSpec::G)
      .def("G_prime", &TransformSpec::G_prime)
      .def("to_sigma", &TransformSpec::to_sigma)
      .def("recover_rho", &TransformSpec::recover_rho);

  m.def("make_transform", &transform_for, py::arg("flux"), py::arg("interval"), py::arg("K") = py::none(),
        "Orientation, shift L, flux shift K and velocity G for a catalog name or polynomial coefficients.");

  m.def(
      "lambda2",
      [](const TransformSpec& t, std::pair<double, double> w) {
        return lambda2(to_state(w), [&t](double s) { return t.G_prime(s); });
      },
      py::arg("transform"), py::arg("state"));
  m.def(
      "middle_state", [](std::pair<double, double> l, std::pair<double, double> r) {
        return from_state(middle_state(to_state(l), to_state(r)));
      },
      py::arg("left"), py::arg("right"));
  m.def(
      "solve_riemann",
      [](const TransformSpec& t, std::pair<double, double> l, std::pair<double, double> r, double xi) {
        return from_state(solve_riemann(to_state(l), to_state(r), xi, t.velocity()));
      },
      py::arg("transform"), py::arg("left"), py::arg("right"), py::arg("xi"),
      "Self-similar Temple Riemann solution at x/t = xi, as (eta, v).");

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("stage", [](const RunResult& r) { return stage_name(r.stage); })
      .def_property_readonly("snapshot_times", [](const RunResult& r) { return r.snapshot_times; })
      .def_property_readonly("violations", [](const RunResult& r) { return r.violations; })
      .def_property_readonly("region", [](const RunResult& r) { return std::pair{r.region.m, r.region.M}; })
      .def("report_json", [](const RunResult& r) { return report_json(r).dump(); })
      .def(
          "cells",
          [](const RunResult& r, double t) {
            if (!r.history) throw ValidationError("stage produced no solution");
            const CellField& f = r.history->exactly_at(t);
            std::vector<double> x, eta, v;
            for (int j = 0; j < f.grid.n_cells; ++j) {
              x.push_back(f.grid.center(j));
              eta.push_back(f.states[j].eta);
              v.push_back(f.states[j].v);
            }
            return py::make_tuple(x, eta, v);
          },
          py::arg("t"), "Cell centres, eta and v at a level time.")
      .def(
          "gamma",
          [](const RunResult& r, double t) {
            if (!r.gamma) throw ValidationError("stage produced no gamma");
            const auto row = r.gamma->row_at(t);
            return py::make_tuple(r.gamma->nodes, std::vector<double>(row.begin(), row.end()));
          },
          py::arg("t"), "Nodes x_j and gamma(x_j, t).")
      .def(
          "recovered",
          [](const RunResult& r, std::size_t i) {
            const ScalarField& f = r.recovered.at(i);
            std::vector<double> y;
            for (int j = 0; j < f.grid.n_cells; ++j) y.push_back(f.grid.center(j));
            return py::make_tuple(y, f.values);
          },
          py::arg("snapshot"), "Cell-centre y and recovered rho for one snapshot.")
      .def("l1_vs_oracle", [](const RunResult& r) {
        std::vector<double> out;
        for (const Comparison& c : r.comparisons) out.push_back(c.l1);
        return out;
      })
      .def("artifacts", [](const RunResult& r) { return render_artifacts(r); })
      .def("write", [](const RunResult& r, const std::string& dir) { write_artifacts(r, dir); }, py::arg("dir"));

  m.def(
      "run",
      [](const std::string& config_json, const std::string& stage) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::parse_error& e) {
          throw ValidationError(e.what());
        }
        const RunConfig c = parse_config(j);
        py::gil_scoped_release release;
        return run_pipeline(c, parse_stage(stage));
      },
      py::arg("config_json"), py::arg("stage"));
}
