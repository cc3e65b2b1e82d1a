#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <vector>

#include "gdnls/errors.hpp"
#include "gdnls/fit.hpp"
#include "gdnls/gauge.hpp"
#include "gdnls/model.hpp"
#include "gdnls/spectral.hpp"
#include "gdnls/stepper.hpp"

namespace py = pybind11;
using namespace gdnls;

namespace {

using ComplexArray = py::array_t<std::complex<double>,
                                 py::array::c_style | py::array::forcecast>;

// Python-facing handle around the shared immutable grid.
struct PyGrid {
  GridPtr ptr;
};

Field to_field(const PyGrid& grid, const ComplexArray& values) {
  if (values.ndim() != 1 ||
      values.shape(0) != static_cast<py::ssize_t>(grid.ptr->n())) {
    throw ValidationError("array length must match the grid size");
  }
  std::vector<complex> data(values.data(), values.data() + values.shape(0));
  return Field(grid.ptr, std::move(data));
}

ComplexArray to_array(const Field& f) {
  // Fully explicit shape + strides + pointer: the only array_t constructor
  // whose layout survives pybind11 builds older than numpy 2.
  return ComplexArray({static_cast<py::ssize_t>(f.size())},
                      {static_cast<py::ssize_t>(sizeof(complex))},
                      f.values().data());
}

ModelParams make_params(double sigma, double omega, double c) {
  ModelParams p;
  p.sigma = sigma;
  p.omega = omega;
  p.c = c;
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_gdnls, m) {
  m.doc() = "pseudospectral core for a derivative NLS equation";

  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<BlowUpError>(m, "BlowUpError");

  py::class_<PyGrid>(m, "Grid")
      .def(py::init([](int n, double length) {
             return PyGrid{make_grid(n, length)};
           }),
           py::arg("n"), py::arg("length"))
      .def_property_readonly("n", [](const PyGrid& g) { return g.ptr->n(); })
      .def_property_readonly("length",
                             [](const PyGrid& g) { return g.ptr->length(); })
      .def_property_readonly("dx", [](const PyGrid& g) { return g.ptr->dx(); })
      .def_property_readonly("nodes", [](const PyGrid& g) {
        return py::array_t<double>({static_cast<py::ssize_t>(g.ptr->n())},
                                   {static_cast<py::ssize_t>(sizeof(double))},
                                   g.ptr->nodes().data());
      });

  m.def(
      "derivative",
      [](const PyGrid& g, const ComplexArray& u) {
        return to_array(spectral_derivative(to_field(g, u)));
      },
      py::arg("grid"), py::arg("u"));
  m.def(
      "free_propagate",
      [](const PyGrid& g, const ComplexArray& u, double t) {
        return to_array(free_propagate(to_field(g, u), t));
      },
      py::arg("grid"), py::arg("u"), py::arg("t"));
  m.def(
      "norms",
      [](const PyGrid& g, const ComplexArray& u) {
        const NormTriple n = norms(to_field(g, u));
        return py::make_tuple(n.l2, n.h1, n.linf);
      },
      py::arg("grid"), py::arg("u"));

  m.def(
      "mass",
      [](const PyGrid& g, const ComplexArray& u) {
        return mass(to_field(g, u));
      },
      py::arg("grid"), py::arg("u"));
  m.def(
      "momentum",
      [](const PyGrid& g, const ComplexArray& u) {
        return momentum(to_field(g, u));
      },
      py::arg("grid"), py::arg("u"));
  m.def(
      "energy",
      [](const PyGrid& g, const ComplexArray& u, double sigma) {
        return energy(to_field(g, u), sigma);
      },
      py::arg("grid"), py::arg("u"), py::arg("sigma"));
  m.def(
      "action",
      [](const PyGrid& g, const ComplexArray& u, double sigma, double omega,
         double c) {
        return action_S(to_field(g, u), make_params(sigma, omega, c));
      },
      py::arg("grid"), py::arg("u"), py::arg("sigma"), py::arg("omega"),
      py::arg("c") = 0.0);
  m.def(
      "nehari",
      [](const PyGrid& g, const ComplexArray& u, double sigma, double omega,
         double c) {
        return nehari_K(to_field(g, u), make_params(sigma, omega, c));
      },
      py::arg("grid"), py::arg("u"), py::arg("sigma"), py::arg("omega"),
      py::arg("c") = 0.0);

  m.def(
      "ground_state",
      [](const PyGrid& g, double sigma, double omega) {
        return to_array(
            ground_state_profile(g.ptr, make_params(sigma, omega, 0.0)));
      },
      py::arg("grid"), py::arg("sigma"), py::arg("omega"));
  m.def("mu_omega0", &mu_omega0, py::arg("sigma"), py::arg("omega"));
  m.def(
      "global_predicate",
      [](const PyGrid& g, const ComplexArray& u, double sigma, double omega) {
        const GlobalPredicate p =
            global_predicate(to_field(g, u), make_params(sigma, omega, 0.0));
        py::dict out;
        out["holds"] = p.holds;
        out["lhs"] = p.lhs;
        out["threshold"] = p.threshold;
        out["margin"] = p.margin;
        return out;
      },
      py::arg("grid"), py::arg("u"), py::arg("sigma"), py::arg("omega"));

  m.def(
      "gauge_g1",
      [](const PyGrid& g, const ComplexArray& u, double sigma) {
        return to_array(gauge_g1(to_field(g, u), make_params(sigma, 1.0, 0.0)));
      },
      py::arg("grid"), py::arg("u"), py::arg("sigma"));
  m.def(
      "gauge_g2",
      [](const PyGrid& g, const ComplexArray& u, double sigma) {
        return to_array(gauge_g2(to_field(g, u), make_params(sigma, 1.0, 0.0)));
      },
      py::arg("grid"), py::arg("u"), py::arg("sigma"));
  m.def(
      "gauge_inverse",
      [](const PyGrid& g, const ComplexArray& v, double sigma) {
        return to_array(
            gauge_inverse(to_field(g, v), make_params(sigma, 1.0, 0.0)));
      },
      py::arg("grid"), py::arg("v"), py::arg("sigma"));

  m.def(
      "evolve",
      [](const PyGrid& g, const ComplexArray& u0, double sigma, double dt,
         double t_end, int record_every) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_start = 0.0;
        cfg.t_end = t_end;
        cfg.record_every = record_every;
        const ModelParams p = make_params(sigma, 1.0, 0.0);
        const FieldTrajectory tr = evolve_gdnls(to_field(g, u0), cfg, p);
        py::dict out;
        out["t"] = tr.times;
        out["u"] = to_array(tr.final_state());
        out["mass"] = tr.mass_series;
        out["energy"] = tr.energy_series;
        out["momentum"] = tr.momentum_series;
        return out;
      },
      py::arg("grid"), py::arg("u0"), py::arg("sigma"), py::arg("dt"),
      py::arg("t_end"), py::arg("record_every") = 16);

  m.def(
      "fit_loglog",
      [](const std::vector<double>& ts, const std::vector<double>& ys,
         double t_lo, double t_hi) {
        const PowerFit f = fit_loglog(ts, ys, t_lo, t_hi);
        py::dict out;
        out["slope"] = f.slope;
        out["intercept"] = f.intercept;
        out["residual_rms"] = f.residual_rms;
        out["n_points"] = f.n_points;
        out["degenerate"] = f.degenerate;
        return out;
      },
      py::arg("t"), py::arg("y"), py::arg("t_lo"), py::arg("t_hi"));
}
