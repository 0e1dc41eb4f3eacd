#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhhg/analysis.hpp"
#include "qhhg/appcheck.hpp"
#include "qhhg/band.hpp"
#include "qhhg/config.hpp"
#include "qhhg/numerics.hpp"
#include "qhhg/parallel.hpp"
#include "qhhg/phasespace.hpp"
#include "qhhg/run.hpp"
#include "qhhg/specfun.hpp"
#include "qhhg/spectrum.hpp"

namespace py = pybind11;
using namespace qhhg;

PYBIND11_MODULE(_qhhg, m) {
  m.doc() = "Intraband HHG observables for quantum-light drives";
  m.attr("__version__") = QHHG_VERSION;

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("set_thread_count", &set_thread_count, py::arg("n"));
  m.def("bessel_j", &bessel_j, py::arg("n"), py::arg("x"));
  m.def("bessel_remainder_bound", &bessel_remainder_bound, py::arg("n"), py::arg("x"));

  py::class_<BandModel>(m, "BandModel")
      .def(py::init<double, std::vector<double>, std::vector<double>, int>(), py::arg("a"),
           py::arg("b"), py::arg("occupied_q"), py::arg("spin_degeneracy") = 2)
      .def_static("zno", &BandModel::zno)
      .def_property_readonly("a", &BandModel::a)
      .def_property_readonly("b", [](const BandModel& b) { return b.b(); })
      .def_property_readonly("occupied_q", &BandModel::occupied_q)
      .def_property_readonly("spin_degeneracy", &BandModel::spin_degeneracy)
      .def_property_readonly("l_max", &BandModel::l_max)
      .def("hash", &BandModel::hash);
  m.def("dispersion", &dispersion, py::arg("band"), py::arg("q"));
  m.def("occupied_cos_sum", &occupied_cos_sum, py::arg("band"), py::arg("l"));
  m.def("c_coefficient", &c_coefficient, py::arg("band"), py::arg("l"));
  m.def("k_constant", &k_constant, py::arg("band"), py::arg("n"));
  m.def("lattice_coupling", &lattice_coupling, py::arg("band"), py::arg("g0"), py::arg("omega0"));

  py::enum_<FieldKind>(m, "FieldKind")
      .value("Coherent", FieldKind::Coherent)
      .value("Thermal", FieldKind::Thermal)
      .value("Fock", FieldKind::Fock)
      .value("BSV", FieldKind::BSV);

  py::class_<DrivingField>(m, "DrivingField")
      .def_static("coherent", &DrivingField::coherent, py::arg("alpha"))
      .def_static("thermal", &DrivingField::thermal, py::arg("mean_photons"))
      .def_static("fock", &DrivingField::fock, py::arg("n"))
      .def_static("bsv", &DrivingField::bsv, py::arg("r"))
      .def_static("from_mean_photons", &DrivingField::from_mean_photons, py::arg("kind"),
                  py::arg("mean_photons"))
      .def_readonly("kind", &DrivingField::kind)
      .def_readonly("alpha", &DrivingField::alpha)
      .def_readonly("r", &DrivingField::r)
      .def_readonly("n", &DrivingField::n)
      .def("mean_photon_number", &DrivingField::mean_photon_number);

  m.def("moments", [](const DrivingField& f) {
    const Moments mo = moments(f);
    return py::make_tuple(mo.mu, mo.sigma);
  });
  m.def("density", &density, py::arg("field"), py::arg("alpha"));
  m.def("radial_density", &radial_density, py::arg("field"), py::arg("amp"));
  m.def("correlation_g", &correlation_g, py::arg("field"), py::arg("n"));
  m.def(
      "radial_grid",
      [](const DrivingField& f, double rel_tail, int nodes) {
        const RadialGrid g = radial_grid(f, rel_tail, nodes);
        return py::make_tuple(g.nodes, g.weights);
      },
      py::arg("field"), py::arg("rel_tail") = 1e-12, py::arg("nodes") = 400);

  m.def("cutoff_order", &cutoff_order, py::arg("band"), py::arg("field"), py::arg("g0"),
        py::arg("omega0"));
  m.def(
      "floquet_peaks",
      [](const BandModel& band, const DrivingField& f, double g0, double omega0, int n_max) {
        const FloquetPeaks p = floquet_peaks(band, f, g0, omega0, n_max);
        return py::make_tuple(p.orders, p.weights);
      },
      py::arg("band"), py::arg("field"), py::arg("g0"), py::arg("omega0"), py::arg("n_max"));
  m.def(
      "harmonic_signal_exact",
      [](const BandModel& band, const DrivingField& f, int n, double g0, double omega0) {
        return harmonic_signal_exact(band, f, n, g0, omega0);
      },
      py::arg("band"), py::arg("field"), py::arg("n"), py::arg("g0"), py::arg("omega0"));
  m.def("harmonic_signal_perturbative", &harmonic_signal_perturbative, py::arg("band"),
        py::arg("field"), py::arg("n"), py::arg("g0"), py::arg("omega0"));
  m.def(
      "perturbative_limit",
      [](const BandModel& band, FieldKind kind, int n, double g0, double omega0) {
        return perturbative_limit(band, kind, n, g0, omega0).mean_photons;
      },
      py::arg("band"), py::arg("kind"), py::arg("n"), py::arg("g0"), py::arg("omega0"));

  m.def(
      "app_report_json",
      [](std::int64_t fock_n, double bsv_r) { return to_json(app_report(fock_n, bsv_r)); },
      py::arg("fock_n") = 100, py::arg("bsv_r") = 1.0);

  m.def(
      "run_config_text",
      [](const std::string& text, const std::string& out_dir) {
        RunConfig cfg = parse_config(text);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        py::gil_scoped_release release;
        return run(cfg).files;
      },
      py::arg("text"), py::arg("out_dir") = "",
      "Parse a config from text, run it and return the written file paths.");
}
