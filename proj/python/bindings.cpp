#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "geofreq/cli.hpp"
#include "geofreq/critical_table.hpp"
#include "geofreq/error.hpp"
#include "geofreq/frequency_lab.hpp"
#include "geofreq/loop_ring.hpp"
#include "geofreq/metric_models.hpp"

namespace py = pybind11;
using namespace geofreq;

namespace {

py::dict estimate_dict(const FrequencyEstimate& e) {
  py::dict d;
  d["mean_frequency"] = e.mean_frequency;
  d["average_index"] = e.average_index;
  d["period"] = e.period;
  d["periods_used"] = e.periods_used;
  d["error_estimate"] = e.error_estimate;
  d["converged"] = e.converged;
  d["warnings"] = e.warnings;
  return d;
}

py::dict interval_dict(const BoundInterval& b) {
  py::dict d;
  d["lower"] = b.lower;
  d["upper"] = b.upper;
  d["strict"] = b.strict;
  return d;
}

RingSpec ring_spec(int n, const std::string& coeffs) { return RingSpec::sphere(n, parse_coefficients(coeffs)); }

}  // namespace

PYBIND11_MODULE(_geofreq, m) {
  m.doc() = "Mean frequency of closed geodesics and loop-homology level tables";
  m.attr("__version__") = GEOFREQ_VERSION;

  auto base = py::register_exception<Error>(m, "GeofreqError");
  py::register_exception<InvalidModel>(m, "InvalidModel", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<IntegrationFailure>(m, "IntegrationFailure", base.ptr());
  py::register_exception<RingMismatch>(m, "RingMismatch", base.ptr());

  m.def(
      "mean_frequency_constant",
      [](int dim, double K, double period, int periods) {
        return estimate_dict(mean_frequency(CurvatureProfile::constant(dim, K, period), periods));
      },
      py::arg("dim"), py::arg("K"), py::arg("period"), py::arg("periods") = 50);

  m.def(
      "mean_frequency_scalar",
      [](std::function<double(double)> k, double period, int periods) {
        FrequencyEstimate e;
        {
          py::gil_scoped_release release;
          e = mean_frequency(CurvatureProfile::scalar(
                                 [k](double t) {
                                   py::gil_scoped_acquire acquire;
                                   return k(t);
                                 },
                                 period),
                             periods);
        }
        return estimate_dict(e);
      },
      py::arg("curvature"), py::arg("period"), py::arg("periods") = 50);

  m.def(
      "ellipse_mean_frequency",
      [](std::vector<double> axes, int i, int j, int periods) {
        const EllipseFrequency f = ellipse_mean_frequency(EllipsoidModel(std::move(axes)), i, j, periods, false);
        py::dict d = estimate_dict(f.total);
        d["length"] = f.length;
        return d;
      },
      py::arg("axes"), py::arg("i"), py::arg("j"), py::arg("periods") = 50);

  m.def(
      "ellipse_sandwich",
      [](std::vector<double> axes, int i, int j) {
        return interval_dict(ellipse_sandwich(EllipsoidModel(std::move(axes)), i, j));
      },
      py::arg("axes"), py::arg("i"), py::arg("j"));

  m.def("ellipse_perimeter", &ellipse_perimeter, py::arg("a"), py::arg("b"), py::arg("rel_tol") = 1e-10);

  m.def(
      "ring_op",
      [](int n, const std::string& coeffs, const std::string& op, const std::string& x,
         const std::string& y) {
        const RingSpec r = ring_spec(n, coeffs);
        const RingElement ex = RingElement::basis(r, parse_monomial(r, x));
        if (op == "delta") return delta(ex).to_string();
        const RingElement ey = RingElement::basis(r, parse_monomial(r, y.empty() ? "E" : y));
        if (op == "product") return product(ex, ey).to_string();
        if (op == "bracket") return bracket(ex, ey).to_string();
        if (op == "bv") return bv_defect(ex, ey).to_string();
        throw PreconditionError("unknown ring operation: " + op);
      },
      py::arg("n"), py::arg("coefficients"), py::arg("op"), py::arg("x"), py::arg("y") = "");

  m.def(
      "resonance",
      [](int n, double L, long max_degree) {
        const ResonanceReport r = resonance_report(round_critical_table(n, L, max_degree), n);
        py::dict d;
        d["alpha_bar"] = r.alpha_bar;
        d["mu_plus"] = r.mu_plus;
        d["mu_minus"] = r.mu_minus;
        d["max_deviation"] = r.max_deviation;
        d["bound"] = r.bound;
        d["verdict"] = r.verdict;
        return d;
      },
      py::arg("n"), py::arg("L"), py::arg("max_degree") = 400);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
