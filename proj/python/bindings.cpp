#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncho/errors.hpp"
#include "ncho/expansion.hpp"
#include "ncho/matrixcore.hpp"
#include "ncho/run_record.hpp"
#include "ncho/spectral_oracle.hpp"
#include "ncho/verify.hpp"
#include "ncho/zeta_values.hpp"

namespace py = pybind11;
using namespace ncho;

namespace {

QuadConfig make_config(int n, std::int64_t samples, int batches, std::uint64_t seed, const std::string& transform,
                       int corner_power, bool control_variate, int threads) {
  QuadConfig cfg = default_config(n);
  if (samples > 0) cfg.samples = samples;
  cfg.batches = batches;
  cfg.seed = seed;
  cfg.transform = transform_from_string(transform);
  cfg.corner_power = corner_power;
  cfg.use_control_variate = control_variate;
  cfg.threads = threads;
  return cfg;
}

py::dict estimate_dict(const QuadEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["std_error"] = e.std_error;
  d["samples_used"] = e.samples_used;
  d["cv_applied"] = e.cv_applied;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ncho, m) {
  m.doc() = "Special values of the spectral zeta function of the non-commutative harmonic oscillator";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.attr("__version__") = kVersion;

  py::class_<Params>(m, "Params")
      .def_readonly("alpha", &Params::alpha)
      .def_readonly("beta", &Params::beta)
      .def_readonly("epsilon", &Params::epsilon)
      .def_readonly("q", &Params::q)
      .def_readonly("mean_factor", &Params::mean_factor)
      .def_readonly("skew_factor", &Params::skew_factor)
      .def("__repr__", [](const Params& p) {
        return "Params(alpha=" + std::to_string(p.alpha) + ", beta=" + std::to_string(p.beta) + ")";
      });

  m.def("derive_params", &derive_params, py::arg("alpha"), py::arg("beta"));
  m.def("hurwitz_zeta_half", &hurwitz_zeta_half, py::arg("n"));
  m.def("riemann_zeta", &riemann_zeta, py::arg("s"));
  m.def("gauss_2f1_quarter", &gauss_2f1_quarter, py::arg("q"));

  m.def(
      "delta_det",
      [](const std::vector<double>& u) { return build_delta(u).entries.determinant(); }, py::arg("u"));
  m.def("delta_det_closed_form", [](const std::vector<double>& u) { return delta_det_closed_form(u); },
        py::arg("u"));
  m.def(
      "den",
      [](int n, const std::vector<int>& j, const std::vector<double>& u, double q) {
        return integrand_denominator(n, j, u, q);
      },
      py::arg("n"), py::arg("subset"), py::arg("u"), py::arg("q"));

  m.def(
      "orbits",
      [](int m_parts, int n) {
        py::list out;
        for (const auto& o : cyclic_orbits(compositions(m_parts, n))) {
          py::dict d;
          d["composition"] = o.representative.parts;
          d["weight"] = o.weight;
          d["stabilizer"] = o.stabilizer_size;
          out.append(d);
        }
        return out;
      },
      py::arg("parts"), py::arg("n"), "cyclic orbits of compositions of n into `parts` parts");

  m.def(
      "zeta_Q",
      [](int n, double alpha, double beta, std::int64_t samples, int batches, std::uint64_t seed,
         const std::string& transform, int corner_power, bool control_variate, int threads) {
        const QuadConfig cfg =
            make_config(n, samples, batches, seed, transform, corner_power, control_variate, threads);
        SpecialValueResult r;
        {
          py::gil_scoped_release release;
          r = zeta_Q(n, alpha, beta, cfg);
        }
        return py::module_::import("json").attr("loads")(value_record(r).dump());
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("samples") = 0, py::arg("batches") = 16,
      py::arg("seed") = QuadConfig{}.seed, py::arg("transform") = "corner", py::arg("corner_power") = 2,
      py::arg("control_variate") = true, py::arg("threads") = 1,
      "zeta_Q(n) as the JSON value record (samples = 0 picks the per-order default)");

  m.def("zeta_Q_degenerate", &zeta_Q_degenerate, py::arg("n"), py::arg("alpha"));
  m.def("zeta_Q2_closed_form", &zeta_Q2_closed_form, py::arg("alpha"), py::arg("beta"));
  m.def("R21_closed_form", &R21_closed_form, py::arg("q"));

  m.def(
      "orbit_integral",
      [](int n, const std::vector<int>& j, double q, std::int64_t samples, std::uint64_t seed) {
        const QuadConfig cfg = make_config(n, samples, 16, seed, "corner", 2, true, 1);
        QuadEstimate e;
        {
          py::gil_scoped_release release;
          e = orbit_integral(n, j, q, cfg);
        }
        return estimate_dict(e);
      },
      py::arg("n"), py::arg("subset"), py::arg("q"), py::arg("samples") = 0, py::arg("seed") = QuadConfig{}.seed);

  m.def(
      "apery_J",
      [](int n, int M) { return apery_series(n, M).J; }, py::arg("n"), py::arg("M"));
  m.def(
      "R_n1_series",
      [](int n, double q, int M) {
        const SeriesValue s = R_n1_series(n, q, M);
        py::dict d;
        d["value"] = s.value;
        d["truncation_estimate"] = s.truncation_estimate;
        d["converged"] = s.converged;
        return d;
      },
      py::arg("n"), py::arg("q"), py::arg("M") = 80);
  m.def("heun_residual", py::overload_cast<int>(&heun_residual), py::arg("M"));

  m.def(
      "eigenvalues",
      [](double alpha, double beta, int N) { return eigenvalues(build_truncated_q(derive_params(alpha, beta), N)); },
      py::arg("alpha"), py::arg("beta"), py::arg("N"));
  m.def(
      "trace_inverse_power",
      [](double alpha, double beta, int n, int N) {
        OracleValue o;
        {
          py::gil_scoped_release release;
          o = trace_inverse_power(derive_params(alpha, beta), n, N);
        }
        py::dict d;
        d["value"] = o.value;
        d["tail_bound"] = o.tail_bound;
        d["partial_sum"] = o.partial_sum;
        d["trusted"] = o.trusted;
        d["slope"] = o.fit.slope;
        d["warning"] = o.warning;
        return d;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("N") = 400);

  m.def(
      "verify",
      [](const std::string& suite, int instances) {
        SuiteOptions opts;
        opts.instances = instances;
        std::vector<CheckResult> checks;
        {
          py::gil_scoped_release release;
          checks = run_suite(suite, opts);
        }
        py::list out;
        for (const CheckResult& c : checks) {
          py::dict d;
          d["name"] = c.name;
          d["error"] = c.error;
          d["tolerance"] = c.tolerance;
          d["passed"] = c.passed;
          out.append(d);
        }
        return out;
      },
      py::arg("suite"), py::arg("instances") = 0);
}
