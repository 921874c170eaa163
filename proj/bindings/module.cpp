#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vanhove/experiments.hpp"

namespace py = pybind11;
using namespace vanhove;

namespace {

LatticeFunction to_lattice(const std::map<std::tuple<int, int, int>, Complex>& entries) {
  LatticeFunction f;
  for (const auto& [key, value] : entries)
    f[{std::get<0>(key), std::get<1>(key), std::get<2>(key)}] = value;
  return f;
}

ThermalParams make_params(double beta, double s, double mu, double kappa, double lambda,
                          Complex amplitude, double box_length, bool continuum, double n0) {
  ThermalParams p;
  p.beta = beta;
  p.dispersion = Dispersion(s, mu);
  p.source = SourceCutoff{kappa, lambda, amplitude};
  p.lattice = LatticeSpec{box_length, 0.0, std::numeric_limits<double>::infinity(), false};
  p.continuum = continuum;
  p.condensate.n0 = n0;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "thermal equilibrium structure of the source-coupled Bose field: closed forms, "
            "truncated-Fock oracle, infrared classifiers";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<ConvergenceError>(m, "ConvergenceError");

  py::class_<Dispersion>(m, "Dispersion")
      .def(py::init<double, double>(), py::arg("s"), py::arg("mu") = 0.0)
      .def_readonly("s", &Dispersion::s)
      .def_readonly("mu", &Dispersion::mu)
      .def("omega", [](const Dispersion& d, double knorm) { return d.omega(knorm); });

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_static("gaussian", &RadialProfile::gaussian, py::arg("amplitude"), py::arg("width"))
      .def_static("shell_bump", &RadialProfile::shell_bump, py::arg("center"), py::arg("width"),
                  py::arg("amplitude"))
      .def_static("poly_gaussian", &RadialProfile::poly_gaussian, py::arg("origin_order"),
                  py::arg("amplitude"), py::arg("width"))
      .def("__call__", [](const RadialProfile& p, double r) { return p(r); })
      .def_property_readonly("value_at_zero", &RadialProfile::value_at_zero)
      .def_property_readonly("origin_order", &RadialProfile::origin_order)
      .def_property_readonly("label", &RadialProfile::label);

  py::class_<ContinuumFunction>(m, "ContinuumFunction")
      .def(py::init<>())
      .def(py::init<RadialProfile, Complex>(), py::arg("profile"), py::arg("coeff") = Complex(1.0))
      .def("__add__", &ContinuumFunction::operator+)
      .def("scaled", &ContinuumFunction::scaled)
      .def("time_evolved", &ContinuumFunction::time_evolved)
      .def_property_readonly("value_at_zero", &ContinuumFunction::value_at_zero);

  m.def("lattice_modes", [](double box_length, double kappa, double lambda, bool zero_mode) {
    std::vector<std::tuple<int, int, int, double>> out;
    for (const auto& mode : lattice_modes(LatticeSpec{box_length, kappa, lambda, zero_mode}))
      out.emplace_back(mode.n[0], mode.n[1], mode.n[2], mode.knorm);
    return out;
  }, py::arg("box_length"), py::arg("kappa"), py::arg("lambda_"), py::arg("include_zero_mode") = false);

  m.def("ir_shell_integral", [](double kappa, double lambda, double s) {
    const ShellIntegral r = ir_shell_integral(kappa, lambda, Dispersion(s));
    const char* status = r.status == ShellStatus::finite ? "finite"
                         : r.status == ShellStatus::infrared_divergent ? "infrared-divergent"
                                                                       : "ultraviolet-divergent";
    return py::make_tuple(status, r.value);
  }, py::arg("kappa"), py::arg("lambda_"), py::arg("s"));

  m.def("ir_classify", [](const ContinuumFunction& f, double s, const std::string& mode) {
    const IrExponentMode m_ = mode == "theorem-literal" ? IrExponentMode::theorem_literal
                                                        : IrExponentMode::definition;
    const IrClassification c = ir_classify(f, Dispersion(s), m_);
    py::dict out;
    out["admissible"] = c.admissible;
    out["in_x0"] = c.in_x0;
    out["in_xphys"] = c.in_xphys;
    out["exponent"] = c.exponent;
    out["reason"] = c.reason;
    return out;
  }, py::arg("f"), py::arg("s"), py::arg("mode") = "definition");

  m.def("q_zero", [](const ContinuumFunction& f, double beta, double n0) {
    return q_zero(f, CondensateParams{beta, n0});
  }, py::arg("f"), py::arg("beta"), py::arg("n0"));
  m.attr("condensate_prefactor") = condensate_prefactor;

  m.def("q_nonzero_continuum", [](const ContinuumFunction& f, double beta, double s, double mu) {
    return q_nonzero(f, beta, ContinuumContext{Dispersion(s, mu), QuadratureSpec{}});
  }, py::arg("f"), py::arg("beta"), py::arg("s"), py::arg("mu") = 0.0);

  m.def("mean_functional_continuum",
        [](const ContinuumFunction& f, double s, double kappa, double lambda) {
          return mean_functional(f, SourceCutoff{kappa, lambda, Complex(1.0, 0.0)},
                                 ContinuumContext{Dispersion(s), QuadratureSpec{}});
        },
        py::arg("f"), py::arg("s"), py::arg("kappa") = 0.0,
        py::arg("lambda_") = std::numeric_limits<double>::infinity());

  const auto inf = std::numeric_limits<double>::infinity();
  m.def("weyl_expectation_lattice",
        [](const std::map<std::tuple<int, int, int>, Complex>& f, double beta, double s, double mu,
           double kappa, double lambda, Complex amplitude, double box_length) {
          const ThermalParams p =
              make_params(beta, s, mu, kappa, lambda, amplitude, box_length, false, 0.0);
          return weyl_expectation(Direction{to_lattice(f)}, p);
        },
        py::arg("f"), py::arg("beta"), py::arg("s") = 1.0, py::arg("mu") = 0.0,
        py::arg("kappa") = 0.5, py::arg("lambda_") = 1.5, py::arg("amplitude") = Complex(1.0, 0.0),
        py::arg("box_length") = 2.0 * 3.14159265358979323846);

  m.def("weyl_expectation_continuum",
        [](const ContinuumFunction& f, double beta, double s, double n0) {
          ThermalParams p = make_params(beta, s, 0.0, 0.0,
                                        std::numeric_limits<double>::infinity(),
                                        Complex(1.0, 0.0), 1.0, true, n0);
          return weyl_expectation(Direction{f}, p);
        },
        py::arg("f"), py::arg("beta"), py::arg("s") = 1.0, py::arg("n0") = 0.0);

  m.def("kms_residual_continuum",
        [](const ContinuumFunction& f, const ContinuumFunction& g, double t, double beta, double s,
           double n0) {
          ThermalParams p = make_params(beta, s, 0.0, 0.0,
                                        std::numeric_limits<double>::infinity(),
                                        Complex(1.0, 0.0), 1.0, true, n0);
          return kms_residual(Direction{f}, Direction{g}, t, p);
        },
        py::arg("f"), py::arg("g"), py::arg("t"), py::arg("beta"), py::arg("s") = 1.0,
        py::arg("n0") = 0.0);

  m.def("cluster_diagnostic_continuum",
        [](const ContinuumFunction& f, const ContinuumFunction& g, std::vector<double> grid,
           double beta, double s, double n0) {
          ThermalParams p = make_params(beta, s, 0.0, 0.0,
                                        std::numeric_limits<double>::infinity(),
                                        Complex(1.0, 0.0), 1.0, true, n0);
          return cluster_diagnostic(Direction{f}, Direction{g}, grid, p);
        },
        py::arg("f"), py::arg("g"), py::arg("grid"), py::arg("beta"), py::arg("s") = 1.0,
        py::arg("n0") = 0.0);

  m.def("resolvent_expectation_continuum",
        [](Complex z, const ContinuumFunction& f, double beta, double s, double n0) {
          ThermalParams p = make_params(beta, s, 0.0, 0.0,
                                        std::numeric_limits<double>::infinity(),
                                        Complex(1.0, 0.0), 1.0, true, n0);
          return resolvent_expectation(z, Direction{f}, p);
        },
        py::arg("z"), py::arg("f"), py::arg("beta"), py::arg("s") = 1.0, py::arg("n0") = 0.0);

  m.def("gc_expectation_weyl",
        [](const std::map<std::tuple<int, int, int>, Complex>& f, std::vector<double> omegas,
           int n_max, double beta, double mu, double kappa, double lambda, Complex amplitude) {
          const fock::TruncationSpec spec = fock::make_truncation(std::move(omegas), n_max);
          const auto report = fock::gc_expectation(
              [&](const fock::TruncationSpec& t) {
                LatticeFunction lf;
                const LatticeFunction user = to_lattice(f);
                for (const auto& [n, v] : user) lf[n] = v;
                return fock::weyl_operator(lf, t).mat;
              },
              spec, Dispersion(1.0, mu), SourceCutoff{kappa, lambda, amplitude}, beta);
          return py::make_tuple(report.value, report.truncation_estimate);
        },
        py::arg("f"), py::arg("omegas"), py::arg("n_max"), py::arg("beta"), py::arg("mu") = 0.0,
        py::arg("kappa") = 0.5, py::arg("lambda_") = 1.5, py::arg("amplitude") = Complex(1.0, 0.0));

  m.def("relation_suite", [](int draws, int n_modes, std::uint64_t seed) {
    RelationSuiteConfig cfg;
    cfg.draws = draws;
    cfg.low_block = n_modes == 1 ? 8 : 5;
    const fock::TruncationSpec spec =
        n_modes == 1 ? fock::make_truncation({1.0}, 40)
                     : fock::make_truncation({1.0, 1.4142135623730951}, 24);
    const RelationReport rep = relation_suite(spec, cfg, seed);
    py::dict out;
    for (const auto& [name, value] : rep.max_residuals) out[name.c_str()] = value;
    return out;
  }, py::arg("draws") = 20, py::arg("n_modes") = 1, py::arg("seed") = 1);

  m.def("experiment_names", [] { return experiment_names(); });
  m.def("run_experiment", [](const std::string& name, const std::string& overrides_json) {
    const Json overrides = overrides_json.empty() ? Json::object() : Json::parse(overrides_json);
    const Json config = resolve_config(name, overrides);
    const ExperimentResult result = run_experiment(name, config);
    return py::make_tuple(result.passed(), result.summary.dump(), csv_text(result.rows));
  }, py::arg("name"), py::arg("overrides_json") = std::string());
  (void)inf;
}
