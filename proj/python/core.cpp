#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/gauss_map.hpp"
#include "minsurf/lagrangian.hpp"
#include "minsurf/nonorientable.hpp"
#include "minsurf/parse.hpp"
#include "minsurf/weierstrass.hpp"

namespace py = pybind11;
using namespace minsurf;

namespace {

PuncturedPlane plane(const std::vector<std::string>& punctures) {
  std::vector<QComplex> pts;
  for (const auto& p : punctures) pts.push_back(parse_complex(p));
  return PuncturedPlane(pts);
}

py::dict run_command(const std::string& command, const std::string& config, std::uint64_t seed,
                     std::optional<double> tol, const std::string& format, bool no_conformality,
                     std::optional<int> p, std::vector<int> m, std::optional<int> n) {
  cli::Options opt;
  opt.seed = seed;
  opt.tol = tol;
  if (format != "json" && format != "csv") throw cli::UsageError("format must be json or csv");
  opt.format = format == "csv" ? cli::Format::csv : cli::Format::json;
  opt.no_conformality = no_conformality;
  opt.p = p;
  opt.m = std::move(m);
  opt.n = n;
  const auto o = cli::run_text(command, config, opt);
  py::dict files;
  for (const auto& [name, content] : o.files) files[py::str(name)] = content;
  py::dict out;
  out["exit_code"] = o.exit_code;
  out["report"] = o.report.dump();
  out["files"] = files;
  out["stdout"] = o.stdout_text;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact checks for complete minimal surfaces in R^4";
  m.attr("__version__") = cli::kToolVersion;
  m.attr("SCHEMA_VERSION") = cli::kSchemaVersion;

  py::register_exception<Error>(m, "MinsurfError", PyExc_RuntimeError);
  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("run_command", &run_command, py::arg("command"), py::arg("config") = "", py::arg("seed") = 0,
        py::arg("tol") = py::none(), py::arg("format") = "json", py::arg("no_conformality") = false,
        py::arg("p") = py::none(), py::arg("m") = std::vector<int>{}, py::arg("n") = py::none(),
        "Runs a CLI subcommand on config text; the report comes back as a JSON string.");

  m.def("format_rational", [](const std::string& s) { return format(parse_rational(s)); });

  m.def(
      "exceptional_values",
      [](const std::string& g, const std::vector<std::string>& punctures) {
        std::vector<std::string> out;
        for (const auto& v : exceptional_values(parse_rational(g), plane(punctures))) out.push_back(to_string(v));
        return out;
      },
      py::arg("g"), py::arg("punctures") = std::vector<std::string>{});

  m.def(
      "is_complete",
      [](const std::vector<std::pair<std::string, int>>& factors, const std::string& omega_hat,
         const std::vector<std::string>& punctures) {
        std::vector<MetricFactor> f;
        for (const auto& [g, k] : factors) f.push_back({parse_rational(g), k});
        return is_complete(MetricSpec(f, parse_rational(omega_hat)), plane(punctures)).overall;
      },
      py::arg("factors"), py::arg("omega_hat"), py::arg("punctures") = std::vector<std::string>{});

  m.def(
      "phis",
      [](const std::string& g1, const std::string& g2, const std::string& omega_hat) {
        const PhiForms p = phis_from_data(WeierstrassData(parse_rational(g1), parse_rational(g2), parse_rational(omega_hat)));
        std::vector<std::string> out;
        for (const auto& f : p.phi) out.push_back(format(f));
        return out;
      },
      py::arg("g1"), py::arg("g2"), py::arg("omega_hat"));

  m.def(
      "check_conformality",
      [](const std::vector<std::string>& phi) {
        if (phi.size() != 4) throw cli::UsageError("need four forms");
        return check_conformality(PhiForms({parse_rational(phi[0]), parse_rational(phi[1]), parse_rational(phi[2]),
                                            parse_rational(phi[3])}));
      },
      py::arg("phi"));

  m.def(
      "lagrangian_curvature",
      [](const std::string& F1, const std::string& F2, double beta, std::complex<double> z) {
        const auto c = metric_curvature(LagrangianSpec({parse_rational(F1), parse_rational(F2)}, beta), z);
        return py::make_tuple(c.lambda2, c.K, c.K_printed);
      },
      py::arg("F1"), py::arg("F2"), py::arg("beta"), py::arg("z"), "Returns (lambda^2, K, K_printed_form).");

  m.def(
      "min_modulus_on_unit_circle",
      [](const std::vector<std::string>& b) {
        std::vector<QComplex> c;
        for (const auto& x : b) c.push_back(parse_complex(x));
        return build_f(c).min_modulus_circle;
      },
      py::arg("b"));

  m.def("lift_equivalence", &lift_equivalence, py::arg("q1"), py::arg("q2"));
}
