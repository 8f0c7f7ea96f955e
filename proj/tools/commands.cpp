#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "minsurf/errors.hpp"
#include "minsurf/gauss_map.hpp"
#include "minsurf/lagrangian.hpp"
#include "minsurf/nonorientable.hpp"
#include "minsurf/parse.hpp"
#include "minsurf/weierstrass.hpp"

namespace minsurf::cli {
namespace {

// Defaults for the numeric checks; --tol replaces the primary one of each command.
constexpr double kResidualTol = 1e-5;
constexpr double kCurvatureOracleTol = 1e-4;
constexpr double kStencilStep = 1e-3;

// Config reading. Anything thrown in here is a usage error.
template <class F>
auto load(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("config: ") + what + ": " + e.what());
  }
}

const json& require(const json& c, const char* key) {
  if (!c.is_object() || !c.contains(key)) throw UsageError(std::string("config: missing field '") + key + "'");
  return c.at(key);
}

std::string text_of(const json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw UsageError(std::string("config: ") + what + " must be a string in exact form, e.g. \"1/2+3i\"");
}

QRational rational_field(const json& c, const char* key) {
  const std::string s = text_of(require(c, key), key);
  return load(key, [&] { return parse_rational(s); });
}

QComplex complex_value(const json& v, const char* what) {
  const std::string s = text_of(v, what);
  return load(what, [&] { return parse_complex(s); });
}

double real_value(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  const std::string s = text_of(v, what);
  return load(what, [&] { return parse_real(s).get_d(); });
}

int int_value(const json& v, const char* what) {
  if (!v.is_number_integer()) throw UsageError(std::string("config: ") + what + " must be an integer");
  return v.get<int>();
}

QPoint point_value(const json& v, const char* what) {
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
    return QPoint::infinity();
  return QPoint(complex_value(v, what));
}

std::vector<QComplex> complex_list(const json& c, const char* key) {
  std::vector<QComplex> out;
  if (!c.contains(key)) return out;
  const json& a = c.at(key);
  if (!a.is_array()) throw UsageError(std::string("config: ") + key + " must be a list");
  for (const auto& v : a) out.push_back(complex_value(v, key));
  return out;
}

Domain domain_field(const json& c) {
  if (!c.contains("domain")) return PuncturedPlane{};
  const json& d = c.at("domain");
  const std::string type = d.value("type", std::string("punctured-plane"));
  const auto punctures = complex_list(d, "punctures");
  if (type == "punctured-plane") return load("domain", [&] { return Domain(PuncturedPlane(punctures)); });
  if (type == "annulus") {
    const double R = real_value(require(d, "R"), "domain.R");
    return load("domain", [&] { return Domain(Annulus(R, punctures)); });
  }
  throw UsageError("config: domain.type must be 'punctured-plane' or 'annulus'");
}

const PuncturedPlane& plane_of(const Domain& d, const char* command) {
  if (const auto* p = std::get_if<PuncturedPlane>(&d)) return *p;
  throw UsageError(std::string(command) + " needs a punctured-plane domain");
}

GridParams grid_field(const json& c, GridParams g) {
  if (!c.contains("grid")) return g;
  const json& j = c.at("grid");
  if (j.contains("n")) g.n = int_value(j.at("n"), "grid.n");
  if (j.contains("sectors")) g.sectors = int_value(j.at("sectors"), "grid.sectors");
  if (j.contains("extent")) g.extent = real_value(j.at("extent"), "grid.extent");
  if (j.contains("exclusion")) g.exclusion = real_value(j.at("exclusion"), "grid.exclusion");
  if (g.n < 2 || g.sectors < 3 || !(g.extent > 0) || !(g.exclusion > 0))
    throw UsageError("config: grid needs n >= 2, sectors >= 3, extent > 0, exclusion > 0");
  return g;
}

double positive_tol(const Options& opt, double fallback) {
  const double t = opt.tol.value_or(fallback);
  if (!(t > 0) || !std::isfinite(t)) throw UsageError("--tol must be a positive number");
  return t;
}

// Reporting.
json header(const char* command, std::string_view config_text, const Options& opt) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r["tool_version"] = kToolVersion;
  r["config_hash"] = source_hash(config_text);
  r["seed"] = opt.seed;
  return r;
}

json to_json(const QPoint& p) { return to_string(p); }
json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }
json to_json(const mpq_class& q) { return to_string(q); }
json to_json(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

json points_json(const std::vector<QPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

std::string domain_text(const Domain& d) {
  std::string s;
  if (const auto* a = std::get_if<Annulus>(&d)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", a->R());
    s = std::string("annulus R=") + buf;
  } else {
    s = "punctured-plane";
  }
  s += " punctures=[";
  for (const auto& p : punctures_of(d)) s += p.str() + ",";
  return s + "]";
}

json completeness_json(const CompletenessReport& c) {
  json b = json::array();
  for (const auto& v : c.boundary) {
    json e;
    e["kind"] = to_string(v.point.kind);
    if (v.point.kind == BoundaryPoint::Kind::puncture) e["index"] = v.point.index;
    e["location"] = to_json(v.location);
    e["sigma"] = v.sigma;
    e["complete"] = v.complete;
    b.push_back(e);
  }
  json r;
  r["overall"] = c.overall;
  r["boundary"] = b;
  r["rationale"] = c.rationale;
  return r;
}

json exceptional_json(const ExceptionalReport& rep, const MetricSpec& spec) {
  json factors = json::array();
  for (std::size_t i = 0; i < rep.factors.size(); ++i) {
    const auto& f = rep.factors[i];
    json e;
    e["g"] = format(spec.factors()[i].g);
    e["m"] = f.m;
    e["constant"] = f.is_constant;
    e["omitted"] = points_json(f.omitted);
    e["q"] = f.is_constant ? json(nullptr) : json(f.q);
    factors.push_back(e);
  }
  json r;
  r["completeness"] = completeness_json(rep.completeness);
  r["factors"] = factors;
  r["lhs"] = rep.lhs ? to_json(*rep.lhs) : json(nullptr);
  r["inequality_applicable"] = rep.inequality_applicable;
  r["inequality_holds"] = rep.inequality_holds;
  r["verdict"] = to_string(rep.verdict);
  return r;
}

Outcome finish(json report, int exit_code, std::vector<std::pair<std::string, std::string>> files = {}) {
  report["exit_code"] = exit_code;
  Outcome o;
  o.exit_code = exit_code;
  o.report = std::move(report);
  o.files = std::move(files);
  return o;
}

void reject_csv(const Options& opt, const char* command) {
  if (opt.format == Format::csv) throw UsageError(std::string("--format csv is only available for falsify, not ") + command);
}

MetricSpec metric_from_config(const json& c) {
  const json& fs = require(c, "factors");
  if (!fs.is_array() || fs.empty()) throw UsageError("config: factors must be a non-empty list");
  std::vector<MetricFactor> factors;
  for (const auto& f : fs) {
    const int m = int_value(require(f, "m"), "factors.m");
    factors.push_back({rational_field(f, "g"), m});
  }
  const QRational w = rational_field(c, "omega_hat");
  return load("metric", [&] { return MetricSpec(std::move(factors), w); });
}

WeierstrassData weierstrass_from_config(const json& w) {
  const QRational g1 = rational_field(w, "g1"), g2 = rational_field(w, "g2"), om = rational_field(w, "omega_hat");
  return load("weierstrass", [&] { return WeierstrassData(g1, g2, om); });
}

json metric_echo(const MetricSpec& s) {
  json f = json::array();
  for (const auto& x : s.factors()) f.push_back({{"g", format(x.g)}, {"m", x.m}});
  return {{"factors", f}, {"omega_hat", format(s.omega_hat())}};
}

Outcome verify_report(json r, const MetricSpec& spec, const Domain& d) {
  const auto rep = verify_main_inequality(spec, plane_of(d, "verify-main"));
  r["result"] = exceptional_json(rep, spec);
  r["verdict"] = to_string(rep.verdict);
  return finish(std::move(r), rep.verdict == Verdict::counterexample ? 2 : 0);
}

// -lambda^-2 Laplacian(log lambda) with lambda^2 = |S1|^2 + |S2|^2, a second
// route to the closed-form curvature.
double curvature_oracle(const Spinors& s, cplx z, double h) {
  const CRational a = s.S1.approx(), b = s.S2.approx();
  auto log_lambda = [&](cplx w) { return 0.5 * std::log(std::norm(a(w)) + std::norm(b(w))); };
  const double lap =
      (log_lambda(z + h) + log_lambda(z - h) + log_lambda(z + cplx(0, h)) + log_lambda(z - cplx(0, h)) -
       4 * log_lambda(z)) /
      (h * h);
  return -lap / (std::norm(a(z)) + std::norm(b(z)));
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_config(std::string_view text) {
  if (text.empty()) return json::object();
  try {
    json c = json::parse(text);
    if (!c.is_object()) throw UsageError("config: top level must be an object");
    return c;
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace

Outcome cmd_verify_main(const json& config, std::string_view config_text, const Options& opt) {
  reject_csv(opt, "verify-main");
  json r = header("verify-main", config_text, opt);
  r["tolerances"] = {{"exact", true}};
  const Domain d = domain_field(config);
  plane_of(d, "verify-main");
  r["inputs"] = {{"domain", domain_text(d)}};

  if (config.contains("weierstrass")) {
    const WeierstrassData w = weierstrass_from_config(config.at("weierstrass"));
    const MetricSpec spec = induced_metric(w);
    r["inputs"]["weierstrass"] = {{"g1", format(w.g1)}, {"g2", format(w.g2)}, {"omega_hat", format(w.omega_hat)}};
    const auto r4 = fujimoto_r4_check(w, plane_of(d, "verify-main"));
    json j;
    j["complete"] = r4.complete;
    j["kind"] = r4.kind;
    j["q1"] = r4.q1 ? json(*r4.q1) : json(nullptr);
    j["q2"] = r4.q2 ? json(*r4.q2) : json(nullptr);
    j["lhs"] = r4.lhs ? to_json(*r4.lhs) : json(nullptr);
    j["holds"] = r4.holds;
    j["verdict"] = to_string(r4.verdict);
    r["r4_gauss_map"] = j;
    Outcome o = verify_report(std::move(r), spec, d);
    if (r4.verdict == Verdict::counterexample) {
      o.exit_code = 2;
      o.report["exit_code"] = 2;
    }
    return o;
  }
  const MetricSpec spec = metric_from_config(config);
  r["inputs"]["metric"] = metric_echo(spec);
  return verify_report(std::move(r), spec, d);
}

Outcome cmd_gen_example(const json& config, const Options& opt) {
  reject_csv(opt, "gen-example");
  int p = opt.p.value_or(0);
  if (!opt.p && config.contains("p")) p = int_value(config.at("p"), "p");
  std::vector<int> m = opt.m;
  if (m.empty() && config.contains("m"))
    for (const auto& v : config.at("m")) m.push_back(int_value(v, "m"));
  if (p < 2) throw UsageError("gen-example needs --p >= 2");
  if (m.empty()) throw UsageError("gen-example needs at least one weight, e.g. --m 1,1");
  for (int x : m)
    if (x < 0) throw UsageError("gen-example weights must be nonnegative");

  // punctures at 1, ..., p-1 and omega_hat = 1 / prod (z - j)
  json generated;
  json punct = json::array();
  QPoly den(QComplex(1));
  for (int j = 1; j < p; ++j) {
    punct.push_back(std::to_string(j));
    den = den * QPoly::linear_root(QComplex(j));
  }
  generated["domain"] = {{"type", "punctured-plane"}, {"punctures", punct}};
  json factors = json::array();
  for (int x : m) factors.push_back({{"g", "z"}, {"m", x}});
  generated["factors"] = factors;
  generated["omega_hat"] = format(QRational(QPoly(QComplex(1)), den));
  const std::string text = generated.dump(2) + "\n";

  Outcome o = cmd_verify_main(generated, text, opt);
  o.report["command"] = "gen-example";
  o.report["generated_config"] = generated;
  o.files.emplace_back("gen-example.config.json", text);
  return o;
}

Outcome cmd_falsify(const json& config, std::string_view config_text, const Options& opt) {
  int n = opt.n.value_or(1000);
  if (!opt.n && config.contains("n")) n = int_value(config.at("n"), "n");
  if (n < 0) throw UsageError("falsify needs n >= 0");
  FalsifyBounds b;
  if (config.contains("bounds")) {
    const json& j = config.at("bounds");
    auto take = [&](const char* key, int& field) {
      if (j.contains(key)) field = int_value(j.at(key), key);
    };
    take("min_punctures", b.min_punctures);
    take("max_punctures", b.max_punctures);
    take("max_factors", b.max_factors);
    take("max_m", b.max_m);
    take("max_degree", b.max_degree);
    take("coord_range", b.coord_range);
    take("max_pole_order", b.max_pole_order);
    if (b.min_punctures < 0 || b.max_punctures < b.min_punctures || b.max_factors < 1 || b.max_m < 0 ||
        b.max_degree < 1 || b.coord_range < 1 || b.max_pole_order < 0)
      throw UsageError("config: inconsistent falsify bounds");
  }
  const FalsifySummary s = falsify(opt.seed, n, b);
  const std::string csv = falsify_csv(s);

  json r = header("falsify", config_text, opt);
  r["tolerances"] = {{"exact", true}};
  r["inputs"] = {{"n", n},
                 {"bounds",
                  {{"min_punctures", b.min_punctures},
                   {"max_punctures", b.max_punctures},
                   {"max_factors", b.max_factors},
                   {"max_m", b.max_m},
                   {"max_degree", b.max_degree},
                   {"coord_range", b.coord_range},
                   {"max_pole_order", b.max_pole_order}}}};
  r["summary"] = {{"requested", s.requested},       {"attempts", s.attempts},
                  {"complete", s.complete},         {"applicable", s.applicable},
                  {"equality", s.equality},         {"counterexamples", s.counterexamples}};
  r["csv_hash"] = source_hash(csv);
  r["verdict"] = s.counterexamples == 0 ? "no-counterexample" : "COUNTEREXAMPLE";
  Outcome o = finish(std::move(r), s.counterexamples == 0 ? 0 : 2, {{"falsify.csv", csv}});
  if (opt.format == Format::csv) o.stdout_text = csv;
  return o;
}

Outcome cmd_lagrangian(const json& config, std::string_view config_text, const Options& opt) {
  reject_csv(opt, "lagrangian");
  const double tol = positive_tol(opt, kResidualTol);
  const HolomorphicPair F{rational_field(config, "F1"), rational_field(config, "F2")};
  double beta = 0;
  if (config.contains("beta_over_pi")) beta = std::numbers::pi * real_value(config.at("beta_over_pi"), "beta_over_pi");
  else if (config.contains("beta")) beta = real_value(config.at("beta"), "beta");
  const Domain d = domain_field(config);
  const auto poles = interior_poles(F, d);
  if (!poles.empty()) throw UsageError("config: F has poles inside the domain");
  const LagrangianSpec spec = load("lagrangian", [&] { return LagrangianSpec(F, beta); });
  std::vector<cplx> points;
  for (const auto& z : complex_list(config, "points")) points.push_back(z.to_complex());
  if (points.empty()) points.push_back(0.0);
  const double h = config.contains("h") ? real_value(config.at("h"), "h") : kStencilStep;

  json r = header("lagrangian", config_text, opt);
  r["tolerances"] = {{"residual", tol}, {"curvature_oracle", kCurvatureOracleTol}, {"stencil_step", h}};
  r["inputs"] = {{"F1", format(F.F1)}, {"F2", format(F.F2)}, {"beta", spec.beta}, {"domain", domain_text(d)}};
  r["spinors"] = {{"S1", format(spec.s.S1)}, {"S2", format(spec.s.S2)}};

  const auto nd = nondegenerate(F, d);
  json off = json::array();
  for (const auto& z : nd.offending) off.push_back(to_json(z));
  r["nondegeneracy"] = {{"nondegenerate", nd.nondegenerate}, {"offending", off}};

  bool ok = nd.nondegenerate;
  json samples = json::array();
  for (const cplx z : points) {
    json e;
    e["z"] = to_json(z);
    try {
      const auto mc = metric_curvature(spec, z);
      const double oracle = curvature_oracle(spec.s, z, h);
      const auto res = lagrangian_minimality_check(spec, z, h);
      e["lambda2"] = mc.lambda2;
      e["K"] = mc.K;
      e["K_printed_form"] = mc.K_printed;
      e["K_oracle"] = oracle;
      e["residuals"] = {{"symplectic", res.symplectic},
                        {"harmonic", res.harmonic},
                        {"angle", res.angle},
                        {"conformal", res.conformal}};
      const bool pass = std::abs(mc.K - oracle) < kCurvatureOracleTol && res.symplectic < tol && res.harmonic < tol &&
                        res.angle < tol && res.conformal < tol;
      e["pass"] = pass;
      ok = ok && pass;
    } catch (const Error& err) {
      e["error"] = err.what();
      e["pass"] = false;
      ok = false;
    }
    samples.push_back(e);
  }
  r["samples"] = samples;

  std::vector<std::pair<std::string, std::string>> files;
  if (const auto* plane = std::get_if<PuncturedPlane>(&d)) {
    const auto c = corollary_bound_check(spec, *plane);
    json j;
    j["applicable"] = c.applicable;
    j["complete"] = c.complete;
    j["g"] = c.g ? json(format(*c.g)) : json(nullptr);
    j["q"] = c.q ? json(*c.q) : json(nullptr);
    j["holds"] = c.holds;
    j["verdict"] = to_string(c.verdict);
    j["gauss_map_second_component"] = to_json(c.second_component);
    j["note"] = c.note;
    r["omitted_value_bound"] = j;
    ok = ok && c.verdict != Verdict::counterexample;
  }
  if (config.contains("grid")) {
    const Mesh mesh = lagrangian_mesh(spec, d, grid_field(config, GridParams{}));
    const std::string text = mesh_to_string(mesh);
    r["mesh"] = {{"file", "lagrangian.obj"},
                 {"vertices", mesh.vertices.size()},
                 {"faces", mesh.faces.size()},
                 {"hash", source_hash(text)}};
    files.emplace_back("lagrangian.obj", text);
  }
  r["verdict"] = ok ? "verified" : "failed";
  return finish(std::move(r), ok ? 0 : 2, std::move(files));
}

Outcome cmd_nonorientable(const json& config, std::string_view config_text, const Options& opt) {
  reject_csv(opt, "nonorientable");
  MoebiusOptions mo;
  mo.check_conformality = !opt.no_conformality;
  mo.period_tol = positive_tol(opt, mo.period_tol);
  mo.seed = opt.seed;
  if (config.contains("sandwich_samples")) mo.sandwich_samples = int_value(config.at("sandwich_samples"), "sandwich_samples");
  mo.mesh = grid_field(config, mo.mesh);
  mo.build_mesh = config.value("build_mesh", true);
  auto omitted = [&](const char* key) -> std::optional<std::vector<QPoint>> {
    if (!config.contains(key)) return std::nullopt;
    std::vector<QPoint> pts;
    for (const auto& v : config.at(key)) pts.push_back(point_value(v, key));
    return pts;
  };
  mo.omitted_g1 = omitted("omitted_g1");
  mo.omitted_g2 = omitted("omitted_g2");

  const json& phis = require(config, "phi");
  if (!phis.is_array() || phis.size() != 4) throw UsageError("config: phi must list four Laurent polynomials");
  SymmetricLaurentData data;
  for (std::size_t j = 0; j < 4; ++j) {
    const std::string s = text_of(phis[j], "phi");
    data.phi[j] = load("phi", [&] { return parse_laurent(s); });
  }
  const auto b = complex_list(config, "b");
  if (b.empty()) throw UsageError("config: b must list at least one coefficient");
  const int k = int_value(require(config, "k"), "k");
  const double R = real_value(require(config, "R"), "R");
  if (!(R > 1)) throw UsageError("config: R must exceed 1");

  json r = header("nonorientable", config_text, opt);
  r["tolerances"] = {{"period", mo.period_tol},
                     {"sandwich_slack", mo.sandwich_slack},
                     {"circle_root", kCircleRootTol},
                     {"residue", "exact"}};
  json in;
  in["phi"] = json::array();
  for (const auto& p : data.phi) in["phi"].push_back(format(p));
  in["b"] = json::array();
  for (const auto& x : b) in["b"].push_back(x.str());
  in["k"] = k;
  in["R"] = R;
  in["check_conformality"] = mo.check_conformality;
  in["sandwich_samples"] = mo.sandwich_samples;
  r["inputs"] = in;

  FCandidate f;
  try {
    f = build_f(b);
  } catch (const Error& e) {
    r["stages"] = json::array({{{"name", "f-conditions"}, {"passed", false}, {"detail", e.what()}}});
    r["failed_stage"] = "f-conditions";
    r["verdict"] = "failed";
    return finish(std::move(r), 2);
  }
  const MoebiusReport rep = assemble_report(data, f, k, R, mo);

  json stages = json::array();
  for (const auto& s : rep.stages) stages.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
  r["stages"] = stages;
  r["f"] = {{"f", format(f.f)}, {"min_modulus_on_unit_circle", f.min_modulus_circle}};
  r["k_requested"] = rep.k_requested;
  r["k_used"] = rep.k_used;
  r["bounds"] = {{"c", rep.bounds.c},
                 {"min_mod", rep.bounds.min_mod},
                 {"max_mod", rep.bounds.max_mod},
                 {"r_inner", rep.bounds.r_inner},
                 {"r_outer", rep.bounds.r_outer}};
  json res = json::array();
  for (const auto& x : rep.residues) res.push_back(x.str());
  r["residues"] = res;
  json psi = json::array();
  for (const auto& p : rep.psi.psi) psi.push_back(format(p));
  r["psi"] = {{"forms", psi}, {"symmetric", rep.psi.symmetric}};
  r["sandwich_worst"] = rep.sandwich_worst;
  r["loop_period"] = to_json(rep.loop_period);
  r["descent_error"] = rep.descent_error;
  auto rp2 = [](const std::optional<OmittedClosure>& c) -> json {
    if (!c) return nullptr;
    return {{"closed", c->closed}, {"rp2_count", c->rp2_count}, {"warnings", c->warnings}};
  };
  r["rp2"] = {{"g1", rp2(rep.rp2_g1)}, {"g2", rp2(rep.rp2_g2)}};
  if (rep.arithmetic) {
    const auto& a = *rep.arithmetic;
    r["arithmetic"] = {{"applicable", a.applicable},
                       {"lhs", a.lhs ? to_json(*a.lhs) : json(nullptr)},
                       {"lifted_lhs", a.lifted_lhs ? to_json(*a.lifted_lhs) : json(nullptr)},
                       {"holds", a.holds},
                       {"equality", a.equality},
                       {"note", a.note}};
  }
  std::vector<std::pair<std::string, std::string>> files;
  if (rep.mesh) {
    const std::string text = mesh_to_string(*rep.mesh);
    r["mesh"] = {{"file", "moebius.obj"},
                 {"vertices", rep.mesh->vertices.size()},
                 {"faces", rep.mesh->faces.size()},
                 {"hash", source_hash(text)}};
    files.emplace_back("moebius.obj", text);
  }
  r["failed_stage"] = rep.failed_stage ? json(*rep.failed_stage) : json(nullptr);
  r["verdict"] = rep.failed_stage ? "failed" : "verified";
  return finish(std::move(r), rep.failed_stage ? 2 : 0, std::move(files));
}

Outcome cmd_mesh(const json& config, std::string_view config_text, const Options& opt) {
  reject_csv(opt, "mesh");
  const Domain d = domain_field(config);
  GridParams g = grid_field(config, GridParams{});
  g.tol = positive_tol(opt, g.tol);

  json r = header("mesh", config_text, opt);
  r["tolerances"] = {{"quadrature", g.tol}, {"exclusion", g.exclusion}, {"residue", kResidueTol}};
  std::optional<PhiForms> phi;
  if (config.contains("weierstrass")) {
    const WeierstrassData w = weierstrass_from_config(config.at("weierstrass"));
    phi = phis_from_data(w);
  } else {
    const json& a = require(config, "phi");
    if (!a.is_array() || a.size() != 4) throw UsageError("config: phi must list four rational functions");
    std::array<QRational, 4> p;
    for (std::size_t j = 0; j < 4; ++j) {
      const std::string s = text_of(a[j], "phi");
      p[j] = load("phi", [&] { return parse_rational(s); });
    }
    phi = load("phi", [&] { return PhiForms(p); });
  }
  json in;
  in["phi"] = json::array();
  for (const auto& f : phi->phi) in["phi"].push_back(format(f));
  in["domain"] = domain_text(d);
  in["grid"] = {{"n", g.n}, {"sectors", g.sectors}, {"extent", g.extent}};
  r["inputs"] = in;
  r["conformal"] = check_conformality(*phi);

  const auto periods = period_residues(*phi, d);
  json pe = json::array();
  for (const auto& e : periods.entries) {
    json res = json::array();
    for (const auto& x : e.residue) res.push_back(to_json(x));
    pe.push_back({{"label", e.label}, {"point", to_json(e.point)}, {"residue", res}, {"exact", e.exact}});
  }
  r["periods"] = {{"well_defined", periods.well_defined}, {"entries", pe}};

  const Mesh mesh = export_mesh(*phi, d, g);
  const std::string text = mesh_to_string(mesh);
  r["mesh"] = {{"file", "mesh.obj"},
               {"vertices", mesh.vertices.size()},
               {"faces", mesh.faces.size()},
               {"source_hash", mesh.source_hash},
               {"hash", source_hash(text)},
               {"warnings", mesh.warnings}};
  r["verdict"] = "written";
  return finish(std::move(r), 0, {{"mesh.obj", text}});
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Outcome run_text(std::string_view command, std::string_view config_text, const Options& opt) {
  const json config = parse_config(config_text);
  auto dispatch = [&]() -> Outcome {
    if (command == "verify-main") return cmd_verify_main(config, config_text, opt);
    if (command == "gen-example") return cmd_gen_example(config, opt);
    if (command == "falsify") return cmd_falsify(config, config_text, opt);
    if (command == "lagrangian") return cmd_lagrangian(config, config_text, opt);
    if (command == "nonorientable") return cmd_nonorientable(config, config_text, opt);
    if (command == "mesh") return cmd_mesh(config, config_text, opt);
    throw UsageError("unknown command '" + std::string(command) + "'");
  };
  Outcome o;
  try {
    o = dispatch();
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    // the inputs were well formed but a verification step refused them
    json r = header(std::string(command).c_str(), config_text, opt);
    r["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    r["verdict"] = "failed";
    o = finish(std::move(r), 2);
  }
  if (o.stdout_text.empty()) o.stdout_text = o.report.dump(2) + "\n";
  return o;
}

int run(std::string_view command, const Options& opt, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = opt.config ? read_file(*opt.config) : std::string();
    Outcome o = run_text(command, text, opt);
    if (opt.out) {
      for (const auto& [name, content] : o.files) write_atomic(*opt.out / name, content);
      write_atomic(*opt.out / (std::string(command) + ".json"), o.report.dump(2) + "\n");
    }
    out << o.stdout_text;
    return o.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace minsurf::cli
