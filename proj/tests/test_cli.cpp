#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace minsurf::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const char* name) { return slurp(fs::path(MINSURF_DATA_DIR) / name); }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("minsurf-cli-" + name);
  fs::remove_all(p);
  return p;
}

int tool(const std::string& args) {
  const int status = std::system((std::string(MINSURF_TOOL) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kMoebius = data("moebius.json");

}  // namespace

TEST(Cli, ReportHeader) {
  const auto o = run_text("verify-main", data("equality.json"), {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["schema_version"], 1);
  EXPECT_EQ(o.report["command"], "verify-main");
  EXPECT_EQ(o.report["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(o.report["verdict"], "equality");
  EXPECT_EQ(o.report["result"]["lhs"], "1");
  EXPECT_EQ(o.report["exit_code"], 0);
  EXPECT_TRUE(o.report.contains("tolerances"));
}

TEST(Cli, ConfigHashFollowsConfigText) {
  const std::string a = data("equality.json");
  const auto x = run_text("verify-main", a, {});
  const auto y = run_text("verify-main", a + "\n", {});
  EXPECT_NE(x.report["config_hash"], y.report["config_hash"]);
  EXPECT_EQ(x.report["result"], y.report["result"]);
}

TEST(Cli, VerifyMainHypothesisFailed) {
  const auto o = run_text("verify-main",
                          R"x({"domain":{"punctures":["0","1","2"]},"factors":[{"g":"z","m":1}],)x"
                          R"x("omega_hat":"1/(z*(z-1)*(z-2))"})x",
                          {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["verdict"], "hypothesis-failed");
}

TEST(Cli, VerifyMainWeierstrass) {
  const auto o = run_text("verify-main",
                          R"x({"domain":{"punctures":["1","2","3"]},)x"
                          R"x("weierstrass":{"g1":"z","g2":"z","omega_hat":"1/((z-1)*(z-2)*(z-3))"}})x",
                          {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["r4_gauss_map"]["q1"], 4);
  EXPECT_EQ(o.report["r4_gauss_map"]["verdict"], "equality");
}

TEST(Cli, UsageErrors) {
  EXPECT_THROW(run_text("verify-main", "{not json", {}), UsageError);
  EXPECT_THROW(run_text("verify-main", R"x({"factors":[]})x", {}), UsageError);
  EXPECT_THROW(run_text("verify-main", R"x({"factors":[{"g":"z+","m":1}],"omega_hat":"1"})x", {}), UsageError);
  EXPECT_THROW(run_text("verify-main", R"x({"factors":[{"g":"z","m":1}],"omega_hat":"0"})x", {}), UsageError);
  EXPECT_THROW(run_text("verify-main", R"x({"domain":{"punctures":["1","1"]},"factors":[{"g":"z","m":1}],"omega_hat":"1"})x", {}),
               UsageError);
  EXPECT_THROW(run_text("nosuch", "", {}), UsageError);
  Options csv;
  csv.format = Format::csv;
  EXPECT_THROW(run_text("verify-main", data("equality.json"), csv), UsageError);
  Options bad_tol;
  bad_tol.tol = -1;
  EXPECT_THROW(run_text("lagrangian", data("lagrangian.json"), bad_tol), UsageError);
  Options p1;
  p1.p = 1;
  p1.m = {1};
  EXPECT_THROW(run_text("gen-example", "", p1), UsageError);
}

TEST(Cli, GenExampleEquality) {
  Options opt;
  opt.p = 5;
  opt.m = {1, 2};
  const auto o = run_text("gen-example", "", opt);
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["verdict"], "equality");
  ASSERT_EQ(o.files.size(), 1u);
  // the emitted config reproduces the verdict
  const auto again = run_text("verify-main", o.files[0].second, {});
  EXPECT_EQ(again.report["result"], o.report["result"]);
  opt.p = 6;
  EXPECT_EQ(run_text("gen-example", "", opt).report["verdict"], "hypothesis-failed");
}

TEST(Cli, FalsifyCsv) {
  Options opt;
  opt.n = 20;
  opt.seed = 3;
  opt.format = Format::csv;
  const auto o = run_text("falsify", "", opt);
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.stdout_text.rfind("seed,p,m,q,lhs,complete,applicable,holds,verdict\n", 0), 0u);
  EXPECT_EQ(o.report["summary"]["complete"], 20);
  EXPECT_EQ(o.report["summary"]["counterexamples"], 0);
  EXPECT_EQ(o.report["seed"], 3);
  opt.seed = 4;
  EXPECT_NE(run_text("falsify", "", opt).stdout_text, o.stdout_text);
}

TEST(Cli, FalsifyConfigBounds) {
  Options opt;
  const auto o = run_text("falsify", R"x({"n": 10, "bounds": {"max_punctures": 2, "max_m": 1}})x", opt);
  EXPECT_EQ(o.report["inputs"]["n"], 10);
  EXPECT_EQ(o.report["inputs"]["bounds"]["max_punctures"], 2);
  EXPECT_THROW(run_text("falsify", R"x({"bounds": {"min_punctures": 4, "max_punctures": 2}})x", opt), UsageError);
}

TEST(Cli, Lagrangian) {
  const auto o = run_text("lagrangian", data("lagrangian.json"), {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["tolerances"]["residual"], 1e-5);
  EXPECT_EQ(o.report["samples"][0]["K"], -1.0);
  EXPECT_EQ(o.report["samples"][0]["K_printed_form"], -0.5);
  EXPECT_EQ(o.files.size(), 1u);
  Options tight;
  tight.tol = 1e-14;
  const auto t = run_text("lagrangian", data("lagrangian.json"), tight);
  EXPECT_EQ(t.exit_code, 2);
  EXPECT_EQ(t.report["tolerances"]["residual"], 1e-14);
}

TEST(Cli, NonorientableShipped) {
  const auto o = run_text("nonorientable", kMoebius, {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["k_requested"], 3);
  EXPECT_EQ(o.report["k_used"], 5);
  EXPECT_EQ(o.report["arithmetic"]["equality"], true);
  EXPECT_EQ(o.report["rp2"]["g1"]["rp2_count"], 2);
  EXPECT_NEAR(o.report["f"]["min_modulus_on_unit_circle"].get<double>(), std::sqrt(7.0) / 2, 1e-9);
  ASSERT_EQ(o.files.size(), 1u);
  EXPECT_EQ(o.files[0].first, "moebius.obj");
}

TEST(Cli, NonorientableFailures) {
  auto config = json::parse(kMoebius);
  config["k"] = 4;
  auto o = run_text("nonorientable", config.dump(), {});
  EXPECT_EQ(o.exit_code, 2);
  EXPECT_EQ(o.report["failed_stage"], "cover");

  config = json::parse(kMoebius);
  config["phi"][3] = "z + z^-1";
  o = run_text("nonorientable", config.dump(), {});
  EXPECT_EQ(o.report["failed_stage"], "conformality");
  Options skip;
  skip.no_conformality = true;
  o = run_text("nonorientable", config.dump(), skip);
  EXPECT_EQ(o.report["inputs"]["check_conformality"], false);
  EXPECT_NE(o.report["failed_stage"], "conformality");

  config = json::parse(kMoebius);
  config["b"] = json::array({"1"});
  o = run_text("nonorientable", config.dump(), {});
  EXPECT_EQ(o.exit_code, 2);
  EXPECT_EQ(o.report["failed_stage"], "f-conditions");
}

TEST(Cli, MeshCatenoid) {
  const auto o = run_text("mesh", data("catenoid.json"), {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["conformal"], true);
  EXPECT_EQ(o.report["periods"]["well_defined"], true);
  ASSERT_EQ(o.files.size(), 1u);
  EXPECT_EQ(o.files[0].second.rfind("#", 0), 0u);
  EXPECT_GT(o.report["mesh"]["vertices"].get<int>(), 0);
}

TEST(Cli, MeshRefusesMultivalued) {
  // Res_0 (i/z) = i, so the real part of the period around 0 is 2 pi, not 0
  const auto o = run_text("mesh", R"x({"phi":["0","0","i/z","0"],"domain":{"punctures":["0"]}})x", {});
  EXPECT_EQ(o.exit_code, 2);
  EXPECT_EQ(o.report["error"]["kind"], "multivalued-immersion");
}

TEST(Cli, WritesFilesAtomically) {
  const fs::path out = scratch("write");
  Options opt;
  opt.config = fs::path(MINSURF_DATA_DIR) / "moebius.json";
  opt.out = out;
  std::ostringstream so, se;
  EXPECT_EQ(run("nonorientable", opt, so, se), 0);
  EXPECT_TRUE(fs::exists(out / "nonorientable.json"));
  EXPECT_TRUE(fs::exists(out / "moebius.obj"));
  for (const auto& e : fs::directory_iterator(out)) EXPECT_NE(e.path().extension(), ".tmp");
  EXPECT_EQ(slurp(out / "nonorientable.json"), so.str());
  fs::remove_all(out);
}

TEST(Cli, RunReportsUsageOnStderr) {
  Options opt;
  opt.config = "/nonexistent/config.json";
  std::ostringstream so, se;
  EXPECT_EQ(run("verify-main", opt, so, se), 1);
  EXPECT_TRUE(so.str().empty());
  EXPECT_NE(se.str().find("cannot read"), std::string::npos);
}

TEST(Cli, ExecutableExitCodes) {
  const std::string d = MINSURF_DATA_DIR;
  EXPECT_EQ(tool("--help"), 0);
  EXPECT_EQ(tool(""), 1);
  EXPECT_EQ(tool("verify-main --bogus"), 1);
  EXPECT_EQ(tool("verify-main --format xml --config " + d + "/equality.json"), 1);
  EXPECT_EQ(tool("verify-main --config " + d + "/equality.json"), 0);
  EXPECT_EQ(tool("--config " + d + "/equality.json verify-main"), 0);
  EXPECT_EQ(tool("gen-example --p 4 --m 1,1"), 0);
  EXPECT_EQ(tool("falsify --n 5 --seed 9 --format csv"), 0);
}

TEST(Cli, Deterministic) {
  Options opt;
  opt.seed = 5;
  for (const char* c : {"nonorientable", "lagrangian", "mesh"}) {
    const std::string cfg = std::string(c) == "nonorientable" ? kMoebius
                            : std::string(c) == "lagrangian"  ? data("lagrangian.json")
                                                              : data("catenoid.json");
    const auto a = run_text(c, cfg, opt), b = run_text(c, cfg, opt);
    EXPECT_EQ(a.stdout_text, b.stdout_text) << c;
    EXPECT_EQ(a.files, b.files) << c;
  }
}
