#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace minsurf::cli;
  CLI::App app{"Checks for complete minimal surfaces in R^4 and their Gauss maps"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kToolVersion);

  Options opt;
  std::string format = "json";
  std::string config, out;
  auto* g = app.add_option_group("common");
  g->add_option("--config", config, "JSON config file");
  g->add_option("--seed", opt.seed, "seed for sampled stages");
  g->add_option("--tol", opt.tol, "replaces the main numeric tolerance of the command");
  g->add_option("--out", out, "directory for the report and generated files");
  g->add_option("--format", format, "json or csv (csv: falsify only)")->check(CLI::IsMember({"json", "csv"}));
  g->add_flag("--no-conformality", opt.no_conformality, "skip the exact conformality stage");

  const char* names[][2] = {
      {"verify-main", "exceptional values and the main inequality for a metric or Weierstrass data"},
      {"gen-example", "equality example with p boundary points and weights m"},
      {"falsify", "random search for counterexamples"},
      {"lagrangian", "Lagrangian immersion from a holomorphic pair"},
      {"nonorientable", "Moebius strip construction on an annulus"},
      {"mesh", "immersion mesh from Weierstrass data or four forms"}};
  for (const auto& [name, help] : names) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (std::string(name) == "gen-example") {
      sub->add_option("--p", opt.p, "number of boundary points (infinity included)");
      sub->add_option("--m", opt.m, "weights, e.g. --m 1,2")->delimiter(',');
    }
    if (std::string(name) == "falsify") sub->add_option("--n", opt.n, "complete instances to test");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (!config.empty()) opt.config = config;
  if (!out.empty()) opt.out = out;
  opt.format = format == "csv" ? Format::csv : Format::json;
  return run(app.get_subcommands().front()->get_name(), opt, std::cout, std::cerr);
}
