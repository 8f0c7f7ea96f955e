#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace minsurf::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

enum class Format { json, csv };

struct Options {
  std::optional<std::filesystem::path> config;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<std::filesystem::path> out;
  Format format = Format::json;
  bool no_conformality = false;
  std::optional<int> p;  // gen-example
  std::vector<int> m;    // gen-example
  std::optional<int> n;  // falsify
};

/// Malformed flags or config; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int exit_code = 0;
  json report;
  std::vector<std::pair<std::string, std::string>> files;  // name -> content, written under --out
  std::string stdout_text;
};

/// `config_text` is the raw config bytes; its digest is embedded in the report.
Outcome cmd_verify_main(const json& config, std::string_view config_text, const Options& opt);
Outcome cmd_gen_example(const json& config, const Options& opt);
Outcome cmd_falsify(const json& config, std::string_view config_text, const Options& opt);
Outcome cmd_lagrangian(const json& config, std::string_view config_text, const Options& opt);
Outcome cmd_nonorientable(const json& config, std::string_view config_text, const Options& opt);
Outcome cmd_mesh(const json& config, std::string_view config_text, const Options& opt);

/// Loads the config named by opt, dispatches, writes files under opt.out
/// (atomically) and prints the report. Returns the exit code.
int run(std::string_view command, const Options& opt, std::ostream& out, std::ostream& err);

/// Runs a command on in-memory config text; nothing is written to disk.
Outcome run_text(std::string_view command, std::string_view config_text, const Options& opt);

void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace minsurf::cli
