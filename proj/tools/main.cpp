// l2ext: scenario runner.
//
//   l2ext run --config <path> [--seed N] [--samples N] [--out <path>] [--format json|table]
//   l2ext list
//   l2ext --list
//
// Without --out the report goes to stdout; if L2EXT_OUT_DIR is set it is also
// written to $L2EXT_OUT_DIR/<scenario>.<json|txt>.
//
// Exit codes: 0 all assertions passed, 1 an assertion failed, 2 usage error,
// 3 unsupported scenario or model, 4 numerical failure.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "l2ext/errors.hpp"
#include "l2ext/scenario.hpp"

namespace {

enum Exit { kOk = 0, kAssertionFailed = 1, kUsage = 2, kUnsupported = 3, kNumerical = 4 };

bool write_file(const std::filesystem::path& path, const std::string& body) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  out << body;
  return static_cast<bool>(out);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproducible verification reports for weighted L2 extension bounds"};
  app.set_version_flag("--version", std::string(l2ext::kVersion));
  bool list_flag = false;
  app.add_flag("--list", list_flag, "Print the scenario catalog with parameter ranges");

  auto* run = app.add_subcommand("run", "Run one scenario from a JSON config");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> samples;
  std::string out_path;
  std::string format = "json";
  run->add_option("--config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--samples", samples, "Override the Monte Carlo sample count")->check(CLI::NonNegativeNumber);
  run->add_option("--out", out_path, "Write the report to this path");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "table"}));

  auto* list = app.add_subcommand("list", "Print the scenario catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (list_flag || list->parsed()) {
    std::cout << l2ext::catalog_listing();
    return kOk;
  }
  if (!run->parsed()) {
    std::cerr << app.help();
    return kUsage;
  }

  try {
    l2ext::ScenarioConfig config = l2ext::load_config(config_path);
    if (seed) config.seed = *seed;
    if (samples) config.samples = *samples;

    const l2ext::Report report = l2ext::run_scenario(config);
    const std::string body = format == "json" ? l2ext::to_json(report) : l2ext::to_table(report);

    std::filesystem::path target = out_path;
    if (target.empty()) {
      if (const char* dir = std::getenv("L2EXT_OUT_DIR"); dir && *dir)
        target = std::filesystem::path(dir) / (report.scenario + (format == "json" ? ".json" : ".txt"));
    }
    if (out_path.empty()) std::cout << body;
    if (!target.empty() && !write_file(target, body)) {
      std::cerr << "error: cannot write report to " << target << "\n";
      return kUsage;
    }
    return report.passed() ? kOk : kAssertionFailed;
  } catch (const l2ext::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const l2ext::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const l2ext::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const l2ext::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kNumerical;
  } catch (const l2ext::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
}
