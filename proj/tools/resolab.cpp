// resolab run --config <path> [--out <path>] [--seed <u64>] [--jobs <k>]
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "resolab/lab.hpp"
#include "resolab/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"resolab: resolvability experiments on finite partition spaces"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "execute the commands of a config file");
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  run->add_option("--config", config_path, "config JSON")->required();
  run->add_option("--out", out_path, "report path (default: stdout)");
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  resolab::LabConfig config;
  try {
    config = resolab::load_config(config_path);
  } catch (const resolab::Error& e) {
    std::cerr << "resolab: " << e.what() << "\n";
    return 2;
  }
  if (seed) config.seed = *seed;
  resolab::set_jobs(jobs);

  const resolab::LabRun result = resolab::run_lab(config);
  const std::string text = resolab::serialize_report(result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "resolab: cannot write " << out_path << "\n";
      return 2;
    }
  }
  for (const auto& r : result.report["results"]) {
    std::cerr << r["command"].get<std::string>() << ": " << r["status"].get<std::string>();
    if (r.contains("error")) std::cerr << " (" << r["error"].get<std::string>() << ")";
    std::cerr << "\n";
  }
  return result.exit_code;
}
