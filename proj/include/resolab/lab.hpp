#ifndef RESOLAB_LAB_HPP
#define RESOLAB_LAB_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "resolab/errors.hpp"

namespace resolab {

// Malformed or inconsistent configuration; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct LabConfig {
  std::vector<std::string> commands;
  std::string source = "product";  // product | random | file
  std::filesystem::path family_path;
  std::size_t mu_b = 0;  // C-block size (the seed B-block, retagged C)
  std::size_t mu_d = 0;
  std::size_t t = 1;
  std::size_t n = 0;             // random source only
  std::size_t verify_depth = 0;  // random source; 0 means 2 * depth
  std::size_t depth = 1;
  std::size_t budget = 1;
  std::size_t size_i = 2;
  std::size_t m_max = 1;
  std::size_t cap = 0;  // 0 means size_I
  std::size_t samples = 8;
  std::vector<std::string> solvers{"disjoint", "almost"};
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> family_out;

  // Effective configuration with every default filled in.
  nlohmann::json to_json() const;
};

// Relative paths in the config resolve against `base_dir`. UsageError names
// the offending key.
LabConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
LabConfig load_config(const std::filesystem::path& path);

struct LabRun {
  nlohmann::json report;
  int exit_code = 0;  // 0 pass, 1 failed verdict, 2 usage / sizing
};

// Executes the commands in order and assembles the report. Per-command
// errors are recorded in the report and do not stop later commands.
LabRun run_lab(const LabConfig& config);

// Canonical report text: sorted keys, two-space indent, trailing newline.
std::string serialize_report(const nlohmann::json& report);

}  // namespace resolab

#endif  // RESOLAB_LAB_HPP
