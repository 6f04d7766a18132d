#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "resolab/errors.hpp"
#include "resolab/family_io.hpp"
#include "resolab/independence.hpp"
#include "resolab/lab.hpp"
#include "resolab/parallel.hpp"
#include "resolab/prng.hpp"

namespace resolab {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "resolab_lab_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string schema_message(const json& j) {
  try {
    family_from_json(j);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

TEST(FamilyIo, MinimalFamily) {
  const PartitionFamily f = family_from_json(
      json::parse(R"({"n":2,"partitions":[{"id":"p","block":"B","side0":[0]}]})"));
  EXPECT_EQ(f.universe(), 2u);
  EXPECT_EQ(f.at("p").side1().to_vector(), std::vector<Point>({1}));
  EXPECT_EQ(f[0].block, Block::kB);
}

TEST(FamilyIo, SchemaErrorsNamePaths) {
  EXPECT_EQ(schema_message(json::parse(
                R"({"n":2,"partitions":[{"id":"p","block":"B","side0":[0,2]}]})"))
                .rfind("/partitions/0/side0/1", 0),
            0u);
  EXPECT_EQ(schema_message(json::parse(R"({"partitions":[]})")).rfind("/n", 0), 0u);
  EXPECT_EQ(schema_message(json::parse(
                R"({"n":2,"partitions":[{"id":"p","block":"Q","side0":[]}]})"))
                .rfind("/partitions/0/block", 0),
            0u);
  EXPECT_FALSE(schema_message(json::parse(
                   R"({"n":2,"partitions":[{"id":"p","block":"B","side0":[]},
                                           {"id":"p","block":"B","side0":[]}]})"))
                   .empty());
}

TEST(FamilyIoProperty, RoundTripAndCanonicalBytes) {
  SplitMix64 rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    const PartitionFamily f = oracle::random_small_family(rng, 1 + rng.below(100), rng.below(6));
    const std::string once = serialize_family(f);
    const PartitionFamily back = family_from_json(json::parse(once));
    EXPECT_EQ(back, f);
    EXPECT_EQ(serialize_family(back), once);
  }
  const PartitionFamily p = product_family(1, 2, 1);
  const fs::path path = scratch("family.json");
  save_family(p, path);
  EXPECT_EQ(load_family(path), p);
  EXPECT_EQ(slurp(path), serialize_family(p));
}

TEST(ConditionIo, RoundTrip) {
  const Condition c{{"a", 0}, {"e:d0:d1:0", 1}};
  EXPECT_EQ(condition_from_json(condition_to_json(c)), c);
  EXPECT_THROW(condition_from_json(json::parse(R"({"a":2})")), SchemaError);
}

TEST(Config, Validation) {
  EXPECT_THROW(parse_config(json::parse(R"({"commands":["gen"],"mu_D":3,"oops":1})")),
               UsageError);
  EXPECT_THROW(parse_config(json::parse(R"({"commands":["fly"],"mu_D":3})")), UsageError);
  EXPECT_THROW(parse_config(json::parse(R"({"commands":["gen"],"mu_D":-3})")), UsageError);
  EXPECT_THROW(parse_config(json::parse(R"({"commands":["gen"],"mu_B":1,"mu_C":2,"mu_D":3})")),
               UsageError);
  try {
    parse_config(json::parse(R"({"commands":["verify-claims"],"mu_D":8,"size_I":3,"m_max":2})"));
    FAIL() << "expected a sizing error";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("sizing"), std::string::npos);
  }
  const LabConfig c = parse_config(json::parse(R"({"commands":["gen"],"mu_C":2,"mu_D":3})"));
  EXPECT_EQ(c.mu_b, 2u);
  EXPECT_EQ(c.to_json()["cap"], 2);
}

json n16_config() {
  return json::parse(R"({"commands":["gen","verify-claims","solve"],"source":"product",
    "mu_B":0,"mu_D":4,"t":1,"depth":1,"size_I":2,"m_max":2,"seed":7})");
}

TEST(Lab, N16PipelinePasses) {
  const LabRun run = run_lab(parse_config(n16_config()));
  EXPECT_EQ(run.exit_code, 0) << run.report.dump(2);
  EXPECT_TRUE(run.report["passed"].get<bool>());
  EXPECT_EQ(run.report["config"]["seed"], 7);
  ASSERT_EQ(run.report["results"].size(), 3u);
  EXPECT_EQ(run.report["results"][2]["almost"]["count"], 2);
}

TEST(Lab, FailedVerdictExitsOne) {
  const PartitionFamily p = product_family(0, 3, 1);
  PartitionFamily dup(8);
  dup.add("d0", p.at("d0"), Block::kD);
  dup.add("d1", p.at("d1"), Block::kD);
  dup.add("d2", p.at("d1"), Block::kD);
  dup.add("d3", p.at("d2"), Block::kD);
  const fs::path path = scratch("dup.json");
  save_family(dup, path);
  json j = json::parse(R"({"commands":["gen","verify-claims"],"source":"file",
    "depth":1,"size_I":2,"m_max":2})");
  j["family_path"] = path.filename().string();
  const LabRun run = run_lab(parse_config(j, path.parent_path()));
  EXPECT_EQ(run.exit_code, 1);
  EXPECT_EQ(run.report["results"][1]["status"], "fail");
}

TEST(Lab, CapacityErrorDoesNotStopLaterCommands) {
  json j = n16_config();
  j["commands"] = {"forced-check", "gen"};
  j["mu_D"] = 5;
  j["m_max"] = 1;
  const LabRun run = run_lab(parse_config(j));
  EXPECT_EQ(run.exit_code, 1);
  EXPECT_EQ(run.report["results"][0]["status"], "error");
  EXPECT_EQ(run.report["results"][1]["status"], "pass");
}

TEST(Lab, PairWitnessSizingExitsTwo) {
  json j = n16_config();
  j["mu_D"] = 3;
  j["m_max"] = 1;
  j["commands"] = {"verify-claims"};
  const LabRun run = run_lab(parse_config(j));
  EXPECT_EQ(run.exit_code, 2);
  EXPECT_NE(run.report["results"][0]["error"].get<std::string>().find("sizing"),
            std::string::npos);
}

TEST(Lab, ForcedCheckPasses) {
  const LabRun run = run_lab(parse_config(json::parse(
      R"({"commands":["forced-check"],"mu_B":2,"mu_D":2,"depth":2,"samples":6,"seed":3})")));
  EXPECT_EQ(run.exit_code, 0) << run.report.dump(2);
  EXPECT_EQ(run.report["results"][0]["samples"].size(), 6u);
}

TEST(Lab, DeterministicAcrossJobs) {
  json j = n16_config();
  j["commands"] = {"gen", "verify-claims", "solve", "forced-check"};
  set_jobs(1);
  const std::string a = serialize_report(run_lab(parse_config(j)).report);
  set_jobs(4);
  const std::string b = serialize_report(run_lab(parse_config(j)).report);
  set_jobs(1);
  EXPECT_EQ(a, b);
  j["seed"] = 8;
  EXPECT_NE(serialize_report(run_lab(parse_config(j)).report), a);
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(RESOLAB_CLI) + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodesAndOutput) {
  const fs::path cfg = scratch("n16.json");
  std::ofstream(cfg) << n16_config().dump();
  const fs::path out = scratch("n16_report.json");
  EXPECT_EQ(run_cli("run --config " + cfg.string() + " --out " + out.string() + " 2>/dev/null"), 0);
  const json report = json::parse(slurp(out));
  EXPECT_TRUE(report["passed"].get<bool>());
  EXPECT_EQ(run_cli("run --config " + cfg.string() + " --seed 99 --out " + out.string() +
                    " 2>/dev/null"),
            0);
  EXPECT_EQ(json::parse(slurp(out))["config"]["seed"], 99);

  json bad = n16_config();
  bad["mu_D"] = 3;
  std::ofstream(scratch("bad.json")) << bad.dump();
  EXPECT_EQ(run_cli("run --config " + scratch("bad.json").string() + " >/dev/null 2>&1"), 2);
  EXPECT_EQ(run_cli("run >/dev/null 2>&1"), 2);
  EXPECT_EQ(run_cli("run --config /nonexistent.json >/dev/null 2>&1"), 2);
}

}  // namespace
}  // namespace resolab
