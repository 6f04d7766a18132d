#include "resolab/lab.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "resolab/construction.hpp"
#include "resolab/family_io.hpp"
#include "resolab/independence.hpp"
#include "resolab/prng.hpp"
#include "resolab/solvers.hpp"
#include "resolab/trace.hpp"
#include "resolab/trace_space.hpp"

namespace resolab {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"gen", "verify-claims", "solve", "forced-check"};
const std::set<std::string> kSolvers = {"disjoint", "almost"};
const std::set<std::string> kKeys = {
    "commands", "source",  "family_path", "mu_B",    "mu_C",   "mu_D",
    "t",        "n",       "verify_depth", "depth",  "budget", "size_I",
    "m_max",    "cap",     "samples",     "solvers", "seed",   "family_out"};

// Number of extension-map entries copied into the report per predicate.
constexpr std::size_t kMapSample = 8;

std::size_t get_size(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw UsageError("/" + key + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw UsageError("/" + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::string> get_list(const json& j, const std::string& key,
                                  const std::set<std::string>& allowed) {
  const json& v = j.at(key);
  if (!v.is_array()) throw UsageError("/" + key + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string() || !allowed.contains(v[i].get<std::string>())) {
      throw UsageError("/" + key + "/" + std::to_string(i) + ": unknown entry " +
                       v[i].dump());
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

json cond_json(const std::optional<Condition>& cond) {
  return cond ? condition_to_json(*cond) : json(nullptr);
}

json predicate(const std::string& name, bool verdict, json witness) {
  return {{"predicate", name}, {"verdict", verdict}, {"witness", std::move(witness)}};
}

json map_json(const ExtensionMap& map) {
  json sample = json::array();
  for (std::size_t i = 0; i < map.size() && i < kMapSample; ++i) {
    sample.push_back({{"from", condition_to_json(map[i].first)},
                      {"to", condition_to_json(map[i].second)}});
  }
  return {{"entries", map.size()}, {"sample", std::move(sample)}};
}

json points_json(const PointSet& s) { return s.to_vector(); }

// Seed blocks of the pipeline. The C-block is the C-tagged part of the seed
// family, or its B-block retagged C when nothing is tagged C.
struct Seed {
  PartitionFamily family;
  PartitionFamily c_block;
  PartitionFamily d_block;
  std::optional<RandomFamilyResult> random;
};

Seed make_seed(const LabConfig& config) {
  Seed seed;
  if (config.source == "file") {
    seed.family = load_family(config.family_path);
  } else if (config.source == "random") {
    const std::size_t verify = config.verify_depth ? config.verify_depth : 2 * config.depth;
    RandomFamilyResult r = random_family(config.mu_b + config.mu_d, config.n,
                                         std::min(verify, config.mu_b + config.mu_d),
                                         config.t, config.seed, config.mu_b);
    seed.family = r.family;
    seed.random = std::move(r);
  } else {
    seed.family = product_family(config.mu_b, config.mu_d, config.t);
  }
  PartitionFamily c = seed.family.block(Block::kC);
  seed.c_block = c.empty() ? seed.family.block(Block::kB).retagged(Block::kC) : c;
  seed.d_block = seed.family.block(Block::kD);
  return seed;
}

json run_gen(const LabConfig& config, const Seed& seed, bool& ok) {
  json preds = json::array();
  if (seed.random) {
    preds.push_back(predicate("random_family.independent", seed.random->independent,
                              cond_json(seed.random->failing)));
    ok = ok && seed.random->independent;
  }
  const std::size_t d = std::min(config.depth, seed.family.size());
  const Verdict ind = check_independent(seed.family, d, config.t);
  preds.push_back(predicate("check_independent", ind.holds, cond_json(ind.witness)));
  ok = ok && ind.holds;
  if (!seed.c_block.empty() && !seed.d_block.empty()) {
    const Condition1Result c1 =
        check_condition1(seed.c_block, seed.d_block, config.depth, config.t);
    json w = nullptr;
    if (c1.failing) {
      w = {{"eta", condition_to_json(c1.failing->first)},
           {"eps", condition_to_json(c1.failing->second)}};
    }
    preds.push_back(predicate("check_condition1", c1.holds, std::move(w)));
    ok = ok && c1.holds;
  }
  const SeparationResult sep = check_separating(seed.family);
  json info = {{"n", seed.family.universe()},
               {"partitions", seed.family.size()},
               {"c_block", seed.c_block.size()},
               {"d_block", seed.d_block.size()},
               {"separating", sep.separating}};
  if (sep.unseparated) {
    info["unseparated"] = {sep.unseparated->first, sep.unseparated->second};
  }
  if (config.family_out) {
    save_family(seed.family, *config.family_out);
    info["family_out"] = config.family_out->string();
  }
  return {{"family", std::move(info)}, {"predicates", std::move(preds)}};
}

json run_claims(const LabConfig& config, const Construction& con, const TraceSpace& space,
                bool& ok) {
  json out;
  const Claim1Report c1 = verify_claim1(con, config.depth);
  json w1 = nullptr;
  if (c1.failing_eta) {
    w1 = {{"eta", condition_to_json(*c1.failing_eta)}, {"alpha", *c1.failing_alpha}};
  }
  out["claim1"] = predicate("claim1_witness", c1.holds, std::move(w1));
  out["claim1"]["checked"] = c1.checked;
  ok = ok && c1.holds;

  const Claim2Report c2 = verify_claim2(space, con);
  json w2 = nullptr;
  if (c2.failing) {
    w2 = {{"eps", condition_to_json(c2.failing->eps)},
          {"eta", condition_to_json(c2.failing->eta)},
          {"phi", condition_to_json(c2.failing->phi)},
          {"check", c2.failing->check},
          {"size", c2.failing->size}};
  }
  out["claim2"] = predicate("claim2", c2.holds, std::move(w2));
  out["claim2"]["checked"] = c2.checked;
  ok = ok && c2.holds;

  const Claim3aReport c3a = verify_claim3a(space, con);
  json e3a = json::array();
  for (const Claim3aEntry& e : c3a.entries) {
    json p = predicate("is_dense", e.dense, cond_json(e.not_met));
    p["alpha"] = e.alpha;
    p["proof_path"] = e.proof_path;
    p["proof_failure"] = cond_json(e.proof_failure);
    e3a.push_back(std::move(p));
  }
  out["claim3a"] = {{"holds", c3a.holds}, {"entries", std::move(e3a)}};
  ok = ok && c3a.holds;

  const Claim3bReport c3b = verify_claim3b(space, con);
  json e3b = json::array();
  for (const Claim3bEntry& e : c3b.entries) {
    json p = predicate("is_nowhere_dense", e.nowhere_dense,
                       e.failing ? condition_to_json(*e.failing) : map_json(e.extensions));
    p["alpha"] = e.alpha;
    p["beta"] = e.beta;
    p["extensions_valid"] = e.extensions_valid;
    p["replayed"] = e.replayed;
    e3b.push_back(std::move(p));
  }
  out["claim3b"] = {{"holds", c3b.holds}, {"entries", std::move(e3b)}};
  ok = ok && c3b.holds;
  return out;
}

json run_solve(const LabConfig& config, const Construction& con, const TraceSpace& space,
               bool& ok) {
  json out;
  for (const std::string& solver : config.solvers) {
    if (solver == "disjoint") {
      const ResolutionResult r = max_disjoint_dense(space);
      json w = json::array();
      for (const PointSet& s : r.witness) w.push_back(points_json(s));
      const std::size_t disp = dispersion(space);
      out["disjoint"] = {{"count", r.count},
                         {"witness", std::move(w)},
                         {"dispersion", disp},
                         {"maximally_resolvable", r.count >= disp}};
    } else {
      std::vector<PointSet> certificate;
      for (const std::string& alpha : con.i_labels()) {
        certificate.push_back(con.d_block().at(alpha).side0());
      }
      const std::size_t cap = config.cap ? config.cap : config.size_i;
      const ResolutionResult r =
          max_almost_disjoint_dense(space, config.budget, cap, certificate);
      const bool accepted = r.count == cap;
      out["almost"] = {{"count", r.count},
                       {"cap", cap},
                       {"certificate", con.i_labels()},
                       {"verdict", accepted}};
      ok = ok && accepted;
    }
  }
  return out;
}

json run_forced(const LabConfig& config, const Seed& seed, bool& ok) {
  if (seed.family.universe() > kForcedMaxPoints) {
    throw CapacityError("forced-check needs n <= " + std::to_string(kForcedMaxPoints) +
                        ", got " + std::to_string(seed.family.universe()));
  }
  if (seed.c_block.empty() || seed.d_block.empty()) {
    throw PreconditionError("forced-check needs a nonempty C-block and D-block");
  }
  json out;

  // Collection {D[eta]} of nonempty D-block traces, deduplicated.
  std::vector<PointSet> collection;
  const auto d_pool = all_indices(seed.d_block);
  walk_conditions(seed.d_block, d_pool, std::min(config.depth, seed.d_block.size()),
                  [&](std::span<const Literal> lits, const PointSet& trace) {
                    if (!lits.empty() && !trace.empty() &&
                        std::find(collection.begin(), collection.end(), trace) ==
                            collection.end()) {
                      collection.push_back(trace);
                    }
                    return trace.empty() ? Visit::kPrune : Visit::kDescend;
                  });
  const TraceSpace c_space(seed.c_block, std::min(config.depth, seed.c_block.size()),
                           config.t);
  const ForcedResult forced = is_D_forced(c_space, collection);
  out["d_forced"] = {{"forced", forced.forced},
                     {"collection", collection.size()},
                     {"minimal_dense_sets", forced.minimal_dense_sets},
                     {"counterexample", forced.counterexample
                                            ? json(points_json(*forced.counterexample))
                                            : json(nullptr)}};

  const PartitionFamily joint = concat(seed.c_block, seed.d_block);
  const TraceSpace space(joint, std::min(config.depth, joint.size()), config.t);
  const auto pool = all_indices(joint);
  SplitMix64 rng(config.seed);
  std::vector<GeneratorPair> generators;
  std::vector<PointSet> dense_sets;
  json samples = json::array();
  for (std::size_t s = 0; s < config.samples; ++s) {
    PointSet f(joint.universe());
    for (Point p = 0; p < joint.universe(); ++p) {
      if (rng.next() & 1) f.insert(p);
    }
    // Add the least point of each missed trace until F is dense.
    for (Verdict v = is_dense(f, space); !v.holds; v = is_dense(f, space)) {
      f.insert(evaluate_trace(joint, *v.witness).first());
    }
    const std::optional<GeneratorPair> gen = is_weakly_forced(space, f);
    json sample = {{"dense_set", points_json(f)}, {"generator", nullptr}};
    if (gen) {
      sample["generator"] = {{"phi", condition_to_json(gen->phi)},
                             {"eps", condition_to_json(gen->eps)}};
      generators.push_back(*gen);
      dense_sets.push_back(f);
    }
    samples.push_back(std::move(sample));
  }
  const Claim4Report c4 = verify_claim4(space, generators, dense_sets);
  json w = {{"status", std::string(claim4_status_name(c4.status))}};
  if (c4.pair) w["pair"] = {c4.pair->first, c4.pair->second};
  if (c4.joint) w["joint"] = condition_to_json(*c4.joint);
  if (c4.point) w["point"] = *c4.point;
  out["claim4"] = predicate("claim4", c4.passed(), std::move(w));
  out["samples"] = std::move(samples);
  ok = ok && c4.passed();
  return out;
}

}  // namespace

json LabConfig::to_json() const {
  json j = {{"commands", commands},  {"source", source},       {"mu_B", mu_b},
            {"mu_D", mu_d},          {"t", t},                 {"depth", depth},
            {"budget", budget},      {"size_I", size_i},       {"m_max", m_max},
            {"cap", cap ? cap : size_i}, {"samples", samples}, {"solvers", solvers},
            {"seed", seed}};
  if (source == "file") j["family_path"] = family_path.string();
  if (source == "random") {
    j["n"] = n;
    j["verify_depth"] = verify_depth ? verify_depth : 2 * depth;
  }
  if (family_out) j["family_out"] = family_out->string();
  return j;
}

LabConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw UsageError("/: config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) throw UsageError("/" + key + ": unknown key");
  }
  LabConfig c;
  if (!j.contains("commands")) throw UsageError("/commands: missing");
  c.commands = get_list(j, "commands", kCommands);
  if (c.commands.empty()) throw UsageError("/commands: no command requested");
  if (j.contains("source")) c.source = get_string(j, "source");
  if (c.source == "generate") c.source = "product";
  if (c.source != "product" && c.source != "random" && c.source != "file") {
    throw UsageError("/source: expected product, random or file");
  }
  if (j.contains("mu_B")) c.mu_b = get_size(j, "mu_B");
  if (j.contains("mu_C")) {
    const std::size_t mu_c = get_size(j, "mu_C");
    if (j.contains("mu_B") && mu_c != c.mu_b) {
      throw UsageError("/mu_C: conflicts with mu_B (the C-block is the B-block)");
    }
    c.mu_b = mu_c;
  }
  if (j.contains("mu_D")) c.mu_d = get_size(j, "mu_D");
  if (j.contains("t")) c.t = get_size(j, "t");
  if (j.contains("n")) c.n = get_size(j, "n");
  if (j.contains("verify_depth")) c.verify_depth = get_size(j, "verify_depth");
  if (j.contains("depth")) c.depth = get_size(j, "depth");
  if (j.contains("budget")) c.budget = get_size(j, "budget");
  if (j.contains("size_I")) c.size_i = get_size(j, "size_I");
  if (j.contains("m_max")) c.m_max = get_size(j, "m_max");
  if (j.contains("cap")) c.cap = get_size(j, "cap");
  if (j.contains("samples")) c.samples = get_size(j, "samples");
  if (j.contains("solvers")) c.solvers = get_list(j, "solvers", kSolvers);
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw UsageError("/seed: expected a u64");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("family_path")) c.family_path = base_dir / get_string(j, "family_path");
  if (j.contains("family_out")) c.family_out = base_dir / get_string(j, "family_out");

  if (c.t == 0) throw UsageError("/t: must be >= 1");
  if (c.depth == 0) throw UsageError("/depth: must be >= 1");
  if (c.size_i < 2) throw UsageError("/size_I: must be >= 2");
  if (c.m_max == 0) throw UsageError("/m_max: must be >= 1");
  if (c.source == "file" && c.family_path.empty()) {
    throw UsageError("/family_path: required for source file");
  }
  if (c.source == "random" && c.n == 0) throw UsageError("/n: required for source random");
  const bool needs_split =
      std::any_of(c.commands.begin(), c.commands.end(),
                  [](const auto& cmd) { return cmd == "verify-claims" || cmd == "solve"; });
  if (c.source != "file") {
    if (c.mu_d == 0) throw UsageError("/mu_D: must be >= 1");
  }
  if (c.source != "file" && needs_split) {
    const std::size_t need = c.size_i + c.size_i * (c.size_i - 1) / 2 * c.m_max;
    if (c.mu_d < need) {
      throw UsageError("sizing: mu_D = " + std::to_string(c.mu_d) + " labels, but |I| = " +
                       std::to_string(c.size_i) + " and m_max = " +
                       std::to_string(c.m_max) + " need " + std::to_string(need));
    }
  }
  return c;
}

LabConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(path.string() + ": cannot open config");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

LabRun run_lab(const LabConfig& config) {
  LabRun run;
  run.report = {{"config", config.to_json()}, {"results", json::array()}};
  json& results = run.report["results"];

  bool usage = false;
  bool failed = false;
  std::optional<Seed> seed;
  std::optional<Construction> con;
  std::optional<TraceSpace> space;
  std::string setup_error;
  try {
    seed = make_seed(config);
    const bool needs_construction =
        std::any_of(config.commands.begin(), config.commands.end(), [](const auto& c) {
          return c == "verify-claims" || c == "solve";
        });
    if (needs_construction) {
      con.emplace(seed->c_block, seed->d_block, config.size_i, config.m_max);
      space.emplace(assemble_space(con->c_block(), con->e_block(), config.depth, config.t));
    }
  } catch (const CapacityError& e) {
    setup_error = std::string("capacity: ") + e.what();
  } catch (const Error& e) {
    setup_error = e.what();
    usage = true;
  }

  for (const std::string& command : config.commands) {
    json r = {{"command", command}};
    if (!setup_error.empty()) {
      r["status"] = "error";
      r["error"] = setup_error;
      results.push_back(std::move(r));
      failed = true;
      continue;
    }
    bool ok = true;
    try {
      json body;
      if (command == "gen") {
        body = run_gen(config, *seed, ok);
      } else if (command == "verify-claims") {
        body = run_claims(config, *con, *space, ok);
      } else if (command == "solve") {
        body = run_solve(config, *con, *space, ok);
      } else {
        body = run_forced(config, *seed, ok);
      }
      r.update(body);
      r["status"] = ok ? "pass" : "fail";
      failed = failed || !ok;
    } catch (const SizingError& e) {
      r["status"] = "error";
      r["error"] = std::string("sizing: ") + e.what();
      usage = true;
    } catch (const CapacityError& e) {
      r["status"] = "error";
      r["error"] = std::string("capacity: ") + e.what();
      failed = true;
    } catch (const Error& e) {
      r["status"] = "error";
      r["error"] = e.what();
      failed = true;
    }
    results.push_back(std::move(r));
  }
  run.report["passed"] = !usage && !failed;
  run.exit_code = usage ? 2 : (failed ? 1 : 0);
  return run;
}

std::string serialize_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace resolab
