#include "resolab/family_io.hpp"

#include <fstream>
#include <sstream>

#include "resolab/errors.hpp"

namespace resolab {
namespace {

[[noreturn]] void schema_fail(const std::string& pointer, const std::string& what) {
  throw SchemaError((pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

const nlohmann::json& member(const nlohmann::json& obj, const std::string& key,
                             const std::string& pointer) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(pointer + "/" + key, "missing");
  return *it;
}

}  // namespace

nlohmann::json family_to_json(const PartitionFamily& family) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& e : family.entries()) {
    parts.push_back({{"id", e.label},
                     {"block", std::string(block_name(e.block))},
                     {"side0", e.partition.side0().to_vector()}});
  }
  return {{"n", family.universe()}, {"partitions", std::move(parts)}};
}

PartitionFamily family_from_json(const nlohmann::json& j) {
  if (!j.is_object()) schema_fail("", "family must be an object");
  const auto& n_json = member(j, "n", "");
  if (!n_json.is_number_integer() || n_json.get<long long>() < 1) {
    schema_fail("/n", "must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(n_json.get<long long>());
  const auto& parts = member(j, "partitions", "");
  if (!parts.is_array()) schema_fail("/partitions", "must be an array");

  PartitionFamily family(n);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string at = "/partitions/" + std::to_string(i);
    const auto& p = parts[i];
    if (!p.is_object()) schema_fail(at, "must be an object");
    const auto& id = member(p, "id", at);
    if (!id.is_string()) schema_fail(at + "/id", "must be a string");
    const auto& block = member(p, "block", at);
    if (!block.is_string()) schema_fail(at + "/block", "must be a string");
    Block tag;
    try {
      tag = parse_block(block.get<std::string>());
    } catch (const DomainError& e) {
      schema_fail(at + "/block", e.what());
    }
    const auto& side0 = member(p, "side0", at);
    if (!side0.is_array()) schema_fail(at + "/side0", "must be an array");
    PointSet s(n);
    for (std::size_t k = 0; k < side0.size(); ++k) {
      const std::string pt = at + "/side0/" + std::to_string(k);
      if (!side0[k].is_number_integer()) schema_fail(pt, "must be an integer");
      const long long v = side0[k].get<long long>();
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        schema_fail(pt, "point " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
      }
      s.insert(static_cast<Point>(v));
    }
    try {
      family.add(id.get<std::string>(), TwoPartition(std::move(s)), tag);
    } catch (const PreconditionError& e) {
      schema_fail(at + "/id", e.what());
    }
  }
  return family;
}

std::string serialize_family(const PartitionFamily& family) {
  return family_to_json(family).dump() + "\n";
}

PartitionFamily load_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open family file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("/: " + path.string() + " is not valid JSON: " + e.what());
  }
  return family_from_json(j);
}

void save_family(const PartitionFamily& family, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write family file '" + path.string() + "'");
  out << serialize_family(family);
}

nlohmann::json condition_to_json(const Condition& cond) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [label, value] : cond.bindings()) j[label] = static_cast<int>(value);
  return j;
}

Condition condition_from_json(const nlohmann::json& j, const std::string& pointer) {
  if (!j.is_object()) schema_fail(pointer, "condition must be an object");
  std::vector<Condition::Binding> bindings;
  for (const auto& [label, value] : j.items()) {
    if (!value.is_number_integer() || (value.get<int>() != 0 && value.get<int>() != 1)) {
      schema_fail(pointer + "/" + label, "must be 0 or 1");
    }
    bindings.emplace_back(label, static_cast<std::uint8_t>(value.get<int>()));
  }
  return Condition::from_bindings(std::move(bindings));
}

}  // namespace resolab
