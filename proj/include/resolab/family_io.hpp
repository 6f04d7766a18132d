#ifndef RESOLAB_FAMILY_IO_HPP
#define RESOLAB_FAMILY_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "resolab/condition.hpp"
#include "resolab/family.hpp"

namespace resolab {

// {"n": int, "partitions": [{"id": string, "block": "B|D|C|E|other",
// "side0": [ints]}]}; side1 is the complement. Schema violations raise
// SchemaError whose message starts with the offending JSON pointer.
nlohmann::json family_to_json(const PartitionFamily& family);
PartitionFamily family_from_json(const nlohmann::json& j);

// Canonical text: sorted keys, ascending side0, compact, trailing newline.
std::string serialize_family(const PartitionFamily& family);

PartitionFamily load_family(const std::filesystem::path& path);
void save_family(const PartitionFamily& family, const std::filesystem::path& path);

// {"label": 0|1, ...}
nlohmann::json condition_to_json(const Condition& cond);
Condition condition_from_json(const nlohmann::json& j, const std::string& pointer = "");

}  // namespace resolab

#endif  // RESOLAB_FAMILY_IO_HPP
