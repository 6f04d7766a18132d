#include "resolab/condition.hpp"

#include <algorithm>

#include "resolab/errors.hpp"
#include "resolab/family.hpp"

namespace resolab {

Condition::Condition(std::initializer_list<std::pair<std::string, int>> bindings) {
  std::vector<Binding> raw;
  raw.reserve(bindings.size());
  for (const auto& [label, value] : bindings) {
    if (value != 0 && value != 1) {
      throw PreconditionError("condition value for '" + label + "' must be 0 or 1");
    }
    raw.emplace_back(label, static_cast<std::uint8_t>(value));
  }
  *this = from_bindings(std::move(raw));
}

Condition Condition::from_bindings(std::vector<Binding> bindings) {
  std::sort(bindings.begin(), bindings.end());
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    if (bindings[i].second > 1) {
      throw PreconditionError("condition value for '" + bindings[i].first +
                              "' must be 0 or 1");
    }
    if (i > 0 && bindings[i].first == bindings[i - 1].first) {
      throw PreconditionError("label '" + bindings[i].first + "' bound twice");
    }
  }
  Condition c;
  c.bindings_ = std::move(bindings);
  return c;
}

std::optional<int> Condition::get(const std::string& label) const {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), label,
      [](const Binding& b, const std::string& l) { return b.first < l; });
  if (it == bindings_.end() || it->first != label) return std::nullopt;
  return it->second;
}

bool Condition::is_sub_of(const Condition& other) const {
  return std::includes(other.bindings_.begin(), other.bindings_.end(),
                       bindings_.begin(), bindings_.end());
}

std::string Condition::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    if (i > 0) s += ", ";
    s += bindings_[i].first + "->" + std::to_string(bindings_[i].second);
  }
  return s + "}";
}

Condition extend(const Condition& cond, const std::string& label, int value) {
  if (cond.binds(label)) {
    throw PreconditionError("extend: label '" + label + "' is already bound");
  }
  if (value != 0 && value != 1) {
    throw PreconditionError("extend: value must be 0 or 1");
  }
  auto bindings = cond.bindings();
  bindings.emplace_back(label, static_cast<std::uint8_t>(value));
  return Condition::from_bindings(std::move(bindings));
}

std::optional<Condition> compatible(const Condition& c1, const Condition& c2) {
  std::vector<Condition::Binding> merged;
  merged.reserve(c1.depth() + c2.depth());
  auto a = c1.bindings().begin();
  auto b = c2.bindings().begin();
  while (a != c1.bindings().end() && b != c2.bindings().end()) {
    if (a->first < b->first) {
      merged.push_back(*a++);
    } else if (b->first < a->first) {
      merged.push_back(*b++);
    } else {
      if (a->second != b->second) return std::nullopt;
      merged.push_back(*a);
      ++a;
      ++b;
    }
  }
  merged.insert(merged.end(), a, c1.bindings().end());
  merged.insert(merged.end(), b, c2.bindings().end());
  return Condition::from_bindings(std::move(merged));
}

std::optional<Condition> compatible(const PartitionFamily& family,
                                    const Condition& c1, const Condition& c2) {
  for (const Condition* c : {&c1, &c2}) {
    for (const auto& binding : c->bindings()) {
      if (!family.has(binding.first)) {
        throw DomainError("compatible: label '" + binding.first +
                          "' is not in the family");
      }
    }
  }
  return compatible(c1, c2);
}

}  // namespace resolab
