#include "resolab/delta_system.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <set>
#include <string>

#include "resolab/errors.hpp"

namespace resolab {
namespace {

constexpr std::size_t kMaxUniverse = kSunflowerMaxSets * kSunflowerMaxSetSize;
using Bits = std::bitset<kMaxUniverse>;

FiniteSet normalized(FiniteSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

FiniteSet intersect(const FiniteSet& a, const FiniteSet& b) {
  FiniteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::optional<Sunflower> find_delta_system(const std::vector<FiniteSet>& input,
                                           std::size_t r) {
  if (r < 2) throw PreconditionError("find_delta_system: r must be at least 2");
  if (input.size() > kSunflowerMaxSets) {
    throw CapacityError("find_delta_system: " + std::to_string(input.size()) +
                        " sets exceed the guard of " + std::to_string(kSunflowerMaxSets));
  }
  std::vector<FiniteSet> sets;
  sets.reserve(input.size());
  for (const FiniteSet& s : input) {
    sets.push_back(normalized(s));
    if (sets.back().size() > kSunflowerMaxSetSize) {
      throw CapacityError("find_delta_system: a set of size " +
                          std::to_string(sets.back().size()) + " exceeds the guard of " +
                          std::to_string(kSunflowerMaxSetSize));
    }
  }
  if (sets.size() < r) return std::nullopt;

  // Compress the universe so petals fit a fixed-width bitset.
  std::map<int, std::size_t> code;
  for (const FiniteSet& s : sets) {
    for (int x : s) code.emplace(x, 0);
  }
  std::size_t next = 0;
  for (auto& [x, c] : code) c = next++;
  std::vector<Bits> bits(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int x : sets[i]) bits[i].set(code[x]);
  }

  // Any core of a sunflower with >= 2 petals is the intersection of two of
  // its members.
  std::set<FiniteSet> core_set;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      core_set.insert(intersect(sets[i], sets[j]));
    }
  }
  std::vector<FiniteSet> cores(core_set.begin(), core_set.end());
  std::stable_sort(cores.begin(), cores.end(), [](const FiniteSet& a, const FiniteSet& b) {
    return a.size() < b.size();
  });

  for (const FiniteSet& core : cores) {
    Bits core_bits;
    for (int x : core) core_bits.set(code[x]);
    std::vector<std::size_t> members;
    std::vector<Bits> petals;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if ((bits[i] & core_bits) == core_bits) {
        members.push_back(i);
        petals.push_back(bits[i] & ~core_bits);
      }
    }
    if (members.size() < r) continue;

    // r members with pairwise disjoint petals.
    std::vector<std::size_t> chosen;
    auto pack = [&](auto&& self, std::size_t start, const Bits& used) -> bool {
      if (chosen.size() == r) return true;
      if (members.size() - start < r - chosen.size()) return false;
      for (std::size_t k = start; k < members.size(); ++k) {
        if ((petals[k] & used).any()) continue;
        chosen.push_back(k);
        if (self(self, k + 1, used | petals[k])) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (pack(pack, 0, Bits{})) {
      Sunflower flower{core, {}};
      for (std::size_t k : chosen) flower.petals.push_back(members[k]);
      return flower;
    }
  }
  return std::nullopt;
}

bool is_sunflower(const std::vector<FiniteSet>& sets, const Sunflower& flower) {
  const FiniteSet core = normalized(flower.core);
  for (std::size_t a = 0; a < flower.petals.size(); ++a) {
    for (std::size_t b = a + 1; b < flower.petals.size(); ++b) {
      if (flower.petals[a] == flower.petals[b]) return false;
      if (intersect(normalized(sets.at(flower.petals[a])),
                    normalized(sets.at(flower.petals[b]))) != core) {
        return false;
      }
    }
  }
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> find_compatible_pair(
    const std::vector<Condition>& conds) {
  for (std::size_t i = 0; i < conds.size(); ++i) {
    for (std::size_t j = i + 1; j < conds.size(); ++j) {
      if (compatible(conds[i], conds[j])) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace resolab
