#ifndef RESOLAB_DELTA_SYSTEM_HPP
#define RESOLAB_DELTA_SYSTEM_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "resolab/condition.hpp"

namespace resolab {

using FiniteSet = std::vector<int>;  // sorted, distinct

// Members listed by index; any two of them intersect exactly in `core`.
struct Sunflower {
  FiniteSet core;
  std::vector<std::size_t> petals;

  friend bool operator==(const Sunflower&, const Sunflower&) = default;
};

inline constexpr std::size_t kSunflowerMaxSets = 64;
inline constexpr std::size_t kSunflowerMaxSetSize = 8;

// A sunflower with exactly r members if any sunflower with >= r members
// exists. Cores are tried in (size, lexicographic) order among the pairwise
// intersections, petal sets in index order. PreconditionError for r < 2,
// CapacityError past kSunflowerMaxSets sets or kSunflowerMaxSetSize elements.
// Input sets need not be sorted; duplicates inside a set are ignored.
std::optional<Sunflower> find_delta_system(const std::vector<FiniteSet>& sets,
                                           std::size_t r);

// True iff the listed members pairwise intersect exactly in the core.
bool is_sunflower(const std::vector<FiniteSet>& sets, const Sunflower& flower);

// First (i, j), i < j in lexicographic order, with compatible conditions.
std::optional<std::pair<std::size_t, std::size_t>> find_compatible_pair(
    const std::vector<Condition>& conds);

}  // namespace resolab

#endif  // RESOLAB_DELTA_SYSTEM_HPP
