#ifndef RESOLAB_INDEPENDENCE_HPP
#define RESOLAB_INDEPENDENCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "resolab/condition.hpp"
#include "resolab/family.hpp"
#include "resolab/point_set.hpp"
#include "resolab/trace_space.hpp"

namespace resolab {

// Largest ground set the generators will build.
inline constexpr std::size_t kMaxGeneratedPoints = std::size_t{1} << 22;

// |trace(eps)| >= t for every condition of depth <= d, empty traces included.
// PreconditionError when d exceeds the family size.
Verdict check_independent(const PartitionFamily& family, std::size_t d, std::size_t t);

struct SeparationResult {
  bool separating = false;
  // Least (alpha, beta), alpha < beta, not split by any partition.
  std::optional<std::pair<Point, Point>> unseparated;
};
SeparationResult check_separating(const PartitionFamily& family);

// Points are p = copy * 2^mu + code with code a mu-bit word (mu = mu_b +
// mu_d) and copy < t; partition i holds the points whose code has bit i
// clear on side 0. Labels b0.. (tag B) then d0.. (tag D). Every trace has
// exactly t * 2^(mu - depth) points. CapacityError past kMaxGeneratedPoints.
PartitionFamily product_family(std::size_t mu_b, std::size_t mu_d, std::size_t t);

struct RandomFamilyResult {
  PartitionFamily family;
  bool independent = false;
  // Least failing condition of the depth-d, threshold-t check.
  std::optional<Condition> failing;
};

// mu partitions, each point placed on side 0 or 1 by one SplitMix64 bit
// (word w of partition i is the (i * words + w)-th draw). The first mu_b
// partitions are labelled b0.. and tagged B, the rest d0.. tagged D.
// Verification failure is reported in the result, never thrown.
RandomFamilyResult random_family(std::size_t mu, std::size_t n, std::size_t d,
                                 std::size_t t, std::uint64_t seed, std::size_t mu_b = 0);

struct Condition1Result {
  bool holds = false;
  // (eta over D, eps over C) with |D[eta] ∩ C[eps]| < t.
  std::optional<std::pair<Condition, Condition>> failing;
};

// |D[eta] ∩ C[eps]| >= t for every eta over `d_block` and eps over `c_block`,
// each of depth <= d (clamped to the block size).
Condition1Result check_condition1(const PartitionFamily& c_block,
                                  const PartitionFamily& d_block, std::size_t d,
                                  std::size_t t);

}  // namespace resolab

#endif  // RESOLAB_INDEPENDENCE_HPP
