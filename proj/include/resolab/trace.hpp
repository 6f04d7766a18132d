#ifndef RESOLAB_TRACE_HPP
#define RESOLAB_TRACE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "resolab/condition.hpp"
#include "resolab/family.hpp"
#include "resolab/point_set.hpp"

namespace resolab {

// B[cond]: intersection of the chosen sides; the empty condition gives the
// whole ground set. DomainError on unknown labels.
PointSet evaluate_trace(const PartitionFamily& family, const Condition& cond);
PointSet evaluate_trace(const PartitionFamily& family,
                        std::span<const Literal> literals);
// Allocation-free variant; `out` is resized to the family's universe.
void evaluate_trace_into(const PartitionFamily& family,
                         std::span<const Literal> literals, PointSet& out);

enum class Visit { kDescend, kPrune, kStop };

// Depth-first walk over every condition built from partitions in `pool`
// (indices into `family`, visited in pool order) with depth <= max_depth.
// Conditions are emitted in preorder: a condition precedes its extensions,
// lower pool positions come first, value 0 before 1. The visitor receives
// the literals and the trace. Returns false iff the visitor stopped the walk.
using ConditionVisitor =
    std::function<Visit(std::span<const Literal>, const PointSet&)>;
bool walk_conditions(const PartitionFamily& family,
                     std::span<const std::uint32_t> pool, std::size_t max_depth,
                     const ConditionVisitor& visit);

// Every partition index, in family order.
std::vector<std::uint32_t> all_indices(const PartitionFamily& family);

struct ScanOptions {
  std::size_t max_depth = 0;
  // Skip empty traces and their extensions without calling the predicate.
  bool skip_empty = true;
};

// Finds the first condition in walk order for which `fails` returns true.
// Top-level branches are spread over jobs() workers; the answer is the one
// the sequential walk would produce.
using TracePredicate =
    std::function<bool(std::span<const Literal>, const PointSet&)>;
std::optional<std::vector<Literal>> find_first_failure(
    const PartitionFamily& family, std::span<const std::uint32_t> pool,
    const ScanOptions& options, const TracePredicate& fails);

// Shard 0 is the root condition and shard 1 + b the subtree whose first
// literal is (pool[b / 2], b % 2). Shards run on jobs() workers and visit in
// walk order internally, so per-shard results concatenated in shard order
// reproduce the sequential walk. Pruning or stopping the root skips all
// other shards; kStop elsewhere ends only the current shard.
using ShardVisitor = std::function<Visit(std::size_t shard,
                                         std::span<const Literal>, const PointSet&)>;
std::size_t shard_count(std::size_t pool_size);
void walk_conditions_sharded(const PartitionFamily& family,
                             std::span<const std::uint32_t> pool,
                             std::size_t max_depth, const ShardVisitor& visit);

// Number of conditions of depth <= max_depth over a pool of size m:
// sum_k C(m, k) 2^k.
std::uint64_t condition_count(std::size_t pool_size, std::size_t max_depth);

}  // namespace resolab

#endif  // RESOLAB_TRACE_HPP
