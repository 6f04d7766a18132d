#include "resolab/trace.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "resolab/errors.hpp"
#include "resolab/parallel.hpp"

namespace resolab {
namespace {

// Walks extensions of `prefix` using pool positions >= start. `traces[k]` is
// scratch space for depth k; traces[prefix.size()] holds the prefix trace.
bool walk_from(const PartitionFamily& family, std::span<const std::uint32_t> pool,
               std::size_t start, std::vector<Literal>& prefix,
               std::vector<PointSet>& traces, std::size_t max_depth,
               const ConditionVisitor& visit) {
  const std::size_t depth = prefix.size();
  if (depth >= max_depth) return true;
  const PointSet& parent = traces[depth];
  PointSet& child = traces[depth + 1];
  for (std::size_t pos = start; pos < pool.size(); ++pos) {
    for (std::uint8_t v = 0; v < 2; ++v) {
      const PartitionFamily::Entry& e = family[pool[pos]];
      child.assign_intersection(parent, e.partition.side(v));
      prefix.push_back(Literal{pool[pos], v});
      const Visit action = visit(prefix, child);
      bool keep_going = true;
      if (action == Visit::kStop) {
        keep_going = false;
      } else if (action == Visit::kDescend) {
        keep_going = walk_from(family, pool, pos + 1, prefix, traces, max_depth, visit);
      }
      prefix.pop_back();
      if (!keep_going) return false;
    }
  }
  return true;
}

}  // namespace

void evaluate_trace_into(const PartitionFamily& family,
                         std::span<const Literal> literals, PointSet& out) {
  const std::size_t n = family.universe();
  if (literals.empty()) {
    out = PointSet::full(n);
    return;
  }
  if (out.universe() != n) out = PointSet(n);
  auto dst = out.words();
  const std::size_t k = literals.size();
  // Gather side pointers once; the word loop is then a flat AND reduction.
  constexpr std::size_t kInline = 16;
  const PointSet::Word* inline_sides[kInline];
  std::vector<const PointSet::Word*> heap_sides;
  const PointSet::Word** sides = inline_sides;
  if (k > kInline) {
    heap_sides.resize(k);
    sides = heap_sides.data();
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (literals[i].index >= family.size()) {
      throw DomainError("literal index outside family");
    }
    sides[i] = family[literals[i].index].partition.side(literals[i].value).words().data();
  }
  // Blocked so each destination chunk stays in L1 across the k passes.
  constexpr std::size_t kBlock = 128;
  const std::size_t words = dst.size();
  PointSet::Word* out_words = dst.data();
  for (std::size_t lo = 0; lo < words; lo += kBlock) {
    const std::size_t hi = std::min(words, lo + kBlock);
    if (k == 1) {
      std::copy(sides[0] + lo, sides[0] + hi, out_words + lo);
      continue;
    }
    const PointSet::Word* a = sides[0];
    const PointSet::Word* b = sides[1];
    for (std::size_t w = lo; w < hi; ++w) out_words[w] = a[w] & b[w];
    for (std::size_t i = 2; i < k; ++i) {
      const PointSet::Word* src = sides[i];
      for (std::size_t w = lo; w < hi; ++w) out_words[w] &= src[w];
    }
  }
}

PointSet evaluate_trace(const PartitionFamily& family,
                        std::span<const Literal> literals) {
  PointSet out(family.universe());
  evaluate_trace_into(family, literals, out);
  return out;
}

PointSet evaluate_trace(const PartitionFamily& family, const Condition& cond) {
  return evaluate_trace(family, family.resolve(cond));
}

bool walk_conditions(const PartitionFamily& family,
                     std::span<const std::uint32_t> pool, std::size_t max_depth,
                     const ConditionVisitor& visit) {
  std::vector<Literal> prefix;
  std::vector<PointSet> traces(max_depth + 1);
  traces[0] = PointSet::full(family.universe());
  const Visit root = visit(prefix, traces[0]);
  if (root == Visit::kStop) return false;
  if (root == Visit::kPrune) return true;
  return walk_from(family, pool, 0, prefix, traces, max_depth, visit);
}

std::vector<std::uint32_t> all_indices(const PartitionFamily& family) {
  std::vector<std::uint32_t> out(family.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint32_t>(i);
  return out;
}

std::optional<std::vector<Literal>> find_first_failure(
    const PartitionFamily& family, std::span<const std::uint32_t> pool,
    const ScanOptions& options, const TracePredicate& fails) {
  const PointSet root = PointSet::full(family.universe());
  if (fails({}, root)) return std::vector<Literal>{};
  if (options.max_depth == 0 || pool.empty()) return std::nullopt;

  // Branch b fixes the first literal to (pool[b / 2], b % 2); branches are
  // disjoint and their concatenation in b order is the sequential walk.
  const std::size_t branches = 2 * pool.size();
  std::vector<std::optional<std::vector<Literal>>> found(branches);
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};

  parallel_for(branches, [&](std::size_t b) {
    if (b > best.load()) return;
    const std::size_t pos = b / 2;
    const auto v = static_cast<std::uint8_t>(b % 2);
    std::vector<Literal> prefix{Literal{pool[pos], v}};
    std::vector<PointSet> traces(options.max_depth + 1);
    traces[1].assign_intersection(root, family[pool[pos]].partition.side(v));
    auto check = [&](std::span<const Literal> lits, const PointSet& trace) -> Visit {
      if (b > best.load()) return Visit::kStop;
      if (options.skip_empty && trace.empty()) return Visit::kPrune;
      if (fails(lits, trace)) {
        found[b] = std::vector<Literal>(lits.begin(), lits.end());
        return Visit::kStop;
      }
      return Visit::kDescend;
    };
    if (check(prefix, traces[1]) == Visit::kDescend) {
      walk_from(family, pool, pos + 1, prefix, traces, options.max_depth, check);
    }
    if (found[b]) {
      std::size_t cur = best.load();
      while (b < cur && !best.compare_exchange_weak(cur, b)) {
      }
    }
  });

  for (auto& f : found) {
    if (f) return std::move(*f);
  }
  return std::nullopt;
}

std::size_t shard_count(std::size_t pool_size) { return 1 + 2 * pool_size; }

void walk_conditions_sharded(const PartitionFamily& family,
                             std::span<const std::uint32_t> pool,
                             std::size_t max_depth, const ShardVisitor& visit) {
  const PointSet root = PointSet::full(family.universe());
  if (visit(0, {}, root) != Visit::kDescend) return;
  if (max_depth == 0) return;
  parallel_for(2 * pool.size(), [&](std::size_t b) {
    const std::size_t shard = b + 1;
    const std::size_t pos = b / 2;
    const auto v = static_cast<std::uint8_t>(b % 2);
    std::vector<Literal> prefix{Literal{pool[pos], v}};
    std::vector<PointSet> traces(max_depth + 1);
    traces[1].assign_intersection(root, family[pool[pos]].partition.side(v));
    auto forward = [&](std::span<const Literal> lits, const PointSet& trace) {
      return visit(shard, lits, trace);
    };
    if (forward(prefix, traces[1]) == Visit::kDescend) {
      walk_from(family, pool, pos + 1, prefix, traces, max_depth, forward);
    }
  });
}

std::uint64_t condition_count(std::size_t pool_size, std::size_t max_depth) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(pool_size, k)
  for (std::size_t k = 0; k <= max_depth && k <= pool_size; ++k) {
    total += binom << k;
    binom = binom * (pool_size - k) / (k + 1);
  }
  return total;
}

}  // namespace resolab
