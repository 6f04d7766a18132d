#include "resolab/independence.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "resolab/errors.hpp"
#include "resolab/prng.hpp"
#include "resolab/trace.hpp"

namespace resolab {

Verdict check_independent(const PartitionFamily& family, std::size_t d, std::size_t t) {
  if (d > family.size()) {
    throw PreconditionError("check_independent: depth " + std::to_string(d) +
                            " exceeds family size " + std::to_string(family.size()));
  }
  if (t == 0) return Verdict{true, std::nullopt};
  const auto pool = all_indices(family);
  auto hit = find_first_failure(
      family, pool, ScanOptions{.max_depth = d, .skip_empty = false},
      [t](std::span<const Literal>, const PointSet& trace) { return !trace.count_at_least(t); });
  if (!hit) return Verdict{true, std::nullopt};
  return Verdict{false, family.condition(*hit)};
}

SeparationResult check_separating(const PartitionFamily& family) {
  const std::size_t n = family.universe();
  const std::size_t sig_words = PointSet::word_count(family.size());
  // signature[p] = bit vector of the sides p lies on.
  std::vector<std::uint64_t> sig(n * sig_words, 0);
  for (std::size_t i = 0; i < family.size(); ++i) {
    family[i].partition.side1().for_each([&](Point p) {
      sig[p * sig_words + i / 64] |= std::uint64_t{1} << (i % 64);
    });
  }
  std::vector<Point> order(n);
  std::iota(order.begin(), order.end(), Point{0});
  auto sig_of = [&](Point p) {
    return std::span<const std::uint64_t>(sig.data() + p * sig_words, sig_words);
  };
  std::stable_sort(order.begin(), order.end(), [&](Point a, Point b) {
    auto sa = sig_of(a);
    auto sb = sig_of(b);
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  });
  SeparationResult result;
  // Within a run of equal signatures the stable sort keeps points ascending,
  // so the run's first two entries are its least pair.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto a = sig_of(order[i]);
    auto b = sig_of(order[i + 1]);
    const bool same_run_start =
        std::equal(a.begin(), a.end(), b.begin()) &&
        (i == 0 || !std::equal(a.begin(), a.end(), sig_of(order[i - 1]).begin()));
    if (same_run_start) {
      std::pair<Point, Point> pair{order[i], order[i + 1]};
      if (!result.unseparated || pair < *result.unseparated) result.unseparated = pair;
    }
  }
  result.separating = !result.unseparated.has_value();
  return result;
}

PartitionFamily product_family(std::size_t mu_b, std::size_t mu_d, std::size_t t) {
  const std::size_t mu = mu_b + mu_d;
  if (t == 0) throw PreconditionError("product_family: t must be at least 1");
  if (mu >= 63 || (std::size_t{1} << mu) > kMaxGeneratedPoints / t) {
    throw CapacityError("product_family: t * 2^" + std::to_string(mu) +
                        " points exceeds the capacity of " +
                        std::to_string(kMaxGeneratedPoints));
  }
  const std::size_t cells = std::size_t{1} << mu;
  const std::size_t n = t * cells;
  PartitionFamily family(n);
  for (std::size_t i = 0; i < mu; ++i) {
    PointSet side0(n);
    for (std::size_t p = 0; p < n; ++p) {
      if (((p & (cells - 1)) >> i & 1U) == 0) side0.insert(static_cast<Point>(p));
    }
    const bool is_b = i < mu_b;
    family.add((is_b ? "b" : "d") + std::to_string(is_b ? i : i - mu_b),
               TwoPartition(std::move(side0)), is_b ? Block::kB : Block::kD);
  }
  return family;
}

RandomFamilyResult random_family(std::size_t mu, std::size_t n, std::size_t d,
                                 std::size_t t, std::uint64_t seed, std::size_t mu_b) {
  if (n == 0 || n > kMaxGeneratedPoints) {
    throw CapacityError("random_family: ground set of " + std::to_string(n) +
                        " points outside [1, " + std::to_string(kMaxGeneratedPoints) + "]");
  }
  if (mu_b > mu) throw PreconditionError("random_family: mu_b exceeds mu");
  SplitMix64 rng(seed);
  PartitionFamily family(n);
  for (std::size_t i = 0; i < mu; ++i) {
    PointSet side0(n);
    for (auto& w : side0.words()) w = rng.next();
    // Clear the tail bits past n.
    side0 &= PointSet::full(n);
    const bool is_b = i < mu_b;
    family.add((is_b ? "b" : "d") + std::to_string(is_b ? i : i - mu_b),
               TwoPartition(std::move(side0)), is_b ? Block::kB : Block::kD);
  }
  Verdict v = check_independent(family, std::min(d, mu), t);
  return RandomFamilyResult{std::move(family), v.holds, std::move(v.witness)};
}

Condition1Result check_condition1(const PartitionFamily& c_block,
                                  const PartitionFamily& d_block, std::size_t d,
                                  std::size_t t) {
  if (c_block.universe() != d_block.universe()) {
    throw DomainError("check_condition1: blocks over different ground sets");
  }
  if (t == 0) return Condition1Result{true, std::nullopt};

  struct CTrace {
    std::vector<Literal> lits;
    PointSet trace;
  };
  std::vector<CTrace> c_traces;
  walk_conditions(c_block, all_indices(c_block), std::min(d, c_block.size()),
                  [&](std::span<const Literal> lits, const PointSet& trace) {
                    c_traces.push_back(CTrace{{lits.begin(), lits.end()}, trace});
                    return Visit::kDescend;
                  });

  const auto pool = all_indices(d_block);
  const std::size_t shards = shard_count(pool.size());
  std::vector<std::optional<std::pair<std::vector<Literal>, std::vector<Literal>>>> failing(shards);
  std::atomic<std::size_t> first{std::numeric_limits<std::size_t>::max()};
  walk_conditions_sharded(
      d_block, pool, std::min(d, d_block.size()),
      [&](std::size_t shard, std::span<const Literal> lits, const PointSet& trace) {
        if (shard > first.load()) return Visit::kStop;
        for (const CTrace& c : c_traces) {
          if (trace.intersection_count(c.trace) < t) {
            failing[shard].emplace(std::vector<Literal>(lits.begin(), lits.end()), c.lits);
            std::size_t cur = first.load();
            while (shard < cur && !first.compare_exchange_weak(cur, shard)) {
            }
            return Visit::kStop;
          }
        }
        return Visit::kDescend;
      });
  for (auto& f : failing) {
    if (f) {
      return Condition1Result{
          false, std::make_pair(d_block.condition(f->first), c_block.condition(f->second))};
    }
  }
  return Condition1Result{true, std::nullopt};
}

}  // namespace resolab
