#include "resolab/trace_space.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <unordered_set>

#include "resolab/errors.hpp"
#include "resolab/trace.hpp"

namespace resolab {
namespace {

void require_universe(const PointSet& s, const TraceSpace& space, const char* what) {
  if (s.universe() != space.universe()) {
    throw DomainError(std::string(what) + ": set over " + std::to_string(s.universe()) +
                      " points, space has " + std::to_string(space.universe()));
  }
}

Verdict scan_basic(const TraceSpace& space, const TracePredicate& fails) {
  const auto pool = all_indices(space.family());
  auto hit = find_first_failure(space.family(), pool,
                                ScanOptions{.max_depth = space.depth(), .skip_empty = true},
                                fails);
  if (!hit) return Verdict{true, std::nullopt};
  return Verdict{false, space.family().condition(*hit)};
}

// Shortest extension of `base` (ties in walk order) within `max_extra` more
// literals whose trace is nonempty and misses `avoid`.
std::optional<std::vector<Literal>> find_extension(const PartitionFamily& family,
                                                   const std::vector<Literal>& base,
                                                   const PointSet& base_trace,
                                                   const PointSet& avoid,
                                                   std::size_t max_extra) {
  if (!base_trace.empty() && !base_trace.intersects(avoid)) return base;
  std::vector<bool> used(family.size(), false);
  for (const Literal& lit : base) used[lit.index] = true;

  std::vector<Literal> extra;
  std::vector<PointSet> traces(max_extra + 1);
  traces[0] = base_trace;
  std::optional<std::vector<Literal>> result;

  // Depth-limited DFS for exactly `goal` extra literals.
  auto dfs = [&](auto&& self, std::size_t start, std::size_t goal) -> bool {
    const std::size_t k = extra.size();
    if (k == goal) {
      if (!traces[k].empty() && !traces[k].intersects(avoid)) {
        std::vector<Literal> all = base;
        all.insert(all.end(), extra.begin(), extra.end());
        std::sort(all.begin(), all.end());
        result = std::move(all);
        return true;
      }
      return false;
    }
    for (std::size_t idx = start; idx < family.size(); ++idx) {
      if (used[idx]) continue;
      for (std::uint8_t v = 0; v < 2; ++v) {
        traces[k + 1] = traces[k] & family[idx].partition.side(v);
        if (traces[k + 1].empty()) continue;
        extra.push_back(Literal{static_cast<std::uint32_t>(idx), v});
        const bool done = self(self, idx + 1, goal);
        extra.pop_back();
        if (done) return true;
      }
    }
    return false;
  };
  for (std::size_t goal = 1; goal <= max_extra; ++goal) {
    if (dfs(dfs, 0, goal)) return result;
  }
  return std::nullopt;
}

}  // namespace

TraceSpace::TraceSpace(PartitionFamily family, std::size_t depth, std::size_t threshold)
    : family_(std::move(family)), depth_(depth), threshold_(threshold) {
  if (depth_ < 1) throw PreconditionError("trace space depth must be at least 1");
  if (depth_ > family_.size()) {
    throw PreconditionError("trace space depth " + std::to_string(depth_) +
                            " exceeds family size " + std::to_string(family_.size()));
  }
  if (threshold_ < 1) throw PreconditionError("trace space threshold must be at least 1");
}

Verdict is_dense(const PointSet& d, const TraceSpace& space) {
  require_universe(d, space, "is_dense");
  return scan_basic(space, [&](std::span<const Literal>, const PointSet& trace) {
    return !trace.intersects(d);
  });
}

Verdict is_t_dense(const PointSet& d, const TraceSpace& space) {
  require_universe(d, space, "is_t_dense");
  const std::size_t t = space.threshold();
  return scan_basic(space, [&](std::span<const Literal>, const PointSet& trace) {
    return trace.intersection_count(d) < t;
  });
}

NowhereDenseResult is_nowhere_dense(const PointSet& n, const TraceSpace& space,
                                    std::size_t budget) {
  require_universe(n, space, "is_nowhere_dense");
  const PartitionFamily& family = space.family();
  if (space.depth() + budget > family.size()) {
    throw PreconditionError("is_nowhere_dense: depth " + std::to_string(space.depth()) +
                            " + budget " + std::to_string(budget) +
                            " exceeds family size " + std::to_string(family.size()));
  }
  const auto pool = all_indices(family);
  const std::size_t shards = shard_count(pool.size());
  std::vector<std::vector<std::pair<std::vector<Literal>, std::vector<Literal>>>> found(shards);
  std::vector<std::optional<std::vector<Literal>>> failing(shards);
  std::atomic<std::size_t> first_fail{std::numeric_limits<std::size_t>::max()};
  const std::size_t limit = space.depth() + budget;

  walk_conditions_sharded(
      family, pool, space.depth(),
      [&](std::size_t shard, std::span<const Literal> lits, const PointSet& trace) {
        if (shard > first_fail.load()) return Visit::kStop;
        if (trace.empty()) return Visit::kPrune;
        std::vector<Literal> base(lits.begin(), lits.end());
        auto ext = find_extension(family, base, trace, n, limit - base.size());
        if (!ext) {
          failing[shard] = std::move(base);
          std::size_t cur = first_fail.load();
          while (shard < cur && !first_fail.compare_exchange_weak(cur, shard)) {
          }
          return Visit::kStop;
        }
        found[shard].emplace_back(std::move(base), std::move(*ext));
        return Visit::kDescend;
      });

  NowhereDenseResult result;
  for (std::size_t s = 0; s < shards; ++s) {
    if (failing[s]) {
      result.failing = family.condition(*failing[s]);
      return result;
    }
  }
  result.holds = true;
  for (auto& shard : found) {
    for (auto& [from, to] : shard) {
      result.witnesses.emplace_back(family.condition(from), family.condition(to));
    }
  }
  return result;
}

Verdict replay_nowhere_dense(const PointSet& n, const TraceSpace& space,
                             std::size_t budget, const ExtensionMap& witnesses) {
  require_universe(n, space, "replay_nowhere_dense");
  std::map<Condition, const Condition*> lookup;
  for (const auto& [from, to] : witnesses) lookup.emplace(from, &to);
  const PartitionFamily& family = space.family();
  const std::size_t limit = space.depth() + budget;

  std::optional<Condition> bad;
  walk_conditions(family, all_indices(family), space.depth(),
                  [&](std::span<const Literal> lits, const PointSet& trace) {
                    if (trace.empty()) return Visit::kPrune;
                    Condition eps = family.condition(lits);
                    auto it = lookup.find(eps);
                    bool ok = it != lookup.end();
                    if (ok) {
                      const Condition& image = *it->second;
                      ok = eps.is_sub_of(image) && image.depth() <= limit;
                      if (ok) {
                        for (const auto& b : image.bindings()) ok = ok && family.has(b.first);
                      }
                      if (ok) {
                        const PointSet t = evaluate_trace(family, image);
                        ok = !t.empty() && !t.intersects(n);
                      }
                    }
                    if (!ok) {
                      bad = std::move(eps);
                      return Visit::kStop;
                    }
                    return Visit::kDescend;
                  });
  if (bad) return Verdict{false, std::move(bad)};
  return Verdict{true, std::nullopt};
}

std::size_t dispersion(const TraceSpace& space) {
  std::size_t best = space.universe();
  walk_conditions(space.family(), all_indices(space.family()), space.depth(),
                  [&](std::span<const Literal>, const PointSet& trace) {
                    if (trace.empty()) return Visit::kPrune;
                    best = std::min(best, trace.count());
                    return Visit::kDescend;
                  });
  return best;
}

Mosaic build_mosaic(const TraceSpace& space, std::vector<MosaicPiece> assignment) {
  const PartitionFamily& family = space.family();
  std::vector<PointSet> traces;
  traces.reserve(assignment.size());
  for (const MosaicPiece& piece : assignment) {
    if (piece.condition.depth() > space.depth()) {
      throw ValidationError("mosaic piece " + piece.condition.to_string() +
                            " deeper than the space depth " + std::to_string(space.depth()));
    }
    PointSet t = evaluate_trace(family, piece.condition);
    if (t.empty()) {
      throw ValidationError("mosaic piece " + piece.condition.to_string() +
                            " has an empty trace");
    }
    traces.push_back(std::move(t));
  }
  PointSet covered(space.universe());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    for (std::size_t j = i + 1; j < traces.size(); ++j) {
      if (traces[i].intersects(traces[j])) {
        throw ValidationError("mosaic pieces " + assignment[i].condition.to_string() +
                              " and " + assignment[j].condition.to_string() + " overlap");
      }
    }
    covered |= traces[i];
  }

  Mosaic mosaic;
  mosaic.pieces = std::move(assignment);
  walk_conditions(family, all_indices(family), space.depth(),
                  [&](std::span<const Literal> lits, const PointSet& trace) {
                    if (trace.empty()) return Visit::kPrune;
                    if (!trace.intersects(covered)) {
                      mosaic.extension = family.condition(lits);
                      return Visit::kStop;
                    }
                    return Visit::kDescend;
                  });
  mosaic.maximal = !mosaic.extension.has_value();
  return mosaic;
}

PointSet mosaic_union(const TraceSpace& space, const Mosaic& mosaic,
                      const std::map<std::string, PointSet>& dense_sets) {
  PointSet out(space.universe());
  for (const MosaicPiece& piece : mosaic.pieces) {
    auto it = dense_sets.find(piece.dense_id);
    if (it == dense_sets.end()) {
      throw DomainError("mosaic_union: unresolved dense-set id '" + piece.dense_id + "'");
    }
    require_universe(it->second, space, "mosaic_union");
    out |= evaluate_trace(space.family(), piece.condition) & it->second;
  }
  return out;
}

namespace {

GeneratorPair split_generator(const PartitionFamily& family, const Condition& joint) {
  std::vector<Condition::Binding> phi;
  std::vector<Condition::Binding> eps;
  for (const auto& b : joint.bindings()) {
    (family[family.index_of(b.first)].block == Block::kD ? phi : eps).push_back(b);
  }
  return GeneratorPair{Condition::from_bindings(std::move(phi)),
                       Condition::from_bindings(std::move(eps))};
}

}  // namespace

std::optional<GeneratorPair> is_weakly_forced(const TraceSpace& space, const PointSet& f) {
  require_universe(f, space, "is_weakly_forced");
  if (!is_dense(f, space).holds) {
    throw PreconditionError("is_weakly_forced: F is not dense");
  }
  const PartitionFamily& family = space.family();
  std::vector<std::uint32_t> pool;
  for (std::uint32_t i = 0; i < family.size(); ++i) {
    if (family[i].block == Block::kD || family[i].block == Block::kC) pool.push_back(i);
  }
  auto hit = find_first_failure(
      family, pool, ScanOptions{.max_depth = space.depth(), .skip_empty = true},
      [&](std::span<const Literal>, const PointSet& trace) { return trace.is_subset_of(f); });
  if (!hit) return std::nullopt;
  return split_generator(family, family.condition(*hit));
}

std::optional<GeneratorPair> first_contained_generator(
    const TraceSpace& space, const std::vector<GeneratorPair>& candidates,
    const PointSet& f) {
  require_universe(f, space, "first_contained_generator");
  for (const GeneratorPair& g : candidates) {
    auto joint = compatible(space.family(), g.phi, g.eps);
    if (!joint) continue;
    const PointSet t = evaluate_trace(space.family(), *joint);
    if (!t.empty() && t.is_subset_of(f)) return g;
  }
  return std::nullopt;
}

ForcedResult is_D_forced(const TraceSpace& space, const std::vector<PointSet>& collection) {
  const std::size_t n = space.universe();
  if (n > kForcedMaxPoints) {
    throw CapacityError("is_D_forced enumerates all subsets; ground set of " +
                        std::to_string(n) + " exceeds the guard of " +
                        std::to_string(kForcedMaxPoints));
  }
  for (const PointSet& d : collection) require_universe(d, space, "is_D_forced");

  using Mask = std::uint32_t;
  std::vector<Mask> traces;
  {
    std::unordered_set<Mask> seen;
    walk_conditions(space.family(), all_indices(space.family()), space.depth(),
                    [&](std::span<const Literal>, const PointSet& trace) {
                      if (trace.empty()) return Visit::kPrune;
                      const auto m = static_cast<Mask>(trace.to_mask());
                      if (seen.insert(m).second) traces.push_back(m);
                      return Visit::kDescend;
                    });
  }
  std::vector<Mask> minimal;
  for (Mask t : traces) {
    bool is_min = true;
    for (Mask u : traces) {
      if (u != t && (u & ~t) == 0) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(t);
  }
  std::vector<Mask> coll;
  for (const PointSet& d : collection) coll.push_back(static_cast<Mask>(d.to_mask()));

  auto dense = [&](Mask f) {
    return std::all_of(minimal.begin(), minimal.end(), [&](Mask t) { return (t & f) != 0; });
  };

  // Disjoint good traces whose union meets every nonempty trace. Branches on
  // the piece covering the first unmet trace; failures are memoized by union.
  auto has_mosaic = [&](Mask f) {
    std::vector<Mask> good;
    for (Mask v : traces) {
      for (Mask d : coll) {
        if ((v & d & ~f) == 0) {
          good.push_back(v);
          break;
        }
      }
    }
    std::unordered_set<Mask> dead;
    auto search = [&](auto&& self, Mask covered) -> bool {
      auto unmet = std::find_if(traces.begin(), traces.end(),
                                [&](Mask t) { return (t & covered) == 0; });
      if (unmet == traces.end()) return true;
      if (dead.contains(covered)) return false;
      for (Mask v : good) {
        if ((v & covered) == 0 && (v & *unmet) != 0 && self(self, covered | v)) return true;
      }
      dead.insert(covered);
      return false;
    };
    return search(search, 0);
  };

  ForcedResult result;
  const Mask limit = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
  // Both "dense" and "includes a mosaic" are upward closed, so inclusion-
  // minimal dense sets decide the question.
  for (Mask f = 0;; ++f) {
    if (dense(f)) {
      bool is_min = true;
      for (Mask rest = f; rest != 0 && is_min; rest &= rest - 1) {
        if (dense(f & ~(rest & (~rest + 1)))) is_min = false;
      }
      if (is_min) {
        ++result.minimal_dense_sets;
        if (!has_mosaic(f)) {
          result.counterexample = PointSet::from_mask(n, f);
          return result;
        }
      }
    }
    if (f == limit) break;
  }
  result.forced = true;
  return result;
}

}  // namespace resolab
