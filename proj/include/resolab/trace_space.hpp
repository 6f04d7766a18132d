#ifndef RESOLAB_TRACE_SPACE_HPP
#define RESOLAB_TRACE_SPACE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resolab/condition.hpp"
#include "resolab/family.hpp"
#include "resolab/point_set.hpp"

namespace resolab {

// Bounded-depth finitization of the topology generated by a family of
// 2-partitions: the basic open sets are the traces of conditions of depth at
// most `depth`, and `threshold` stands in for the cardinal in "kappa-dense".
class TraceSpace {
 public:
  // PreconditionError unless 1 <= depth <= family.size() and threshold >= 1.
  TraceSpace(PartitionFamily family, std::size_t depth, std::size_t threshold = 1);

  const PartitionFamily& family() const { return family_; }
  std::size_t depth() const { return depth_; }
  std::size_t threshold() const { return threshold_; }
  std::size_t universe() const { return family_.universe(); }

 private:
  PartitionFamily family_;
  std::size_t depth_;
  std::size_t threshold_;
};

// Outcome of a predicate; `witness` is the least failing condition in walk
// order when the predicate does not hold.
struct Verdict {
  bool holds = false;
  std::optional<Condition> witness;
};

// D meets every nonempty basic trace.
Verdict is_dense(const PointSet& d, const TraceSpace& space);
// |D ∩ trace| >= space.threshold() for every nonempty basic trace.
Verdict is_t_dense(const PointSet& d, const TraceSpace& space);

using ExtensionMap = std::vector<std::pair<Condition, Condition>>;

struct NowhereDenseResult {
  bool holds = false;
  // Nonempty basic trace none of whose extensions within budget avoids N.
  std::optional<Condition> failing;
  // On success: for every nonempty basic eps (walk order) an eps' ⊇ eps of
  // depth <= depth + budget with a nonempty trace disjoint from N. The
  // shortest extension is chosen, ties broken by walk order.
  ExtensionMap witnesses;
};

// PreconditionError when depth + budget exceeds the family size.
NowhereDenseResult is_nowhere_dense(const PointSet& n, const TraceSpace& space,
                                    std::size_t budget);

// Re-checks an extension map against the definition: every nonempty basic
// condition is covered and each image is a valid extension.
Verdict replay_nowhere_dense(const PointSet& n, const TraceSpace& space,
                             std::size_t budget, const ExtensionMap& witnesses);

// Minimum size of a nonempty basic trace.
std::size_t dispersion(const TraceSpace& space);

struct MosaicPiece {
  Condition condition;
  std::string dense_id;

  friend bool operator==(const MosaicPiece&, const MosaicPiece&) = default;
};

struct Mosaic {
  std::vector<MosaicPiece> pieces;
  bool maximal = false;
  // First basic condition (walk order) whose nonempty trace misses every
  // piece; present iff !maximal.
  std::optional<Condition> extension;
};

// Validates the pieces (nonempty, depth <= d, pairwise disjoint) and decides
// maximality. ValidationError names the offending piece or pair.
Mosaic build_mosaic(const TraceSpace& space, std::vector<MosaicPiece> assignment);

// Union over pieces of trace ∩ assigned dense set. DomainError on unknown ids.
PointSet mosaic_union(const TraceSpace& space, const Mosaic& mosaic,
                      const std::map<std::string, PointSet>& dense_sets);

// A D-block condition and a C-block condition whose joint trace sits inside F.
struct GeneratorPair {
  Condition phi;
  Condition eps;

  friend bool operator==(const GeneratorPair&, const GeneratorPair&) = default;
};

// Searches conditions over the D- and C-tagged partitions of the space
// (combined depth <= space.depth()) for a nonempty trace contained in F.
// PreconditionError if F is not dense.
std::optional<GeneratorPair> is_weakly_forced(const TraceSpace& space,
                                              const PointSet& f);
// Same containment test over an explicit candidate list, first match wins.
std::optional<GeneratorPair> first_contained_generator(
    const TraceSpace& space, const std::vector<GeneratorPair>& candidates,
    const PointSet& f);

inline constexpr std::size_t kForcedMaxPoints = 20;

struct ForcedResult {
  bool forced = false;
  // A dense set including no mosaic over the collection.
  std::optional<PointSet> counterexample;
  std::size_t minimal_dense_sets = 0;
};

// Every dense subset includes the union of some maximal mosaic over
// `collection`. Exhaustive over subsets; CapacityError above kForcedMaxPoints.
ForcedResult is_D_forced(const TraceSpace& space,
                         const std::vector<PointSet>& collection);

}  // namespace resolab

#endif  // RESOLAB_TRACE_SPACE_HPP
