#ifndef RESOLAB_CONSTRUCTION_HPP
#define RESOLAB_CONSTRUCTION_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resolab/condition.hpp"
#include "resolab/family.hpp"
#include "resolab/point_set.hpp"
#include "resolab/trace_space.hpp"

namespace resolab {

// Index (a, m) of an E-partition: a = {I[lo], I[hi]} with lo < hi, so
// I[lo] is a- and I[hi] is a+ in the canonical (family) order.
struct EIndex {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t m = 0;

  friend bool operator==(const EIndex&, const EIndex&) = default;
  friend auto operator<=>(const EIndex&, const EIndex&) = default;
};

struct IndexSplit {
  std::vector<std::string> i_labels;
  std::vector<std::string> j_labels;
};

// Injective map from ([I]^2 x m_max) into J.
class Injection {
 public:
  Injection() = default;
  explicit Injection(std::map<EIndex, std::string> map);

  // DomainError when j is undefined at `index`.
  const std::string& at(const EIndex& index) const;
  bool defined(const EIndex& index) const { return map_.contains(index); }
  const std::map<EIndex, std::string>& map() const { return map_; }

 private:
  std::map<EIndex, std::string> map_;
};

struct SplitResult {
  IndexSplit split;
  Injection j;
  std::size_t m_max = 0;
};

// I = the first size_i labels, J = the rest; j enumerates (a, m) with a in
// lexicographic pair order and m fastest into the first C(size_i, 2) * m_max
// labels of J. SizingError names the deficit when labels run short.
SplitResult split_indices(std::span<const std::string> d_labels, std::size_t size_i,
                          std::size_t m_max);

// E^0_{a,m} = D^0_{j(a,m)} \ (D^0_{a-} ∩ D^0_{a+}), E^1 its complement. Checks
// E^1 == D^1_{j(a,m)} ∪ (D^0_{a-} ∩ D^0_{a+}) and throws std::logic_error if
// not. DomainError when j is undefined at `index`.
TwoPartition build_E(const EIndex& index, const PartitionFamily& d_block,
                     const SplitResult& split);

// Everything the verifiers need: the seed blocks, the split, and the
// E-block built from them.
class Construction {
 public:
  Construction(PartitionFamily c_block, PartitionFamily d_block, std::size_t size_i,
               std::size_t m_max);

  const PartitionFamily& c_block() const { return c_block_; }
  const PartitionFamily& d_block() const { return d_block_; }
  const PartitionFamily& e_block() const { return e_block_; }
  const SplitResult& split() const { return split_; }
  const std::vector<std::string>& i_labels() const { return split_.split.i_labels; }
  std::size_t m_max() const { return split_.m_max; }

  // e:<a->:<a+>:<m>
  std::string e_label(const EIndex& index) const;
  bool is_e_label(const std::string& label) const { return e_lookup_.contains(label); }
  // DomainError for labels outside the E-block.
  const EIndex& e_index(const std::string& label) const;
  // Position of an I-label; DomainError otherwise.
  std::size_t i_position(const std::string& label) const;

 private:
  PartitionFamily c_block_;
  PartitionFamily d_block_;
  SplitResult split_;
  PartitionFamily e_block_;
  std::map<std::string, EIndex> e_lookup_;
};

// phi over the D-block with alpha ∉ dom(phi) and E[eta] ⊇ D[phi]: j(a,m) is
// bound to eta(a,m), and a* (the least member of a other than alpha) to 1
// whenever some eta(a,m) = 0.
Condition claim1_witness(const Condition& eta, const std::string& alpha,
                         const Construction& construction);

// The intermediate sets of the inclusion chain behind claim1_witness:
//   e_trace   = E[eta]
//   relaxed   = ∩_{eta=0} (D^0_j \ (D^0_{a-} ∩ D^0_{a+})) ∩ ∩_{eta=1} D^1_j
//   starred   = ∩_{eta=0} (D^0_j ∩ D^1_{a*}) ∩ ∩_{eta=1} D^1_j
//   collected = ∩_{eta=0} D^1_{a*} ∩ ∩_{dom eta} D^{eta}_j
// with e_trace ⊇ relaxed ⊇ starred == collected == D[phi].
struct Claim1Chain {
  PointSet e_trace;
  PointSet relaxed;
  PointSet starred;
  PointSet collected;
  PointSet d_trace;
};
Claim1Chain claim1_chain(const Condition& eta, const std::string& alpha,
                         const Construction& construction);

// Trace space over C ∪ E with tags preserved; PreconditionError on a label
// collision.
TraceSpace assemble_space(const PartitionFamily& c_block, const PartitionFamily& e_block,
                          std::size_t depth, std::size_t threshold);

struct Claim1Report {
  bool holds = false;
  std::size_t checked = 0;
  std::optional<Condition> failing_eta;
  std::optional<std::string> failing_alpha;
};
// Every eta over the E-block of depth <= depth and every alpha in I.
Claim1Report verify_claim1(const Construction& construction, std::size_t depth);

struct Claim2Failure {
  Condition eps;
  Condition eta;
  Condition phi;
  std::string check;  // "C[eps]∩D[phi]" or "C[eps]∩E[eta]"
  std::size_t size = 0;
};
struct Claim2Report {
  bool holds = false;
  std::size_t checked = 0;
  std::optional<Claim2Failure> failing;
};
// For every basic condition eps ∪ eta of the space: reduce eta to phi via
// claim1_witness (alpha = first I-label) and require |C[eps] ∩ D[phi]| >= t
// and |C[eps] ∩ E[eta]| >= t.
Claim2Report verify_claim2(const TraceSpace& space, const Construction& construction);

struct Claim3aEntry {
  std::string alpha;
  bool dense = false;
  std::optional<Condition> not_met;
  // D^0_alpha ∩ D[phi] ∩ C[eps] ≠ ∅ with alpha ∉ dom(phi), for every
  // nonempty basic eps ∪ eta.
  bool proof_path = false;
  std::optional<Condition> proof_failure;
};
struct Claim3aReport {
  bool holds = false;
  std::vector<Claim3aEntry> entries;
};
// Density of D^0_alpha in the space for every alpha in I.
Claim3aReport verify_claim3a(const TraceSpace& space, const Construction& construction);

struct Claim3bEntry {
  std::string alpha;
  std::string beta;
  // eps ∪ eta -> eps ∪ eta ∪ {(a,m) -> 0} for every nonempty basic condition.
  ExtensionMap extensions;
  bool extensions_valid = false;
  bool replayed = false;
  bool nowhere_dense = false;
  std::optional<Condition> failing;
};
struct Claim3bReport {
  bool holds = false;
  std::vector<Claim3bEntry> entries;
};
// D^0_alpha ∩ D^0_beta is nowhere dense with budget 1 for every pair in [I]^2.
// SizingError when some eta already binds (a, m) for every m < m_max.
Claim3bReport verify_claim3b(const TraceSpace& space, const Construction& construction);

enum class Claim4Status {
  kIntersecting,       // compatible pair found, witness point in both sets
  kNoCompatiblePair,   // no two generator pairs are compatible
  kEmptyIntersection,  // compatible, but D[phi] ∩ C[eps] is empty
  kContainmentBroken,  // a generator trace is not inside its dense set
};
std::string_view claim4_status_name(Claim4Status status);

struct Claim4Report {
  Claim4Status status = Claim4Status::kNoCompatiblePair;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  std::optional<Condition> joint;
  std::optional<Point> point;
  // The implication "compatible generators => intersecting dense sets" was
  // not contradicted.
  bool passed() const {
    return status == Claim4Status::kIntersecting ||
           status == Claim4Status::kNoCompatiblePair;
  }
};
// `space` carries both the D- and C-tagged partitions; generators[k] belongs
// to dense_sets[k].
Claim4Report verify_claim4(const TraceSpace& space,
                           const std::vector<GeneratorPair>& generators,
                           const std::vector<PointSet>& dense_sets);

}  // namespace resolab

#endif  // RESOLAB_CONSTRUCTION_HPP
