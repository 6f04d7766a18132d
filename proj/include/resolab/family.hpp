#ifndef RESOLAB_FAMILY_HPP
#define RESOLAB_FAMILY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "resolab/condition.hpp"
#include "resolab/point_set.hpp"

namespace resolab {

enum class Block : std::uint8_t { kB, kD, kC, kE, kOther };

std::string_view block_name(Block block);
// Throws DomainError on anything but "B", "D", "C", "E", "other".
Block parse_block(std::string_view name);

// Complementary pair <side0, side1> over one ground set.
class TwoPartition {
 public:
  TwoPartition() = default;
  // side1 is derived as the complement of side0.
  explicit TwoPartition(PointSet side0);
  // Throws ValidationError unless the sides are complementary.
  TwoPartition(PointSet side0, PointSet side1);

  const PointSet& side(int i) const { return i == 0 ? side0_ : side1_; }
  const PointSet& side0() const { return side0_; }
  const PointSet& side1() const { return side1_; }
  std::size_t universe() const { return side0_.universe(); }

  friend bool operator==(const TwoPartition&, const TwoPartition&) = default;

 private:
  PointSet side0_;
  PointSet side1_;
};

// Position-resolved binding used by the trace kernels.
struct Literal {
  std::uint32_t index = 0;
  std::uint8_t value = 0;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Ordered list of labelled, block-tagged 2-partitions of one ground set.
class PartitionFamily {
 public:
  struct Entry {
    std::string label;
    TwoPartition partition;
    Block block = Block::kOther;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  PartitionFamily() = default;
  explicit PartitionFamily(std::size_t n);

  // Throws PreconditionError on a duplicate label or a ground-set mismatch.
  void add(std::string label, TwoPartition partition, Block block);

  std::size_t universe() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }

  bool has(const std::string& label) const;
  // Throws DomainError for unknown labels.
  std::size_t index_of(const std::string& label) const;
  const TwoPartition& at(const std::string& label) const {
    return entries_[index_of(label)].partition;
  }

  std::vector<std::string> labels() const;
  std::vector<std::uint32_t> indices_of(Block block) const;
  // Sub-family holding only the partitions tagged `block`, in order.
  PartitionFamily block(Block block) const;
  // Same partitions, every entry retagged.
  PartitionFamily retagged(Block block) const;

  // Literals sorted by index; DomainError on unknown labels.
  std::vector<Literal> resolve(const Condition& cond) const;
  Condition condition(std::span<const Literal> literals) const;

  friend bool operator==(const PartitionFamily& a, const PartitionFamily& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Concatenation; PreconditionError on a label collision or universe mismatch.
PartitionFamily concat(const PartitionFamily& a, const PartitionFamily& b);

}  // namespace resolab

#endif  // RESOLAB_FAMILY_HPP
