#include "resolab/family.hpp"

#include <algorithm>
#include <string>

#include "resolab/errors.hpp"

namespace resolab {

std::string_view block_name(Block block) {
  switch (block) {
    case Block::kB: return "B";
    case Block::kD: return "D";
    case Block::kC: return "C";
    case Block::kE: return "E";
    case Block::kOther: return "other";
  }
  return "other";
}

Block parse_block(std::string_view name) {
  if (name == "B") return Block::kB;
  if (name == "D") return Block::kD;
  if (name == "C") return Block::kC;
  if (name == "E") return Block::kE;
  if (name == "other") return Block::kOther;
  throw DomainError("unknown block tag '" + std::string(name) + "'");
}

TwoPartition::TwoPartition(PointSet side0)
    : side0_(std::move(side0)), side1_(side0_.complement()) {}

TwoPartition::TwoPartition(PointSet side0, PointSet side1)
    : side0_(std::move(side0)), side1_(std::move(side1)) {
  if (side0_.universe() != side1_.universe() || side0_.intersects(side1_) ||
      (side0_ | side1_).count() != side0_.universe()) {
    throw ValidationError("two-partition sides are not complementary");
  }
}

PartitionFamily::PartitionFamily(std::size_t n) : n_(n) {
  if (n == 0) throw PreconditionError("ground set must have at least one point");
}

void PartitionFamily::add(std::string label, TwoPartition partition, Block block) {
  if (partition.universe() != n_) {
    throw PreconditionError("partition '" + label + "' is over a ground set of " +
                            std::to_string(partition.universe()) + ", family has " +
                            std::to_string(n_));
  }
  if (index_.contains(label)) {
    throw PreconditionError("duplicate partition label '" + label + "'");
  }
  index_.emplace(label, entries_.size());
  entries_.push_back(Entry{std::move(label), std::move(partition), block});
}

bool PartitionFamily::has(const std::string& label) const {
  return index_.contains(label);
}

std::size_t PartitionFamily::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw DomainError("unknown partition label '" + label + "'");
  }
  return it->second;
}

std::vector<std::string> PartitionFamily::labels() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.label);
  return out;
}

std::vector<std::uint32_t> PartitionFamily::indices_of(Block block) const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].block == block) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

PartitionFamily PartitionFamily::block(Block block) const {
  PartitionFamily out(n_);
  for (const auto& e : entries_) {
    if (e.block == block) out.add(e.label, e.partition, e.block);
  }
  return out;
}

PartitionFamily PartitionFamily::retagged(Block block) const {
  PartitionFamily out(n_);
  for (const auto& e : entries_) out.add(e.label, e.partition, block);
  return out;
}

std::vector<Literal> PartitionFamily::resolve(const Condition& cond) const {
  std::vector<Literal> out;
  out.reserve(cond.depth());
  for (const auto& [label, value] : cond.bindings()) {
    out.push_back(Literal{static_cast<std::uint32_t>(index_of(label)), value});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Condition PartitionFamily::condition(std::span<const Literal> literals) const {
  std::vector<Condition::Binding> bindings;
  bindings.reserve(literals.size());
  for (const Literal& lit : literals) {
    if (lit.index >= entries_.size()) {
      throw DomainError("literal index " + std::to_string(lit.index) +
                        " outside family of " + std::to_string(entries_.size()));
    }
    bindings.emplace_back(entries_[lit.index].label, lit.value);
  }
  return Condition::from_bindings(std::move(bindings));
}

PartitionFamily concat(const PartitionFamily& a, const PartitionFamily& b) {
  if (a.universe() != b.universe()) {
    throw PreconditionError("concat: families over different ground sets");
  }
  PartitionFamily out(a.universe());
  for (const auto& e : a.entries()) out.add(e.label, e.partition, e.block);
  for (const auto& e : b.entries()) out.add(e.label, e.partition, e.block);
  return out;
}

}  // namespace resolab
