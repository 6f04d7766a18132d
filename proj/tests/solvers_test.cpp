#include <gtest/gtest.h>

#include <bit>

#include "oracles.hpp"
#include "resolab/errors.hpp"
#include "resolab/independence.hpp"
#include "resolab/prng.hpp"
#include "resolab/solvers.hpp"
#include "resolab/trace.hpp"

namespace resolab {
namespace {

// Partition topology with the given atoms: one partition per atom, side 0 =
// the atom, so full-depth traces are exactly the atoms.
PartitionFamily atom_family(std::size_t n, const std::vector<std::vector<Point>>& blocks) {
  PartitionFamily f(n);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    f.add("a" + std::to_string(i), TwoPartition(PointSet(n, blocks[i])), Block::kOther);
  }
  return f;
}

void expect_valid_witness(const TraceSpace& s, const ResolutionResult& r) {
  ASSERT_EQ(r.witness.size(), r.count);
  for (std::size_t i = 0; i < r.count; ++i) {
    EXPECT_TRUE(is_dense(r.witness[i], s).holds);
    for (std::size_t j = i + 1; j < r.count; ++j) {
      EXPECT_FALSE(r.witness[i].intersects(r.witness[j]));
    }
  }
}

TEST(Disjoint, Examples) {
  const PartitionFamily f = atom_family(6, {{0, 1}, {2, 3}, {4, 5}});
  const TraceSpace s(f, 3);
  const ResolutionResult r = max_disjoint_dense(s);
  EXPECT_EQ(r.count, 2u);
  expect_valid_witness(s, r);
  EXPECT_TRUE(is_maximally_resolvable(s));

  const TraceSpace single(oracle::bit_family(3), 3);
  EXPECT_EQ(max_disjoint_dense(single).count, 1u);
  EXPECT_THROW(max_disjoint_dense(TraceSpace(oracle::bit_family(5), 1)), CapacityError);
}

TEST(Disjoint, UnevenAtoms) {
  const TraceSpace s(atom_family(5, {{0, 1}, {2, 3}, {4}}), 3);
  EXPECT_EQ(dispersion(s), 1u);
  EXPECT_EQ(max_disjoint_dense(s).count, 1u);
  EXPECT_TRUE(is_maximally_resolvable(s));
}

TEST(Disjoint, EqualAtomsAreMaximallyResolvable) {
  for (std::size_t size = 1; size <= 4; ++size) {
    std::vector<std::vector<Point>> blocks(3);
    for (std::size_t b = 0; b < 3; ++b) {
      for (std::size_t k = 0; k < size; ++k) blocks[b].push_back(b * size + k);
    }
    const TraceSpace s(atom_family(3 * size, blocks), 3);
    EXPECT_EQ(max_disjoint_dense(s).count, size);
    EXPECT_TRUE(is_maximally_resolvable(s));
  }
}

TEST(DisjointProperty, MatchesBruteForceAndBounds) {
  SplitMix64 rng(51);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + rng.below(10);
    const PartitionFamily f = oracle::random_small_family(rng, n, 1 + rng.below(4));
    const std::size_t d = 1 + rng.below(f.size());
    const TraceSpace s(f, d);
    const ResolutionResult r = max_disjoint_dense(s);
    ASSERT_EQ(r.count, oracle::brute_max_disjoint(f, d)) << "rep " << rep;
    expect_valid_witness(s, r);
    EXPECT_LE(r.count, dispersion(s));
    EXPECT_EQ(is_maximally_resolvable(s), r.count >= dispersion(s));
    if (d < f.size()) EXPECT_LE(max_disjoint_dense(TraceSpace(f, d + 1)).count, r.count);
  }
}

TEST(AlmostDisjoint, Examples) {
  SplitMix64 rng(52);
  for (int rep = 0; rep < 10; ++rep) {
    const PartitionFamily f = oracle::random_small_family(rng, 8, 3);
    const TraceSpace s(f, 2);
    const std::size_t k = max_disjoint_dense(s).count;
    const ResolutionResult one = max_almost_disjoint_dense(s, 1, 1);
    EXPECT_EQ(one.count, 1u);
    const ResolutionResult r = max_almost_disjoint_dense(s, 1, k + 2);
    EXPECT_GE(r.count, k);
    ASSERT_EQ(r.witness.size(), r.count);
    for (std::size_t i = 0; i < r.count; ++i) {
      EXPECT_TRUE(is_dense(r.witness[i], s).holds);
      for (std::size_t j = i + 1; j < r.count; ++j) {
        EXPECT_NE(r.witness[i], r.witness[j]);
        EXPECT_TRUE(is_nowhere_dense(r.witness[i] & r.witness[j], s, 1).holds);
      }
    }
  }
}

TEST(AlmostDisjoint, CertificatePathAndRejection) {
  const PartitionFamily p = product_family(0, 5, 1);
  const TraceSpace s(p, 2);
  // Parity classes on bits 0..3 are dense and disjoint; adding point 0 to
  // one of them leaves a nowhere dense overlap.
  PointSet a(32);
  PointSet b(32, {0});
  for (Point x = 0; x < 32; ++x) {
    ((std::popcount(x & 15U) % 2 == 0) ? a : b).insert(x);
  }
  EXPECT_EQ(max_almost_disjoint_dense(s, 1, 2, {a, b}).count, 2u);
  EXPECT_THROW(max_almost_disjoint_dense(s, 1, 2, {a, a}), ValidationError);
  EXPECT_THROW(max_almost_disjoint_dense(s, 1, 2, {p.at("d0").side0(), b}), ValidationError);
}

TEST(Atoms, Examples) {
  const auto bits = atoms(oracle::bit_family(3));
  ASSERT_EQ(bits.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(bits[i], PointSet(8, {static_cast<Point>(i)}));
  const auto prod = atoms(product_family(0, 3, 2));
  ASSERT_EQ(prod.size(), 8u);
  for (const PointSet& a : prod) EXPECT_EQ(a.count(), 2u);
  PartitionFamily one(5);
  one.add("x", TwoPartition(PointSet(5, {1, 3})), Block::kOther);
  const auto two = atoms(one);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], PointSet(5, {0, 2, 4}));
  EXPECT_EQ(two[1], PointSet(5, {1, 3}));
}

TEST(SolverProperty, CoarseningNeverDecreases) {
  SplitMix64 rng(53);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + rng.below(11);
    const PartitionFamily f = oracle::random_small_family(rng, n, 2 + rng.below(3));
    const std::size_t full = max_disjoint_dense(TraceSpace(f, f.size())).count;
    PartitionFamily coarse(n);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      coarse.add(f[i].label, f[i].partition, f[i].block);
    }
    EXPECT_GE(max_disjoint_dense(TraceSpace(coarse, coarse.size())).count, full);
  }
}

}  // namespace
}  // namespace resolab
