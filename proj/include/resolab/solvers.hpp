#ifndef RESOLAB_SOLVERS_HPP
#define RESOLAB_SOLVERS_HPP

#include <cstddef>
#include <vector>

#include "resolab/point_set.hpp"
#include "resolab/trace_space.hpp"

namespace resolab {

inline constexpr std::size_t kDisjointMaxPoints = 24;
inline constexpr std::size_t kAlmostDisjointMaxPoints = 12;

struct ResolutionResult {
  std::size_t count = 0;
  std::vector<PointSet> witness;
};

// Largest k admitting k pairwise disjoint dense sets, with a witness. Exact
// branch-and-bound that colours points (scarcest first) so every minimal
// nonempty trace sees all k colours. CapacityError above kDisjointMaxPoints.
ResolutionResult max_disjoint_dense(const TraceSpace& space);

// Largest k <= cap admitting k distinct dense sets whose pairwise
// intersections are nowhere dense with the given budget.
//
// A non-empty `certificate` is verified first (each member dense, pairwise
// intersections nowhere dense); if it is valid and has >= cap members the
// answer is cap at any ground-set size. An invalid certificate raises
// ValidationError. Otherwise the search is an exact clique search over all
// dense subsets, seeded by max_disjoint_dense, and raises CapacityError above
// kAlmostDisjointMaxPoints.
ResolutionResult max_almost_disjoint_dense(const TraceSpace& space, std::size_t budget,
                                           std::size_t cap,
                                           const std::vector<PointSet>& certificate = {});

// max_disjoint_dense(space) >= dispersion(space).
bool is_maximally_resolvable(const TraceSpace& space);

// Nonempty traces of full-domain conditions, ordered by least point.
std::vector<PointSet> atoms(const PartitionFamily& family);

}  // namespace resolab

#endif  // RESOLAB_SOLVERS_HPP
