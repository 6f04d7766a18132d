#include "resolab/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "resolab/errors.hpp"
#include "resolab/trace.hpp"

namespace resolab {
namespace {

using Mask = std::uint32_t;

// Distinct nonempty basic traces and the inclusion-minimal ones among them.
struct SmallTopology {
  std::vector<Mask> traces;
  std::vector<Mask> minimal;
};

SmallTopology small_topology(const TraceSpace& space) {
  SmallTopology top;
  std::unordered_set<Mask> seen;
  walk_conditions(space.family(), all_indices(space.family()), space.depth(),
                  [&](std::span<const Literal>, const PointSet& trace) {
                    if (trace.empty()) return Visit::kPrune;
                    const auto m = static_cast<Mask>(trace.to_mask());
                    if (seen.insert(m).second) top.traces.push_back(m);
                    return Visit::kDescend;
                  });
  for (Mask t : top.traces) {
    const bool is_min = std::none_of(top.traces.begin(), top.traces.end(),
                                     [t](Mask u) { return u != t && (u & ~t) == 0; });
    if (is_min) top.minimal.push_back(t);
  }
  return top;
}

bool dense_mask(const SmallTopology& top, Mask f) {
  return std::all_of(top.minimal.begin(), top.minimal.end(),
                     [f](Mask t) { return (t & f) != 0; });
}

// Colours points with k colours so each minimal trace sees every colour.
class PolychromaticSearch {
 public:
  PolychromaticSearch(std::size_t n, const std::vector<Mask>& minimal, std::size_t k)
      : n_(n), minimal_(minimal), k_(k), full_((k >= 32) ? ~Mask{0} : ((Mask{1} << k) - 1)) {
    containing_.resize(n);
    for (std::size_t t = 0; t < minimal.size(); ++t) {
      for (std::size_t p = 0; p < n; ++p) {
        if ((minimal[t] >> p) & 1U) containing_[p].push_back(t);
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (!containing_[p].empty()) order_.push_back(p);
    }
    // Scarcest points first, ties by index.
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return containing_[a].size() < containing_[b].size();
    });
    seen_.assign(minimal.size(), 0);
    open_.resize(minimal.size());
    for (std::size_t t = 0; t < minimal.size(); ++t) {
      open_[t] = static_cast<std::size_t>(std::popcount(minimal[t]));
    }
    colour_.assign(n, 0);
  }

  bool run() {
    for (std::size_t t = 0; t < minimal_.size(); ++t) {
      if (open_[t] < k_) return false;
    }
    return assign(0, 0);
  }

  std::vector<PointSet> classes() const {
    std::vector<PointSet> out(k_, PointSet(n_));
    for (std::size_t p = 0; p < n_; ++p) out[colour_[p]].insert(static_cast<Point>(p));
    return out;
  }

 private:
  bool assign(std::size_t pos, std::size_t used) {
    if (pos == order_.size()) return true;
    const std::size_t p = order_[pos];
    const std::size_t limit = std::min(k_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      bool ok = true;
      std::vector<std::pair<std::size_t, Mask>> undo;
      for (std::size_t t : containing_[p]) {
        undo.emplace_back(t, seen_[t]);
        seen_[t] |= Mask{1} << c;
        --open_[t];
        const auto missing = static_cast<std::size_t>(std::popcount(full_ & ~seen_[t]));
        if (missing > open_[t]) ok = false;
      }
      colour_[p] = c;
      if (ok && assign(pos + 1, std::max(used, c + 1))) return true;
      for (auto& [t, before] : undo) {
        seen_[t] = before;
        ++open_[t];
      }
    }
    colour_[p] = 0;
    return false;
  }

  std::size_t n_;
  const std::vector<Mask>& minimal_;
  std::size_t k_;
  Mask full_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::size_t> order_;
  std::vector<Mask> seen_;
  std::vector<std::size_t> open_;
  std::vector<std::size_t> colour_;
};

void check_disjoint_witness(const TraceSpace& space, const std::vector<PointSet>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!is_dense(sets[i], space).holds) {
      throw std::logic_error("max_disjoint_dense produced a non-dense class");
    }
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i].intersects(sets[j])) {
        throw std::logic_error("max_disjoint_dense produced overlapping classes");
      }
    }
  }
}

}  // namespace

ResolutionResult max_disjoint_dense(const TraceSpace& space) {
  const std::size_t n = space.universe();
  if (n > kDisjointMaxPoints) {
    throw CapacityError("max_disjoint_dense: ground set of " + std::to_string(n) +
                        " exceeds the exact-mode guard of " +
                        std::to_string(kDisjointMaxPoints));
  }
  const SmallTopology top = small_topology(space);
  std::size_t upper = n;
  for (Mask t : top.minimal) upper = std::min<std::size_t>(upper, std::popcount(t));
  for (std::size_t k = upper; k >= 1; --k) {
    PolychromaticSearch search(n, top.minimal, k);
    if (search.run()) {
      ResolutionResult result{k, search.classes()};
      check_disjoint_witness(space, result.witness);
      return result;
    }
  }
  throw std::logic_error("max_disjoint_dense: the ground set itself must be dense");
}

ResolutionResult max_almost_disjoint_dense(const TraceSpace& space, std::size_t budget,
                                           std::size_t cap,
                                           const std::vector<PointSet>& certificate) {
  if (cap < 1) throw PreconditionError("max_almost_disjoint_dense: cap must be at least 1");

  ResolutionResult best;
  if (!certificate.empty()) {
    for (std::size_t i = 0; i < certificate.size(); ++i) {
      if (certificate[i].universe() != space.universe()) {
        throw ValidationError("certificate member " + std::to_string(i) +
                              " is over a different ground set");
      }
      Verdict dense = is_dense(certificate[i], space);
      if (!dense.holds) {
        throw ValidationError("certificate member " + std::to_string(i) +
                              " misses the basic trace " + dense.witness->to_string());
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (certificate[i] == certificate[j]) {
          throw ValidationError("certificate members " + std::to_string(j) + " and " +
                                std::to_string(i) + " coincide");
        }
        NowhereDenseResult nwd = is_nowhere_dense(certificate[i] & certificate[j], space, budget);
        if (!nwd.holds) {
          throw ValidationError("certificate members " + std::to_string(j) + " and " +
                                std::to_string(i) + " meet in a set that is not nowhere dense"
                                " (stuck at " + nwd.failing->to_string() + ")");
        }
      }
    }
    best.count = std::min(cap, certificate.size());
    best.witness.assign(certificate.begin(),
                        certificate.begin() + static_cast<std::ptrdiff_t>(best.count));
    if (best.count == cap) return best;
  }

  const std::size_t n = space.universe();
  if (n > kAlmostDisjointMaxPoints) {
    throw CapacityError("max_almost_disjoint_dense: ground set of " + std::to_string(n) +
                        " exceeds the exact-mode guard of " +
                        std::to_string(kAlmostDisjointMaxPoints) +
                        " and no certificate reaches the cap");
  }

  ResolutionResult disjoint = max_disjoint_dense(space);
  if (disjoint.count > best.count) {
    best.count = std::min(cap, disjoint.count);
    best.witness.assign(disjoint.witness.begin(),
                        disjoint.witness.begin() + static_cast<std::ptrdiff_t>(best.count));
  }
  if (best.count == cap) return best;

  const SmallTopology top = small_topology(space);
  std::vector<Mask> dense;
  for (Mask f = 1; f < (Mask{1} << n); ++f) {
    if (dense_mask(top, f)) dense.push_back(f);
  }
  std::stable_sort(dense.begin(), dense.end(),
                   [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });

  std::vector<std::int8_t> nwd_memo(std::size_t{1} << n, -1);
  auto nwd = [&](Mask m) {
    std::int8_t& slot = nwd_memo[m];
    if (slot < 0) {
      slot = is_nowhere_dense(PointSet::from_mask(n, m), space, budget).holds ? 1 : 0;
    }
    return slot == 1;
  };

  const std::size_t v = dense.size();
  const std::size_t words = PointSet::word_count(v);
  std::vector<std::uint64_t> adj(v * words, 0);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = i + 1; j < v; ++j) {
      if (nwd(dense[i] & dense[j])) {
        adj[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
        adj[j * words + i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }

  std::vector<std::size_t> clique;
  std::vector<std::size_t> best_clique;
  std::size_t best_size = best.count;
  auto expand = [&](auto&& self, std::vector<std::uint64_t>& cand) -> void {
    if (best_size >= cap) return;
    std::size_t remaining = 0;
    for (auto w : cand) remaining += static_cast<std::size_t>(std::popcount(w));
    if (clique.size() + remaining <= best_size) return;
    for (std::size_t w = 0; w < words; ++w) {
      while (cand[w] != 0) {
        const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(cand[w]));
        cand[w] &= cand[w] - 1;
        clique.push_back(i);
        if (clique.size() > best_size) {
          best_size = clique.size();
          best_clique = clique;
          if (best_size >= cap) return;
        }
        std::vector<std::uint64_t> next(words);
        std::size_t next_count = 0;
        for (std::size_t x = 0; x < words; ++x) {
          next[x] = cand[x] & adj[i * words + x];
          next_count += static_cast<std::size_t>(std::popcount(next[x]));
        }
        if (clique.size() + next_count > best_size) self(self, next);
        clique.pop_back();
        if (best_size >= cap) return;
        std::size_t left = 0;
        for (std::size_t x = w; x < words; ++x) left += static_cast<std::size_t>(std::popcount(cand[x]));
        if (clique.size() + left <= best_size) return;
      }
    }
  };
  std::vector<std::uint64_t> all(words, 0);
  for (std::size_t i = 0; i < v; ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
  expand(expand, all);

  if (!best_clique.empty()) {
    best.count = best_clique.size();
    best.witness.clear();
    for (std::size_t i : best_clique) best.witness.push_back(PointSet::from_mask(n, dense[i]));
  }
  return best;
}

bool is_maximally_resolvable(const TraceSpace& space) {
  return max_disjoint_dense(space).count >= dispersion(space);
}

std::vector<PointSet> atoms(const PartitionFamily& family) {
  const std::size_t n = family.universe();
  const std::size_t sig_words = PointSet::word_count(family.size());
  std::map<std::vector<std::uint64_t>, PointSet> groups;
  std::vector<std::uint64_t> sig(sig_words);
  for (std::size_t p = 0; p < n; ++p) {
    std::fill(sig.begin(), sig.end(), 0);
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (family[i].partition.side1().contains(static_cast<Point>(p))) {
        sig[i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
    auto [it, inserted] = groups.try_emplace(sig, PointSet(n));
    it->second.insert(static_cast<Point>(p));
  }
  std::vector<PointSet> out;
  out.reserve(groups.size());
  for (auto& [key, set] : groups) out.push_back(std::move(set));
  std::sort(out.begin(), out.end(),
            [](const PointSet& a, const PointSet& b) { return a.first() < b.first(); });
  return out;
}

}  // namespace resolab
