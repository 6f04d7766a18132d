#include "resolab/construction.hpp"

#include <atomic>
#include <limits>
#include <stdexcept>
#include <string>

#include "resolab/delta_system.hpp"
#include "resolab/errors.hpp"
#include "resolab/trace.hpp"

namespace resolab {

Injection::Injection(std::map<EIndex, std::string> map) : map_(std::move(map)) {
  std::map<std::string, EIndex> inverse;
  for (const auto& [index, label] : map_) {
    if (!inverse.emplace(label, index).second) {
      throw std::logic_error("injection maps two indices to '" + label + "'");
    }
  }
}

const std::string& Injection::at(const EIndex& index) const {
  auto it = map_.find(index);
  if (it == map_.end()) {
    throw DomainError("j is undefined at (" + std::to_string(index.lo) + "," +
                      std::to_string(index.hi) + "," + std::to_string(index.m) + ")");
  }
  return it->second;
}

SplitResult split_indices(std::span<const std::string> d_labels, std::size_t size_i,
                          std::size_t m_max) {
  if (size_i < 2) throw SizingError("split_indices: |I| must be at least 2");
  if (m_max < 1) throw SizingError("split_indices: m_max must be at least 1");
  const std::size_t pairs = size_i * (size_i - 1) / 2;
  const std::size_t needed_j = pairs * m_max;
  if (d_labels.size() < size_i + needed_j) {
    throw SizingError("split_indices: |I|=" + std::to_string(size_i) +
                      " and m_max=" + std::to_string(m_max) + " need " +
                      std::to_string(size_i + needed_j) + " D-labels (|J| >= " +
                      std::to_string(needed_j) + "), have " +
                      std::to_string(d_labels.size()) + "; short by " +
                      std::to_string(size_i + needed_j - d_labels.size()));
  }
  SplitResult result;
  result.m_max = m_max;
  result.split.i_labels.assign(d_labels.begin(), d_labels.begin() + static_cast<std::ptrdiff_t>(size_i));
  result.split.j_labels.assign(d_labels.begin() + static_cast<std::ptrdiff_t>(size_i), d_labels.end());
  std::map<EIndex, std::string> map;
  std::size_t next = 0;
  for (std::size_t lo = 0; lo < size_i; ++lo) {
    for (std::size_t hi = lo + 1; hi < size_i; ++hi) {
      for (std::size_t m = 0; m < m_max; ++m) {
        map.emplace(EIndex{lo, hi, m}, result.split.j_labels[next++]);
      }
    }
  }
  result.j = Injection(std::move(map));
  return result;
}

TwoPartition build_E(const EIndex& index, const PartitionFamily& d_block,
                     const SplitResult& split) {
  const std::string& j_label = split.j.at(index);
  const auto& i_labels = split.split.i_labels;
  if (index.hi >= i_labels.size() || index.lo >= index.hi) {
    throw DomainError("build_E: malformed pair index");
  }
  const TwoPartition& dj = d_block.at(j_label);
  const PointSet both = d_block.at(i_labels[index.lo]).side0() &
                        d_block.at(i_labels[index.hi]).side0();
  TwoPartition e(dj.side0() - both);
  if (e.side1() != (dj.side1() | both)) {
    throw std::logic_error("E-partition complement identity violated for '" + j_label + "'");
  }
  return e;
}

Construction::Construction(PartitionFamily c_block, PartitionFamily d_block,
                           std::size_t size_i, std::size_t m_max)
    : c_block_(std::move(c_block)), d_block_(std::move(d_block)) {
  if (c_block_.universe() != d_block_.universe()) {
    throw PreconditionError("construction: C- and D-blocks over different ground sets");
  }
  const auto labels = d_block_.labels();
  split_ = split_indices(labels, size_i, m_max);
  e_block_ = PartitionFamily(d_block_.universe());
  for (const auto& [index, j_label] : split_.j.map()) {
    std::string label = e_label(index);
    e_block_.add(label, build_E(index, d_block_, split_), Block::kE);
    e_lookup_.emplace(std::move(label), index);
  }
}

std::string Construction::e_label(const EIndex& index) const {
  const auto& i = split_.split.i_labels;
  return "e:" + i.at(index.lo) + ":" + i.at(index.hi) + ":" + std::to_string(index.m);
}

const EIndex& Construction::e_index(const std::string& label) const {
  auto it = e_lookup_.find(label);
  if (it == e_lookup_.end()) throw DomainError("'" + label + "' is not an E-label");
  return it->second;
}

std::size_t Construction::i_position(const std::string& label) const {
  const auto& i = split_.split.i_labels;
  for (std::size_t k = 0; k < i.size(); ++k) {
    if (i[k] == label) return k;
  }
  throw DomainError("'" + label + "' is not in I");
}

namespace {

// a*: the least member of a = {I[lo], I[hi]} other than alpha.
std::size_t star(const EIndex& index, std::size_t alpha_pos) {
  return index.lo != alpha_pos ? index.lo : index.hi;
}

}  // namespace

Condition claim1_witness(const Condition& eta, const std::string& alpha,
                         const Construction& construction) {
  const std::size_t alpha_pos = construction.i_position(alpha);
  const auto& i_labels = construction.i_labels();
  std::map<std::string, std::uint8_t> phi;
  auto bind = [&](const std::string& label, std::uint8_t value) {
    auto [it, inserted] = phi.emplace(label, value);
    if (!inserted && it->second != value) {
      throw std::logic_error("claim1_witness: clash on '" + label + "'");
    }
  };
  for (const auto& [label, value] : eta.bindings()) {
    const EIndex& index = construction.e_index(label);
    bind(construction.split().j.at(index), value);
    if (value == 0) bind(i_labels[star(index, alpha_pos)], 1);
  }
  if (phi.contains(alpha)) {
    throw std::logic_error("claim1_witness: alpha ended up in dom(phi)");
  }
  return Condition::from_bindings({phi.begin(), phi.end()});
}

Claim1Chain claim1_chain(const Condition& eta, const std::string& alpha,
                         const Construction& construction) {
  const PartitionFamily& d = construction.d_block();
  const std::size_t n = d.universe();
  const std::size_t alpha_pos = construction.i_position(alpha);
  const auto& i_labels = construction.i_labels();
  Claim1Chain chain{evaluate_trace(construction.e_block(), eta), PointSet::full(n),
                    PointSet::full(n), PointSet::full(n), {}};
  for (const auto& [label, value] : eta.bindings()) {
    const EIndex& index = construction.e_index(label);
    const TwoPartition& dj = d.at(construction.split().j.at(index));
    const TwoPartition& star_part = d.at(i_labels[star(index, alpha_pos)]);
    if (value == 0) {
      const PointSet both =
          d.at(i_labels[index.lo]).side0() & d.at(i_labels[index.hi]).side0();
      chain.relaxed &= dj.side0() - both;
      chain.starred &= dj.side0() & star_part.side1();
      chain.collected &= star_part.side1();
      chain.collected &= dj.side0();
    } else {
      chain.relaxed &= dj.side1();
      chain.starred &= dj.side1();
      chain.collected &= dj.side1();
    }
  }
  chain.d_trace = evaluate_trace(d, claim1_witness(eta, alpha, construction));
  return chain;
}

TraceSpace assemble_space(const PartitionFamily& c_block, const PartitionFamily& e_block,
                          std::size_t depth, std::size_t threshold) {
  return TraceSpace(concat(c_block, e_block), depth, threshold);
}

namespace {

void record_first(std::atomic<std::size_t>& first, std::size_t shard) {
  std::size_t cur = first.load();
  while (shard < cur && !first.compare_exchange_weak(cur, shard)) {
  }
}

// Splits a space condition into its non-E part (eps) and E part (eta).
std::pair<std::vector<Literal>, Condition> split_eps_eta(
    const PartitionFamily& family, std::span<const Literal> lits,
    const Construction& construction) {
  std::vector<Literal> eps;
  std::vector<Condition::Binding> eta;
  for (const Literal& lit : lits) {
    const std::string& label = family[lit.index].label;
    if (construction.is_e_label(label)) {
      eta.emplace_back(label, lit.value);
    } else {
      eps.push_back(lit);
    }
  }
  return {std::move(eps), Condition::from_bindings(std::move(eta))};
}

}  // namespace

Claim1Report verify_claim1(const Construction& construction, std::size_t depth) {
  const PartitionFamily& e = construction.e_block();
  const PartitionFamily& d = construction.d_block();
  const auto& i_labels = construction.i_labels();
  const auto pool = all_indices(e);
  const std::size_t shards = shard_count(pool.size());
  std::vector<std::size_t> checked(shards, 0);
  std::vector<std::optional<std::pair<Condition, std::string>>> failing(shards);
  std::atomic<std::size_t> first{std::numeric_limits<std::size_t>::max()};

  walk_conditions_sharded(
      e, pool, std::min(depth, e.size()),
      [&](std::size_t shard, std::span<const Literal> lits, const PointSet& trace) {
        if (shard > first.load()) return Visit::kStop;
        const Condition eta = e.condition(lits);
        for (const std::string& alpha : i_labels) {
          ++checked[shard];
          const Condition phi = claim1_witness(eta, alpha, construction);
          if (phi.binds(alpha) || !evaluate_trace(d, phi).is_subset_of(trace)) {
            failing[shard].emplace(eta, alpha);
            record_first(first, shard);
            return Visit::kStop;
          }
        }
        return Visit::kDescend;
      });

  Claim1Report report;
  for (std::size_t c : checked) report.checked += c;
  for (auto& f : failing) {
    if (f) {
      report.failing_eta = f->first;
      report.failing_alpha = f->second;
      return report;
    }
  }
  report.holds = true;
  return report;
}

Claim2Report verify_claim2(const TraceSpace& space, const Construction& construction) {
  const PartitionFamily& family = space.family();
  const PartitionFamily& d = construction.d_block();
  const std::string& alpha = construction.i_labels().front();
  const std::size_t t = space.threshold();
  const auto pool = all_indices(family);
  const std::size_t shards = shard_count(pool.size());
  std::vector<std::size_t> checked(shards, 0);
  std::vector<std::optional<Claim2Failure>> failing(shards);
  std::atomic<std::size_t> first{std::numeric_limits<std::size_t>::max()};

  walk_conditions_sharded(
      family, pool, space.depth(),
      [&](std::size_t shard, std::span<const Literal> lits, const PointSet& trace) {
        if (shard > first.load()) return Visit::kStop;
        ++checked[shard];
        auto [eps_lits, eta] = split_eps_eta(family, lits, construction);
        const PointSet c_trace = evaluate_trace(family, eps_lits);
        const Condition phi = claim1_witness(eta, alpha, construction);
        const std::size_t via_phi = c_trace.intersection_count(evaluate_trace(d, phi));
        const std::size_t direct = trace.count();
        if (via_phi < t || direct < t) {
          failing[shard] = Claim2Failure{family.condition(eps_lits), eta, phi,
                                         via_phi < t ? "C[eps]∩D[phi]" : "C[eps]∩E[eta]",
                                         via_phi < t ? via_phi : direct};
          record_first(first, shard);
          return Visit::kStop;
        }
        return Visit::kDescend;
      });

  Claim2Report report;
  for (std::size_t c : checked) report.checked += c;
  for (auto& f : failing) {
    if (f) {
      report.failing = std::move(f);
      return report;
    }
  }
  report.holds = true;
  return report;
}

Claim3aReport verify_claim3a(const TraceSpace& space, const Construction& construction) {
  const PartitionFamily& family = space.family();
  const PartitionFamily& d = construction.d_block();
  Claim3aReport report;
  report.holds = true;
  for (const std::string& alpha : construction.i_labels()) {
    Claim3aEntry entry;
    entry.alpha = alpha;
    const PointSet& d0 = d.at(alpha).side0();
    Verdict dense = is_dense(d0, space);
    entry.dense = dense.holds;
    entry.not_met = std::move(dense.witness);

    const auto pool = all_indices(family);
    auto hit = find_first_failure(
        family, pool, ScanOptions{.max_depth = space.depth(), .skip_empty = true},
        [&](std::span<const Literal> lits, const PointSet&) {
          auto [eps_lits, eta] = split_eps_eta(family, lits, construction);
          const Condition phi = claim1_witness(eta, alpha, construction);
          if (phi.binds(alpha)) return true;
          PointSet witness = evaluate_trace(d, phi);
          witness &= d0;
          return !witness.intersects(evaluate_trace(family, eps_lits));
        });
    entry.proof_path = !hit.has_value();
    if (hit) entry.proof_failure = family.condition(*hit);
    report.holds = report.holds && entry.dense;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

Claim3bReport verify_claim3b(const TraceSpace& space, const Construction& construction) {
  const PartitionFamily& family = space.family();
  const PartitionFamily& d = construction.d_block();
  const auto& i_labels = construction.i_labels();
  const auto pool = all_indices(family);
  Claim3bReport report;
  report.holds = true;
  for (std::size_t lo = 0; lo < i_labels.size(); ++lo) {
    for (std::size_t hi = lo + 1; hi < i_labels.size(); ++hi) {
      Claim3bEntry entry;
      entry.alpha = i_labels[lo];
      entry.beta = i_labels[hi];
      const PointSet n = d.at(entry.alpha).side0() & d.at(entry.beta).side0();
      entry.extensions_valid = true;
      walk_conditions(
          family, pool, space.depth(),
          [&](std::span<const Literal> lits, const PointSet& trace) {
            if (trace.empty()) return Visit::kPrune;
            const Condition cond = family.condition(lits);
            std::optional<std::string> fresh;
            for (std::size_t m = 0; m < construction.m_max() && !fresh; ++m) {
              std::string label = construction.e_label(EIndex{lo, hi, m});
              if (!cond.binds(label)) fresh = std::move(label);
            }
            if (!fresh) {
              throw SizingError("verify_claim3b: every (a, m) with a = {" + entry.alpha + ", " +
                                entry.beta + "} and m < " +
                                std::to_string(construction.m_max()) + " is bound in " +
                                cond.to_string() + "; increase m_max");
            }
            const PointSet extended = trace & family.at(*fresh).side0();
            Condition image = extend(cond, *fresh, 0);
            if (extended.empty() || extended.intersects(n)) {
              entry.extensions_valid = false;
              entry.failing = cond;
              return Visit::kStop;
            }
            entry.extensions.emplace_back(cond, std::move(image));
            return Visit::kDescend;
          });
      if (entry.extensions_valid) {
        entry.replayed = replay_nowhere_dense(n, space, 1, entry.extensions).holds;
      }
      NowhereDenseResult nwd = is_nowhere_dense(n, space, 1);
      entry.nowhere_dense = nwd.holds;
      if (!entry.failing && nwd.failing) entry.failing = nwd.failing;
      report.holds = report.holds && entry.extensions_valid && entry.replayed &&
                     entry.nowhere_dense;
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

std::string_view claim4_status_name(Claim4Status status) {
  switch (status) {
    case Claim4Status::kIntersecting: return "intersecting";
    case Claim4Status::kNoCompatiblePair: return "no_compatible_pair";
    case Claim4Status::kEmptyIntersection: return "empty_intersection";
    case Claim4Status::kContainmentBroken: return "containment_broken";
  }
  return "unknown";
}

Claim4Report verify_claim4(const TraceSpace& space,
                           const std::vector<GeneratorPair>& generators,
                           const std::vector<PointSet>& dense_sets) {
  if (generators.size() != dense_sets.size()) {
    throw PreconditionError("verify_claim4: one generator pair per dense set required");
  }
  const PartitionFamily& family = space.family();
  std::vector<Condition> joints;
  joints.reserve(generators.size());
  Claim4Report report;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    auto joint = compatible(family, generators[k].phi, generators[k].eps);
    if (!joint) {
      report.status = Claim4Status::kContainmentBroken;
      return report;
    }
    const PointSet t = evaluate_trace(family, *joint);
    if (t.empty() || !t.is_subset_of(dense_sets[k])) {
      report.status = Claim4Status::kContainmentBroken;
      report.pair = std::make_pair(k, k);
      return report;
    }
    joints.push_back(std::move(*joint));
  }
  auto pair = find_compatible_pair(joints);
  if (!pair) {
    report.status = Claim4Status::kNoCompatiblePair;
    return report;
  }
  report.pair = pair;
  report.joint = compatible(joints[pair->first], joints[pair->second]);
  const PointSet both = evaluate_trace(family, *report.joint);
  if (both.empty()) {
    report.status = Claim4Status::kEmptyIntersection;
    return report;
  }
  const Point p = both.first();
  report.point = p;
  report.status = dense_sets[pair->first].contains(p) && dense_sets[pair->second].contains(p)
                      ? Claim4Status::kIntersecting
                      : Claim4Status::kContainmentBroken;
  return report;
}

}  // namespace resolab
