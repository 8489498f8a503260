#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prob/bundle.hpp"
#include "prob/errors.hpp"
#include "prob/label.hpp"
#include "prob/random.hpp"
#include "prob/scheme.hpp"

namespace prob {

// Canonical representation of an R-subalgebra of random variables: the
// partition of the domain into its atoms. Blocks are sorted internally and
// ordered by least element, so equal algebras compare equal.
class Partition {
 public:
  static Partition make(Scheme domain, std::vector<std::vector<OutcomeLabel>> blocks) {
    std::vector<std::size_t> block_of(domain.size(), kUnassigned);
    for (const auto& block : blocks) {
      require(!block.empty(), errc::invalid_partition, "empty block");
      for (const auto& w : block) {
        std::size_t i = domain.index_of(w);
        require(block_of[i] == kUnassigned, errc::invalid_partition,
                "outcome '" + w.str() + "' appears in two blocks");
        block_of[i] = 0;  // provisional; rebuilt below
      }
    }
    for (std::size_t i = 0; i < domain.size(); ++i)
      require(block_of[i] != kUnassigned, errc::invalid_partition,
              "outcome '" + domain.outcome(i).str() + "' not covered");
    return from_blocks_unchecked(std::move(domain), std::move(blocks));
  }

  // Joint level sets of the given functions; no functions means the algebra
  // of constants, a single block.
  static Partition from_functions(const Scheme& domain,
                                  std::span<const RandomFunction> xs) {
    for (const auto& x : xs) require_same_domain(domain, x.domain());
    std::map<std::vector<OutcomeLabel>, std::vector<OutcomeLabel>> groups;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      std::vector<OutcomeLabel> key;
      key.reserve(xs.size());
      for (const auto& x : xs) key.push_back(x.value_at(i));
      groups[std::move(key)].push_back(domain.outcome(i));
    }
    std::vector<std::vector<OutcomeLabel>> blocks;
    blocks.reserve(groups.size());
    for (auto& [key, block] : groups) blocks.push_back(std::move(block));
    return from_blocks_unchecked(domain, std::move(blocks));
  }

  static Partition discrete(const Scheme& domain) {
    std::vector<std::vector<OutcomeLabel>> blocks;
    blocks.reserve(domain.size());
    for (const auto& w : domain.outcomes()) blocks.push_back({w});
    return from_blocks_unchecked(domain, std::move(blocks));
  }

  static Partition single_block(const Scheme& domain) {
    return from_blocks_unchecked(domain, {domain.outcomes()});
  }

  const Scheme& domain() const { return domain_; }
  const std::vector<std::vector<OutcomeLabel>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_index_of(std::size_t outcome_index) const {
    return block_of_[outcome_index];
  }
  const std::vector<OutcomeLabel>& block_of(const OutcomeLabel& w) const {
    return blocks_[block_of_[domain_.index_of(w)]];
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.domain_ == b.domain_ && a.blocks_ == b.blocks_;
  }
  friend bool operator!=(const Partition& a, const Partition& b) {
    return !(a == b);
  }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  Partition(Scheme domain, std::vector<std::vector<OutcomeLabel>> blocks,
            std::vector<std::size_t> block_of)
      : domain_(std::move(domain)),
        blocks_(std::move(blocks)),
        block_of_(std::move(block_of)) {}

  // Canonicalizes block order and member order; assumes blocks partition the
  // domain (factories above establish that).
  static Partition from_blocks_unchecked(Scheme domain,
                                         std::vector<std::vector<OutcomeLabel>> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<std::size_t> block_of(domain.size(), kUnassigned);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
      for (const auto& w : blocks[bi]) block_of[domain.index_of(w)] = bi;
    return Partition(std::move(domain), std::move(blocks), std::move(block_of));
  }

  Scheme domain_;
  std::vector<std::vector<OutcomeLabel>> blocks_;
  std::vector<std::size_t> block_of_;  // outcome index -> block index

  friend Partition bundle_to_partition(const Bundle& pi);
};

inline Partition partition_from_functions(const Scheme& domain,
                                          std::span<const RandomFunction> xs) {
  return Partition::from_functions(domain, xs);
}

inline Partition partition_from_functions(const Scheme& domain,
                                          const std::vector<RandomFunction>& xs) {
  return Partition::from_functions(domain, std::span<const RandomFunction>(xs));
}

inline Partition partition_from_functions(const std::vector<RandomFunction>& xs) {
  require(!xs.empty(), errc::empty_sequence,
          "cannot infer the domain from no functions; pass it explicitly");
  return Partition::from_functions(xs.front().domain(),
                                   std::span<const RandomFunction>(xs));
}

// The quotient bundle of the partition. Base points are named by the least
// element of each block, making the relabeling deterministic.
inline Bundle partition_to_bundle(const Partition& p) {
  std::vector<OutcomeLabel> values;
  values.reserve(p.domain().size());
  for (std::size_t i = 0; i < p.domain().size(); ++i)
    values.push_back(p.blocks()[p.block_index_of(i)].front());
  return Bundle::induced(p.domain(), values);
}

inline Partition bundle_to_partition(const Bundle& pi) {
  std::vector<std::vector<OutcomeLabel>> blocks(pi.base().size());
  for (std::size_t i = 0; i < pi.total().size(); ++i)
    blocks[pi.base_index_of(i)].push_back(pi.total().outcome(i));
  return Partition::from_blocks_unchecked(pi.total(), std::move(blocks));
}

// Membership test for the subalgebra represented by p: constant per block.
inline bool algebra_contains(const Partition& p, const RandomVariable& x) {
  require_same_domain(p.domain(), x.domain());
  std::vector<const Rational*> seen(p.block_count(), nullptr);
  for (std::size_t i = 0; i < x.domain().size(); ++i) {
    std::size_t b = p.block_index_of(i);
    if (seen[b] == nullptr)
      seen[b] = &x.value_at(i);
    else if (*seen[b] != x.value_at(i))
      return false;
  }
  return true;
}

inline RandomVariable atom_indicator(const Partition& p,
                                     std::vector<OutcomeLabel> block) {
  std::sort(block.begin(), block.end());
  auto it = std::find(p.blocks().begin(), p.blocks().end(), block);
  require(it != p.blocks().end(), errc::unknown_block,
          "not a block of the partition");
  return indicator(Event(p.domain(), block));
}

// True iff every p-block lies inside some q-block.
inline bool refines(const Partition& p, const Partition& q) {
  require_same_domain(p.domain(), q.domain());
  std::vector<std::size_t> image(p.block_count(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < p.domain().size(); ++i) {
    std::size_t pb = p.block_index_of(i);
    std::size_t qb = q.block_index_of(i);
    if (image[pb] == static_cast<std::size_t>(-1))
      image[pb] = qb;
    else if (image[pb] != qb)
      return false;
  }
  return true;
}

inline Partition common_refinement(const Partition& p, const Partition& q) {
  require_same_domain(p.domain(), q.domain());
  std::map<std::pair<std::size_t, std::size_t>, std::vector<OutcomeLabel>> groups;
  for (std::size_t i = 0; i < p.domain().size(); ++i)
    groups[{p.block_index_of(i), q.block_index_of(i)}].push_back(
        p.domain().outcome(i));
  std::vector<std::vector<OutcomeLabel>> blocks;
  blocks.reserve(groups.size());
  for (auto& [key, block] : groups) blocks.push_back(std::move(block));
  return Partition::make(p.domain(), std::move(blocks));
}

// When p refines q, the quotient of q factors through the quotient of p;
// this builds the connecting bundle sigma with
// compose(sigma, partition_to_bundle(p)) == partition_to_bundle(q).
inline Bundle refinement_factor(const Partition& p, const Partition& q) {
  require(refines(p, q), errc::not_a_refinement,
          "first partition does not refine the second");
  Bundle bp = partition_to_bundle(p);
  Bundle bq = partition_to_bundle(q);
  std::map<OutcomeLabel, OutcomeLabel> sigma;
  for (const auto& rep : bp.base().outcomes())
    sigma.emplace(rep, q.block_of(rep).front());
  return Bundle::make(bp.base(), bq.base(), sigma);
}

}  // namespace prob
