#pragma once
// Temporal constraint mining over the two structural patterns.
//
//   patterns   = instantiate_patterns(store)          frequent property combinations
//   candidates = {(gp, head) : support >= theta_freq}
//   accept       confidence >= theta_accept
//   refine       theta_refine <= confidence < theta_accept  (class restrictions)
//   discard      otherwise

#include <cstdint>
#include <vector>

#include "tcm/kg_store.hpp"
#include "tcm/matching.hpp"
#include "tcm/pattern.hpp"

namespace tcm {

struct MiningConfig {
  std::uint64_t theta_freq = 100;
  Ratio theta_accept{9, 10};
  Ratio theta_refine{1, 2};
  std::size_t max_classes_per_slot = 50;
  std::vector<TemporalPredicate> heads{std::begin(kAllPredicates), std::end(kAllPredicates)};
  MatchOptions match;
  unsigned threads = 1;

  // Throws std::invalid_argument on violated threshold invariants.
  void validate() const;
};

// Heads tried for a pattern: shape B never takes Disjoint or MutualExclusion;
// symmetric heads on shape A only for the canonical property order.
std::vector<TemporalPredicate> heads_for(const KgStore& store, const GraphPattern& gp,
                                         const MiningConfig& config);

// Shape A (p1, p2) is emitted when at least theta_freq subjects carry both
// properties; shape B (p0, dir, p1, p2) when at least theta_freq anchors
// realize a match. Both counts come from one pass over subjects.
std::vector<GraphPattern> instantiate_patterns(const KgStore& store, const MiningConfig& config);

// Class-restricted variants of an under-confident constraint that reach both
// thresholds. Throws std::logic_error unless
// theta_refine <= confidence < theta_accept.
std::vector<Constraint> refine_constraint(const Constraint& tc, const KgStore& store,
                                          const MiningConfig& config);

struct MiningStats {
  std::size_t patterns = 0;
  std::size_t candidates = 0;
  std::size_t accepted = 0;
  std::size_t refinement_attempts = 0;
  std::size_t refined = 0;
  std::size_t discarded = 0;
};

struct MiningResult {
  std::vector<GraphPattern> patterns;
  std::vector<Constraint> candidates;   // output order
  std::vector<Constraint> constraints;  // accepted and refined, output order
  MiningStats stats;
};

MiningResult mine(const KgStore& store, const MiningConfig& config);

}  // namespace tcm
