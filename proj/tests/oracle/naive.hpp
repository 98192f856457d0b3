#pragma once
// Brute-force reference miner and detector. Reads only the raw fact lists of
// a store (no store indexes), enumerates every fact pair per subject and
// every class for refinement. Meant for stores of a few thousand facts.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcm/detector.hpp"
#include "tcm/miner.hpp"

namespace tcm::oracle {

struct Scored {
  std::string key;  // same format as constraint_key
  Constraint constraint;
};

struct Result {
  std::vector<GraphPattern> patterns;  // sorted by operator<
  std::vector<Scored> candidates;      // sorted by key
  std::vector<Scored> constraints;     // sorted by key
};

Scores naive_score(const KgStore& store, const GraphPattern& gp, TemporalPredicate head,
                   const ClassRestriction& restriction, const MatchOptions& opts);

// Every class of the store is tried on every slot, so this matches mine()
// whenever max_classes_per_slot is at least the number of classes.
Result naive_mine(const KgStore& store, const MiningConfig& config);

struct Conflict {
  std::size_t constraint = 0;
  ResourceId anchor = 0;
  std::vector<FactId> facts;
  std::optional<FactId> link;
  std::vector<ResourceId> objects;
  friend auto operator<=>(const Conflict&, const Conflict&) = default;
};

// Sorted.
std::vector<Conflict> naive_detect(const KgStore& store, std::span<const Constraint> constraints,
                                   const MatchOptions& opts);

}  // namespace tcm::oracle
