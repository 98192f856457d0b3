#pragma once
// Subgraph matching and per-entity verdicts for graph patterns.

#include <algorithm>
#include <span>
#include <vector>

#include "tcm/kg_store.hpp"
#include "tcm/pattern.hpp"

namespace tcm {

inline constexpr FactId kNoFact = std::numeric_limits<FactId>::max();

struct MatchOptions {
  // With p1 = p2 in shape A, also require the two objects to differ (the
  // default only requires two distinct facts).
  bool distinct_objects = false;
};

struct MatchedSubgraph {
  ResourceId anchor = 0;
  ResourceId linked = 0;  // y for shape B, anchor for shape A
  FactId first = kNoFact;   // supplies t1
  FactId second = kNoFact;  // supplies t2
  FactId link = kNoFact;    // plain link fact, shape B only

  friend bool operator==(const MatchedSubgraph&, const MatchedSubgraph&) = default;
};

enum class Verdict : std::uint8_t { Positive, Negative, Unknown };
std::string_view to_string(Verdict v);

struct EntityVerdict {
  ResourceId entity = 0;
  Verdict verdict = Verdict::Unknown;
  std::vector<Truth> match_values;
};

// Which fact pairs form the body for a head.
enum class PairMode : std::uint8_t {
  Product,             // every (f1, f2) with f1 from p1, f2 from p2
  Ordered,             // same property: every f1 != f2, both orders
  Unordered,           // same property: f1 < f2
  UnorderedReflexive,  // same property: f1 <= f2 (mutual exclusion)
};

PairMode pair_mode(const GraphPattern& gp, TemporalPredicate head);

// For Unordered / UnorderedReflexive pairs the slots y and z are
// interchangeable, so a restriction holds when either orientation satisfies it.
bool slots_interchangeable(const GraphPattern& gp, TemporalPredicate head);

// Candidate anchors (superset of the entities with at least one match), ascending.
std::vector<ResourceId> anchors_of(const KgStore& store, const GraphPattern& gp);

// Shape B links reaching from anchor x to y != x, as (link fact, y).
std::vector<std::pair<FactId, ResourceId>> links_of(const KgStore& store, const GraphPattern& gp,
                                                    ResourceId anchor);

// Enumerates the body matches of one anchor in a deterministic order.
template <class Fn>
void for_each_match(const KgStore& store, const GraphPattern& gp, TemporalPredicate head,
                    ResourceId anchor, const MatchOptions& opts, Fn&& fn) {
  if (gp.shape == Shape::B) {
    const auto f2s = store.temporal_facts_of(anchor, gp.property2);
    if (f2s.empty()) return;
    for (const auto& [link, y] : links_of(store, gp, anchor)) {
      for (FactId f1 : store.temporal_facts_of(y, gp.property1))
        for (FactId f2 : f2s) fn(MatchedSubgraph{anchor, y, f1, f2, link});
    }
    return;
  }
  const auto f1s = store.temporal_facts_of(anchor, gp.property1);
  const auto f2s = store.temporal_facts_of(anchor, gp.property2);
  const PairMode mode = pair_mode(gp, head);
  const bool check_objects = opts.distinct_objects && gp.same_property() &&
                             head != TemporalPredicate::MutualExclusion;
  for (std::size_t i = 0; i < f1s.size(); ++i) {
    for (std::size_t j = 0; j < f2s.size(); ++j) {
      switch (mode) {
        case PairMode::Product: break;
        case PairMode::Ordered:
          if (i == j) continue;
          break;
        case PairMode::Unordered:
          if (j <= i) continue;
          break;
        case PairMode::UnorderedReflexive:
          if (j < i) continue;
          break;
      }
      if (check_objects && store.temporal(f1s[i]).object == store.temporal(f2s[j]).object)
        continue;
      fn(MatchedSubgraph{anchor, anchor, f1s[i], f2s[j], kNoFact});
    }
  }
}

// Every body match of the pattern, ordered by (anchor, enumeration order).
std::vector<MatchedSubgraph> match_subgraphs(const KgStore& store, const GraphPattern& gp,
                                             TemporalPredicate head,
                                             const MatchOptions& opts = {});

// Truth value of the head on one match. Mutual exclusion is Negative exactly
// when the two objects differ.
Truth evaluate_match(const KgStore& store, TemporalPredicate head, const MatchedSubgraph& m);

// Unknown if any value is Unknown, else Positive if all are Positive, else
// Negative. Throws std::invalid_argument on an empty set.
Verdict combine(std::span<const Truth> values);

// Throws std::invalid_argument when `matches` is empty or mixes anchors.
EntityVerdict evaluate_entity(const KgStore& store, std::span<const MatchedSubgraph> matches,
                              TemporalPredicate head);

// Entity bound to a slot by a match (orientation as enumerated).
ResourceId slot_entity(const KgStore& store, const GraphPattern& gp, const MatchedSubgraph& m,
                       Slot slot);

bool satisfies(const KgStore& store, const GraphPattern& gp, TemporalPredicate head,
               const ClassRestriction& restriction, const MatchedSubgraph& m);

std::uint64_t compute_support(std::span<const EntityVerdict> verdicts);
// nullopt when support is 0 (no evidence).
std::optional<double> compute_confidence(std::span<const EntityVerdict> verdicts);

// Verdict counts over all anchors, matches filtered by the restriction.
Scores score(const KgStore& store, const GraphPattern& gp, TemporalPredicate head,
             const ClassRestriction& restriction, const MatchOptions& opts = {});

}  // namespace tcm
