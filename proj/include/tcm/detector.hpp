#pragma once
// Conflict detection: re-match accepted constraints and report the subgraphs
// whose head evaluates Negative. Unknown evaluations are never conflicts.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tcm/kg_store.hpp"
#include "tcm/matching.hpp"
#include "tcm/pattern.hpp"

namespace tcm {

struct ConflictReport {
  std::size_t constraint_index = 0;
  ResourceId anchor = 0;
  TemporalPredicate head = TemporalPredicate::Disjoint;
  Truth truth = Truth::Negative;
  std::vector<FactId> facts;           // temporal facts, ascending
  std::optional<FactId> link;          // plain link fact for shape B
  std::vector<ResourceId> objects;     // mutual exclusion: distinct objects, ascending

  friend bool operator==(const ConflictReport&, const ConflictReport&) = default;
};

struct DetectOptions {
  MatchOptions match;
  unsigned threads = 1;
  bool count_unknown = false;
};

struct DetectResult {
  std::vector<ConflictReport> reports;  // by (constraint, anchor, facts)
  std::uint64_t unknown_matches = 0;    // filled when count_unknown is set
};

// Constraints given as optional: nullopt entries (unresolvable against the
// store) are skipped but keep their index.
DetectResult detect(const KgStore& store, std::span<const std::optional<Constraint>> constraints,
                    const DetectOptions& options = {});
std::vector<ConflictReport> detect(const KgStore& store, std::span<const Constraint> constraints,
                                   const DetectOptions& options = {});

struct ConflictStats {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> per_constraint;  // indexed by constraint index
  std::map<TemporalPredicate, std::uint64_t> per_head;
  std::vector<std::pair<ResourceId, std::uint64_t>> top_entities;  // count desc, id asc
  std::uint64_t unknown_matches = 0;
};

ConflictStats summarize(std::span<const ConflictReport> reports, std::size_t constraint_count,
                        std::size_t top_k = 10);

}  // namespace tcm
