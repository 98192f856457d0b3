#include "tcm/matching.hpp"

#include <stdexcept>

namespace tcm {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::Negative: return "negative";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

PairMode pair_mode(const GraphPattern& gp, TemporalPredicate head) {
  if (!gp.same_property()) return PairMode::Product;
  if (head == TemporalPredicate::MutualExclusion) return PairMode::UnorderedReflexive;
  return is_symmetric(head) ? PairMode::Unordered : PairMode::Ordered;
}

bool slots_interchangeable(const GraphPattern& gp, TemporalPredicate head) {
  const auto mode = pair_mode(gp, head);
  return mode == PairMode::Unordered || mode == PairMode::UnorderedReflexive;
}

std::vector<ResourceId> anchors_of(const KgStore& store, const GraphPattern& gp) {
  std::vector<ResourceId> out;
  if (gp.shape == Shape::B) {
    const auto s = store.subjects_with(gp.property2);
    return {s.begin(), s.end()};
  }
  const auto a = store.subjects_with(gp.property1);
  const auto b = store.subjects_with(gp.property2);
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::pair<FactId, ResourceId>> links_of(const KgStore& store, const GraphPattern& gp,
                                                    ResourceId anchor) {
  std::vector<std::pair<FactId, ResourceId>> out;
  const bool forward = gp.direction == LinkDirection::Forward;
  const auto facts = forward ? store.plain_facts_from(anchor) : store.plain_facts_to(anchor);
  auto lo = std::lower_bound(facts.begin(), facts.end(), gp.link_property,
                             [&](FactId f, ResourceId p) { return store.plain(f).property < p; });
  for (auto it = lo; it != facts.end() && store.plain(*it).property == gp.link_property; ++it) {
    const auto& pf = store.plain(*it);
    const ResourceId y = forward ? pf.object : pf.subject;
    if (y == anchor || store.is_literal(y)) continue;
    out.emplace_back(*it, y);
  }
  return out;
}

std::vector<MatchedSubgraph> match_subgraphs(const KgStore& store, const GraphPattern& gp,
                                             TemporalPredicate head, const MatchOptions& opts) {
  std::vector<MatchedSubgraph> out;
  for (ResourceId x : anchors_of(store, gp))
    for_each_match(store, gp, head, x, opts, [&](const MatchedSubgraph& m) { out.push_back(m); });
  return out;
}

Truth evaluate_match(const KgStore& store, TemporalPredicate head, const MatchedSubgraph& m) {
  if (head == TemporalPredicate::MutualExclusion) {
    return store.temporal(m.first).object != store.temporal(m.second).object ? Truth::Negative
                                                                             : Truth::Positive;
  }
  return eval_predicate(head, store.bounds(m.first), store.bounds(m.second));
}

Verdict combine(std::span<const Truth> values) {
  if (values.empty()) throw std::invalid_argument("verdict over an empty match set");
  bool negative = false;
  for (Truth t : values) {
    if (t == Truth::Unknown) return Verdict::Unknown;
    if (t == Truth::Negative) negative = true;
  }
  return negative ? Verdict::Negative : Verdict::Positive;
}

EntityVerdict evaluate_entity(const KgStore& store, std::span<const MatchedSubgraph> matches,
                              TemporalPredicate head) {
  if (matches.empty()) throw std::invalid_argument("evaluate_entity: empty match set");
  EntityVerdict v;
  v.entity = matches.front().anchor;
  v.match_values.reserve(matches.size());
  for (const auto& m : matches) {
    if (m.anchor != v.entity) throw std::invalid_argument("evaluate_entity: mixed anchors");
    v.match_values.push_back(evaluate_match(store, head, m));
  }
  v.verdict = combine(v.match_values);
  return v;
}

ResourceId slot_entity(const KgStore& store, const GraphPattern& gp, const MatchedSubgraph& m,
                       Slot slot) {
  switch (slot) {
    case Slot::X: return m.anchor;
    case Slot::Y: return gp.shape == Shape::A ? store.temporal(m.first).object : m.linked;
    case Slot::Z: return store.temporal(m.second).object;
    case Slot::Z1: return store.temporal(m.first).object;
    case Slot::Z2: return store.temporal(m.second).object;
  }
  return m.anchor;
}

namespace {

bool holds(const KgStore& store, const ClassRestriction& r, ResourceId x, ResourceId y,
           ResourceId z) {
  for (const auto& [slot, cls] : r) {
    const ResourceId e = slot == Slot::X ? x : slot == Slot::Y ? y : z;
    if (!store.has_class(e, cls)) return false;
  }
  return true;
}

}  // namespace

bool satisfies(const KgStore& store, const GraphPattern& gp, TemporalPredicate head,
               const ClassRestriction& restriction, const MatchedSubgraph& m) {
  if (restriction.empty()) return true;
  if (gp.shape == Shape::B) {
    for (const auto& [slot, cls] : restriction)
      if (!store.has_class(slot_entity(store, gp, m, slot), cls)) return false;
    return true;
  }
  const ResourceId y = store.temporal(m.first).object;
  const ResourceId z = store.temporal(m.second).object;
  if (holds(store, restriction, m.anchor, y, z)) return true;
  return slots_interchangeable(gp, head) && holds(store, restriction, m.anchor, z, y);
}

std::uint64_t compute_support(std::span<const EntityVerdict> verdicts) {
  std::uint64_t n = 0;
  for (const auto& v : verdicts) n += v.verdict != Verdict::Unknown;
  return n;
}

std::optional<double> compute_confidence(std::span<const EntityVerdict> verdicts) {
  std::uint64_t pos = 0;
  for (const auto& v : verdicts) pos += v.verdict == Verdict::Positive;
  const auto support = compute_support(verdicts);
  if (support == 0) return std::nullopt;
  return static_cast<double>(pos) / static_cast<double>(support);
}

Scores score(const KgStore& store, const GraphPattern& gp, TemporalPredicate head,
             const ClassRestriction& restriction, const MatchOptions& opts) {
  Scores s;
  for (ResourceId x : anchors_of(store, gp)) {
    bool any = false;
    bool negative = false;
    bool unknown = false;
    for_each_match(store, gp, head, x, opts, [&](const MatchedSubgraph& m) {
      if (!satisfies(store, gp, head, restriction, m)) return;
      any = true;
      switch (evaluate_match(store, head, m)) {
        case Truth::Unknown: unknown = true; break;
        case Truth::Negative: negative = true; break;
        case Truth::Positive: break;
      }
    });
    if (!any) continue;
    if (unknown)
      ++s.unknowns;
    else if (negative)
      ++s.negatives;
    else
      ++s.positives;
  }
  return s;
}

}  // namespace tcm
