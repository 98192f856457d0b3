#include "tcm/miner.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "tcm/parallel.hpp"

namespace tcm {

void MiningConfig::validate() const {
  if (theta_freq < 1) throw std::invalid_argument("theta_freq must be >= 1");
  if (theta_accept.den <= 0 || theta_refine.den <= 0)
    throw std::invalid_argument("threshold denominators must be positive");
  const Ratio one{1, 1};
  if (theta_refine.num < 0 || one < theta_accept)
    throw std::invalid_argument("thresholds must lie in [0, 1]");
  if (theta_accept < theta_refine)
    throw std::invalid_argument("theta_refine must not exceed theta_accept");
  if (heads.empty()) throw std::invalid_argument("no head predicates configured");
}

std::vector<TemporalPredicate> heads_for(const KgStore& store, const GraphPattern& gp,
                                         const MiningConfig& config) {
  std::vector<TemporalPredicate> out;
  for (TemporalPredicate h : kAllPredicates) {
    if (std::find(config.heads.begin(), config.heads.end(), h) == config.heads.end()) continue;
    if (gp.shape == Shape::B) {
      if (h == TemporalPredicate::Disjoint || h == TemporalPredicate::MutualExclusion) continue;
    } else if (is_symmetric(h) && store.name(gp.property1) > store.name(gp.property2)) {
      continue;
    }
    out.push_back(h);
  }
  return out;
}

namespace {

struct PatternHash {
  std::size_t operator()(const GraphPattern& g) const noexcept {
    std::size_t h = static_cast<std::size_t>(g.shape) * 31 + static_cast<std::size_t>(g.direction);
    h = h * 1000003u ^ g.link_property;
    h = h * 1000003u ^ g.property1;
    h = h * 1000003u ^ g.property2;
    return h;
  }
};

bool pattern_name_less(const KgStore& store, const GraphPattern& a, const GraphPattern& b) {
  auto key = [&](const GraphPattern& g) {
    return std::make_tuple(g.shape,
                           g.shape == Shape::B ? std::string_view(store.name(g.link_property))
                                               : std::string_view(),
                           g.direction, std::string_view(store.name(g.property1)),
                           std::string_view(store.name(g.property2)));
  };
  return key(a) < key(b);
}

}  // namespace

std::vector<GraphPattern> instantiate_patterns(const KgStore& store, const MiningConfig& config) {
  std::unordered_map<GraphPattern, std::uint64_t, PatternHash> counts;
  std::vector<GraphPattern> seen;
  const auto n = static_cast<ResourceId>(store.resource_count());
  for (ResourceId x = 0; x < n; ++x) {
    const auto props = store.temporal_properties_of(x);
    if (props.empty()) continue;
    for (ResourceId a : props)
      for (ResourceId b : props) ++counts[GraphPattern::a(a, b)];

    seen.clear();
    auto collect = [&](LinkDirection dir, ResourceId p0, ResourceId y) {
      if (y == x || store.is_literal(y)) return;
      for (ResourceId p1 : store.temporal_properties_of(y))
        for (ResourceId p2 : props) seen.push_back(GraphPattern::b(p0, dir, p1, p2));
    };
    for (FactId f : store.plain_facts_from(x)) {
      const auto& pf = store.plain(f);
      collect(LinkDirection::Forward, pf.property, pf.object);
    }
    for (FactId f : store.plain_facts_to(x)) {
      const auto& pf = store.plain(f);
      collect(LinkDirection::Reversed, pf.property, pf.subject);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (const auto& gp : seen) ++counts[gp];
  }
  std::vector<GraphPattern> out;
  for (const auto& [gp, c] : counts)
    if (c >= config.theta_freq) out.push_back(gp);
  std::sort(out.begin(), out.end(),
            [&](const GraphPattern& a, const GraphPattern& b) { return pattern_name_less(store, a, b); });
  return out;
}

namespace {

using ClassCounts = std::map<ResourceId, std::uint64_t>;

std::vector<ResourceId> top_classes(const KgStore& store, const ClassCounts& counts,
                                    std::size_t k) {
  std::vector<std::pair<ResourceId, std::uint64_t>> v(counts.begin(), counts.end());
  std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return store.name(a.first) < store.name(b.first);
  });
  if (v.size() > k) v.resize(k);
  std::vector<ResourceId> out;
  for (const auto& [c, n] : v) out.push_back(c);
  return out;
}

// Restrictable slots for a pattern/head; Z is folded into Y when the two
// slots are interchangeable.
std::vector<Slot> restrictable_slots(const GraphPattern& gp, TemporalPredicate head) {
  if (gp.shape == Shape::B) return {Slot::X, Slot::Y, Slot::Z1, Slot::Z2};
  if (slots_interchangeable(gp, head)) return {Slot::X, Slot::Y};
  return {Slot::X, Slot::Y, Slot::Z};
}

}  // namespace

std::vector<Constraint> refine_constraint(const Constraint& tc, const KgStore& store,
                                          const MiningConfig& config) {
  if (!confidence_at_least(tc.scores, config.theta_refine) ||
      confidence_at_least(tc.scores, config.theta_accept))
    throw std::logic_error("refinement requires theta_refine <= confidence < theta_accept");

  const auto& gp = tc.pattern;
  const bool folded = gp.shape == Shape::A && slots_interchangeable(gp, tc.head);
  const auto slots = restrictable_slots(gp, tc.head);
  std::map<Slot, ClassCounts> per_slot;
  ClassCounts paired;
  std::vector<ResourceId> merged;

  for (ResourceId x : anchors_of(store, gp)) {
    for_each_match(store, gp, tc.head, x, config.match, [&](const MatchedSubgraph& m) {
      if (!satisfies(store, gp, tc.head, tc.restriction, m)) return;
      for (Slot s : slots) {
        if (tc.restriction.contains(s)) continue;
        if (s == Slot::Y && folded) {
          const auto a = store.classes_of(slot_entity(store, gp, m, Slot::Y));
          const auto b = store.classes_of(slot_entity(store, gp, m, Slot::Z));
          merged.clear();
          std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
          for (ResourceId c : merged) ++per_slot[s][c];
        } else {
          for (ResourceId c : store.classes_of(slot_entity(store, gp, m, s))) ++per_slot[s][c];
        }
      }
      if (gp.shape == Shape::A && !tc.restriction.contains(Slot::Y) &&
          !tc.restriction.contains(Slot::Z)) {
        const auto a = store.classes_of(slot_entity(store, gp, m, Slot::Y));
        const auto b = store.classes_of(slot_entity(store, gp, m, Slot::Z));
        merged.clear();
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
        for (ResourceId c : merged) ++paired[c];
      }
    });
  }

  std::vector<ClassRestriction> options;
  for (const auto& [slot, counts] : per_slot) {
    for (ResourceId c : top_classes(store, counts, config.max_classes_per_slot)) {
      ClassRestriction r = tc.restriction;
      r[slot] = c;
      options.push_back(std::move(r));
    }
  }
  for (ResourceId c : top_classes(store, paired, config.max_classes_per_slot)) {
    ClassRestriction r = tc.restriction;
    r[Slot::Y] = c;
    r[Slot::Z] = c;
    options.push_back(std::move(r));
  }

  std::vector<Constraint> out;
  for (auto& r : options) {
    Constraint rc{gp, tc.head, std::move(r), {}};
    rc.scores = score(store, gp, rc.head, rc.restriction, config.match);
    if (rc.scores.support() >= config.theta_freq &&
        confidence_at_least(rc.scores, config.theta_accept))
      out.push_back(std::move(rc));
  }
  std::sort(out.begin(), out.end(),
            [&](const Constraint& a, const Constraint& b) { return output_before(store, a, b); });
  return out;
}

MiningResult mine(const KgStore& store, const MiningConfig& config) {
  config.validate();
  MiningResult result;
  result.patterns = instantiate_patterns(store, config);
  result.stats.patterns = result.patterns.size();

  std::vector<std::vector<Constraint>> per_pattern(result.patterns.size());
  parallel_for(result.patterns.size(), config.threads, [&](std::size_t i) {
    const auto& gp = result.patterns[i];
    for (TemporalPredicate h : heads_for(store, gp, config)) {
      Constraint c{gp, h, {}, score(store, gp, h, {}, config.match)};
      if (c.scores.support() >= config.theta_freq) per_pattern[i].push_back(c);
    }
  });
  for (auto& v : per_pattern)
    for (auto& c : v) result.candidates.push_back(std::move(c));
  auto order = [&](const Constraint& a, const Constraint& b) { return output_before(store, a, b); };
  std::sort(result.candidates.begin(), result.candidates.end(), order);
  result.stats.candidates = result.candidates.size();

  std::vector<std::size_t> to_refine;
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const auto& c = result.candidates[i];
    if (confidence_at_least(c.scores, config.theta_accept)) {
      result.constraints.push_back(c);
      ++result.stats.accepted;
    } else if (confidence_at_least(c.scores, config.theta_refine)) {
      to_refine.push_back(i);
    } else {
      ++result.stats.discarded;
    }
  }
  result.stats.refinement_attempts = to_refine.size();

  std::vector<std::vector<Constraint>> refined(to_refine.size());
  parallel_for(to_refine.size(), config.threads, [&](std::size_t i) {
    refined[i] = refine_constraint(result.candidates[to_refine[i]], store, config);
  });
  for (auto& v : refined) {
    result.stats.refined += v.size();
    for (auto& c : v) result.constraints.push_back(std::move(c));
  }
  std::sort(result.constraints.begin(), result.constraints.end(), order);
  return result;
}

}  // namespace tcm
