#include "tcm/detector.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "tcm/parallel.hpp"

namespace tcm {

namespace {

void detect_one(const KgStore& store, std::size_t index, const Constraint& c,
                const DetectOptions& options, std::vector<ConflictReport>& out,
                std::uint64_t& unknowns) {
  const auto& gp = c.pattern;
  for (ResourceId x : anchors_of(store, gp)) {
    if (c.head == TemporalPredicate::MutualExclusion) {
      std::set<FactId> involved;
      std::set<FactId> conflicting;
      for_each_match(store, gp, c.head, x, options.match, [&](const MatchedSubgraph& m) {
        if (!satisfies(store, gp, c.head, c.restriction, m)) return;
        involved.insert(m.first);
        involved.insert(m.second);
        if (evaluate_match(store, c.head, m) == Truth::Negative) {
          conflicting.insert(m.first);
          conflicting.insert(m.second);
        }
      });
      if (conflicting.empty()) continue;
      ConflictReport r{index, x, c.head, Truth::Negative, {conflicting.begin(), conflicting.end()},
                       std::nullopt, {}};
      std::set<ResourceId> objects;
      for (FactId f : involved) objects.insert(store.temporal(f).object);
      r.objects.assign(objects.begin(), objects.end());
      out.push_back(std::move(r));
      continue;
    }

    std::vector<ConflictReport> local;
    std::set<std::tuple<FactId, FactId, FactId>> seen;
    for_each_match(store, gp, c.head, x, options.match, [&](const MatchedSubgraph& m) {
      if (!satisfies(store, gp, c.head, c.restriction, m)) return;
      const Truth t = evaluate_match(store, c.head, m);
      if (t == Truth::Unknown) {
        ++unknowns;
        return;
      }
      if (t != Truth::Negative) return;
      const FactId lo = std::min(m.first, m.second);
      const FactId hi = std::max(m.first, m.second);
      if (!seen.emplace(lo, hi, m.link).second) return;
      ConflictReport r{index, x, c.head, t, {lo, hi}, std::nullopt, {}};
      if (lo == hi) r.facts.pop_back();
      if (m.link != kNoFact) r.link = m.link;
      local.push_back(std::move(r));
    });
    std::sort(local.begin(), local.end(), [](const ConflictReport& a, const ConflictReport& b) {
      return std::tie(a.facts, a.link) < std::tie(b.facts, b.link);
    });
    for (auto& r : local) out.push_back(std::move(r));
  }
}

}  // namespace

DetectResult detect(const KgStore& store, std::span<const std::optional<Constraint>> constraints,
                    const DetectOptions& options) {
  std::vector<std::vector<ConflictReport>> per(constraints.size());
  std::vector<std::uint64_t> unknowns(constraints.size(), 0);
  parallel_for(constraints.size(), options.threads, [&](std::size_t i) {
    if (constraints[i]) detect_one(store, i, *constraints[i], options, per[i], unknowns[i]);
  });
  DetectResult result;
  for (std::size_t i = 0; i < per.size(); ++i) {
    for (auto& r : per[i]) result.reports.push_back(std::move(r));
    if (options.count_unknown) result.unknown_matches += unknowns[i];
  }
  return result;
}

std::vector<ConflictReport> detect(const KgStore& store, std::span<const Constraint> constraints,
                                   const DetectOptions& options) {
  std::vector<std::optional<Constraint>> wrapped(constraints.begin(), constraints.end());
  return detect(store, std::span<const std::optional<Constraint>>(wrapped), options).reports;
}

ConflictStats summarize(std::span<const ConflictReport> reports, std::size_t constraint_count,
                        std::size_t top_k) {
  ConflictStats stats;
  stats.per_constraint.assign(constraint_count, 0);
  std::map<ResourceId, std::uint64_t> by_entity;
  for (const auto& r : reports) {
    ++stats.total;
    if (r.constraint_index >= stats.per_constraint.size())
      stats.per_constraint.resize(r.constraint_index + 1, 0);
    ++stats.per_constraint[r.constraint_index];
    ++stats.per_head[r.head];
    ++by_entity[r.anchor];
  }
  stats.top_entities.assign(by_entity.begin(), by_entity.end());
  std::stable_sort(stats.top_entities.begin(), stats.top_entities.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (stats.top_entities.size() > top_k) stats.top_entities.resize(top_k);
  return stats;
}

}  // namespace tcm
