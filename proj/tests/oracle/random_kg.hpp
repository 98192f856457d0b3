#pragma once
// Small random stores exercising mixed granularities, absent endpoints,
// literals, several classes per entity and plain links in both directions.

#include <random>
#include <string>

#include "tcm/kg_store.hpp"

namespace tcm::oracle {

struct RandomKgConfig {
  std::size_t entities = 120;
  std::size_t temporal_facts = 1500;
  std::size_t plain_links = 300;
  std::size_t temporal_properties = 4;
  std::size_t link_properties = 2;
  std::size_t classes = 5;
  std::size_t objects = 40;  // temporal objects are drawn from a small pool to force repeats
};

inline std::optional<TimePoint> random_point(std::mt19937_64& rng, int base_year) {
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> year(base_year, base_year + 6);
  std::uniform_int_distribution<int> month(1, 12);
  std::uniform_int_distribution<int> day(1, 28);
  const int k = kind(rng);
  if (k == 0) return std::nullopt;
  if (k <= 3) return TimePoint::make(year(rng));
  if (k <= 5) return TimePoint::make(year(rng), month(rng));
  return TimePoint::make(year(rng), month(rng), day(rng));
}

inline KgStore random_store(std::uint64_t seed, const RandomKgConfig& cfg = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  IngestConfig ic;
  ic.class_property = "type";
  KgStoreBuilder b(ic);
  auto entity = [](std::size_t i) { return "e" + std::to_string(i); };

  for (std::size_t e = 0; e < cfg.entities; ++e) {
    const std::size_t k = pick(4);  // 0..3 classes
    for (std::size_t i = 0; i < k; ++i) b.add_plain(entity(e), "type", "c" + std::to_string(pick(cfg.classes)));
  }
  for (std::size_t i = 0; i < cfg.plain_links; ++i) {
    const std::string o = pick(20) == 0 ? "\"lit" + std::to_string(pick(5)) + "\"" : entity(pick(cfg.entities));
    b.add_plain(entity(pick(cfg.entities)), "link" + std::to_string(pick(cfg.link_properties)), o);
  }
  // Subjects cluster on the first few entities so pairs are common.
  const std::size_t subjects = std::max<std::size_t>(1, cfg.entities / 2);
  std::size_t added = 0;
  std::size_t attempts = 0;
  while (added < cfg.temporal_facts && attempts < cfg.temporal_facts * 4) {
    ++attempts;
    const std::string s = entity(pick(subjects));
    const std::string p = "tp" + std::to_string(pick(cfg.temporal_properties));
    const std::string o = pick(25) == 0 ? "\"v" + std::to_string(pick(3)) + "\""
                                        : entity(pick(std::min(cfg.objects, cfg.entities)));
    const int base = 1990 + static_cast<int>(pick(10));
    TimeInterval t{random_point(rng, base), random_point(rng, base + 3)};
    if (!is_well_formed(t)) std::swap(t.start, t.end);
    if (!is_well_formed(t)) continue;
    if (b.add_temporal(s, p, o, t)) ++added;
  }
  return std::move(b).build();
}

}  // namespace tcm::oracle
