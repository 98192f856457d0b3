#include "tcm/kg_store.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include <json.hpp>

namespace tcm {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::int64_t encode(const std::optional<TimePoint>& t) {
  if (!t) return std::numeric_limits<std::int64_t>::min();
  return (static_cast<std::int64_t>(t->year()) * 100 + t->month().value_or(0)) * 100 +
         t->day().value_or(0);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t pos = 0;
  while (true) {
    const auto tab = line.find('\t', pos);
    cols.push_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return cols;
}

// Stable counting sort of `items` by key into a CSR table.
template <class KeyFn>
void fill_csr(std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& values,
              std::size_t key_count, const std::vector<std::uint32_t>& items, KeyFn key) {
  offsets.assign(key_count + 1, 0);
  for (auto v : items) ++offsets[key(v) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  values.assign(items.size(), 0);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (auto v : items) values[cursor[key(v)]++] = v;
}

}  // namespace

ResourceId Dictionary::intern(std::string_view name) {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  const auto id = static_cast<ResourceId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<ResourceId> Dictionary::find(std::string_view name) const {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  return std::nullopt;
}

std::size_t KgStoreBuilder::TemporalKeyHash::operator()(const TemporalKey& k) const noexcept {
  std::size_t h = mix(k.s, k.p);
  h = mix(h, k.o);
  h = mix(h, static_cast<std::size_t>(encode(k.t.start)));
  return mix(h, static_cast<std::size_t>(encode(k.t.end)));
}

std::size_t KgStoreBuilder::PlainKeyHash::operator()(
    const std::array<ResourceId, 3>& k) const noexcept {
  return mix(mix(k[0], k[1]), k[2]);
}

KgStoreBuilder::KgStoreBuilder(IngestConfig config) : config_(std::move(config)) {}

void KgStoreBuilder::diagnose(std::string message) {
  if (report_.diagnostics.size() < IngestReport::kMaxDiagnostics)
    report_.diagnostics.push_back(std::move(message));
}

bool KgStoreBuilder::allowed(std::string_view property) const {
  if (!config_.property_allow_list) return true;
  if (property == config_.class_property) return true;
  return config_.property_allow_list->contains(std::string(property));
}

bool KgStoreBuilder::add_temporal(std::string_view s, std::string_view p, std::string_view o,
                                  const TimeInterval& interval) {
  TemporalKey key{dict_.intern(s), dict_.intern(p), dict_.intern(o), interval};
  if (!temporal_keys_.insert(key).second) {
    ++report_.duplicates;
    return false;
  }
  temporal_.push_back({static_cast<FactId>(temporal_.size()), key.s, key.p, key.o, interval});
  ++report_.temporal;
  return true;
}

bool KgStoreBuilder::add_plain(std::string_view s, std::string_view p, std::string_view o) {
  std::array<ResourceId, 3> key{dict_.intern(s), dict_.intern(p), dict_.intern(o)};
  if (!plain_keys_.insert(key).second) {
    ++report_.duplicates;
    return false;
  }
  plain_.push_back({static_cast<FactId>(plain_.size()), key[0], key[1], key[2]});
  ++report_.plain;
  return true;
}

void KgStoreBuilder::add_record(std::string_view s, std::string_view p, std::string_view o,
                                const std::optional<TimePoint>& ts,
                                const std::optional<TimePoint>& te, bool temporal) {
  if (s.empty() || p.empty() || o.empty()) {
    ++report_.malformed;
    diagnose("line " + std::to_string(report_.lines) + ": empty subject, property or object");
    return;
  }
  if (!allowed(p)) {
    ++report_.filtered;
    return;
  }
  if (!temporal) {
    add_plain(s, p, o);
    return;
  }
  TimeInterval interval{ts, te};
  if (!is_well_formed(interval)) {
    ++report_.rejected_intervals;
    diagnose("line " + std::to_string(report_.lines) + ": interval starts after it ends (" +
             format_time_field(ts) + " > " + format_time_field(te) + ")");
    return;
  }
  add_temporal(s, p, o, interval);
}

void KgStoreBuilder::parse_tsv(std::string_view line) {
  const auto cols = split_tabs(line);
  if (cols.size() < 3 || cols.size() > 5) {
    ++report_.malformed;
    diagnose("line " + std::to_string(report_.lines) + ": expected 3 to 5 tab-separated columns, got " +
             std::to_string(cols.size()));
    return;
  }
  std::optional<TimePoint> ts;
  std::optional<TimePoint> te;
  try {
    if (cols.size() == 4) {
      // point in time
      ts = te = parse_time_field(cols[3]);
    } else if (cols.size() == 5) {
      ts = parse_time_field(cols[3]);
      te = parse_time_field(cols[4]);
    }
  } catch (const ParseError& e) {
    ++report_.malformed;
    diagnose("line " + std::to_string(report_.lines) + ": " + e.what());
    return;
  }
  add_record(cols[0], cols[1], cols[2], ts, te, ts || te);
}

void KgStoreBuilder::parse_jsonl(std::string_view line) {
  using nlohmann::json;
  const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  auto str = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
    return j[key].get<std::string>();
  };
  auto time = [&](const char* key) -> std::optional<TimePoint> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_string()) throw ParseError(std::string("non-string time field ") + key);
    return parse_time_field(j[key].get<std::string>());
  };
  if (j.is_discarded() || !j.is_object()) {
    ++report_.malformed;
    diagnose("line " + std::to_string(report_.lines) + ": invalid JSON object");
    return;
  }
  const auto s = str("s");
  const auto p = str("p");
  const auto o = str("o");
  if (!s || !p || !o) {
    ++report_.malformed;
    diagnose("line " + std::to_string(report_.lines) + ": missing s, p or o");
    return;
  }
  std::optional<TimePoint> ts;
  std::optional<TimePoint> te;
  try {
    if (j.contains("t")) {
      ts = te = time("t");
    } else {
      ts = time("ts");
      te = time("te");
    }
  } catch (const ParseError& e) {
    ++report_.malformed;
    diagnose("line " + std::to_string(report_.lines) + ": " + e.what());
    return;
  }
  add_record(*s, *p, *o, ts, te, ts || te);
}

void KgStoreBuilder::add_line(std::string_view line) {
  ++report_.lines;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty() || line.front() == '#') return;
  if (line.front() == '{')
    parse_jsonl(line);
  else
    parse_tsv(line);
}

KgStore KgStoreBuilder::build() && {
  if (config_.strict && report_.lines > 0) {
    const double fraction =
        static_cast<double>(report_.malformed) / static_cast<double>(report_.lines);
    if (report_.malformed > 0 && fraction > config_.max_malformed_fraction)
      throw IngestError("strict mode: " + std::to_string(report_.malformed) + " of " +
                        std::to_string(report_.lines) + " lines malformed");
  }
  KgStore store;
  if (!config_.class_property.empty())
    store.class_property_ = dict_.intern(config_.class_property);
  store.dict_ = std::move(dict_);
  store.temporal_ = std::move(temporal_);
  store.plain_ = std::move(plain_);
  temporal_keys_.clear();
  plain_keys_.clear();
  store.build_indexes();
  return store;
}

void KgStore::build_indexes() {
  const std::size_t keys = dict_.size();

  bounds_.clear();
  bounds_.reserve(temporal_.size());
  for (const auto& f : temporal_) bounds_.push_back(effective_bounds(f.interval));

  std::vector<std::uint32_t> ids(temporal_.size());
  std::iota(ids.begin(), ids.end(), 0u);
  fill_csr(temporal_by_subject_.offsets, temporal_by_subject_.values, keys, ids,
           [&](FactId f) { return temporal_[f].subject; });
  fill_csr(temporal_by_property_.offsets, temporal_by_property_.values, keys, ids,
           [&](FactId f) { return temporal_[f].property; });
  // values of temporal_by_property_ are ordered by (property, id); a stable
  // pass by subject keeps that order inside each subject.
  fill_csr(temporal_by_subject_property_.offsets, temporal_by_subject_property_.values, keys,
           temporal_by_property_.values, [&](FactId f) { return temporal_[f].subject; });

  {
    subjects_by_property_.offsets.assign(keys + 1, 0);
    subjects_by_property_.values.clear();
    for (std::size_t p = 0; p < keys; ++p) {
      auto facts = temporal_by_property_.at(static_cast<std::uint32_t>(p));
      std::vector<ResourceId> subjects;
      subjects.reserve(facts.size());
      for (FactId f : facts) subjects.push_back(temporal_[f].subject);
      std::sort(subjects.begin(), subjects.end());
      subjects.erase(std::unique(subjects.begin(), subjects.end()), subjects.end());
      subjects_by_property_.values.insert(subjects_by_property_.values.end(), subjects.begin(),
                                          subjects.end());
      subjects_by_property_.offsets[p + 1] =
          static_cast<std::uint32_t>(subjects_by_property_.values.size());
    }
  }
  {
    properties_by_subject_.offsets.assign(keys + 1, 0);
    properties_by_subject_.values.clear();
    for (std::size_t s = 0; s < keys; ++s) {
      ResourceId last = 0;
      bool any = false;
      for (FactId f : temporal_by_subject_property_.at(static_cast<std::uint32_t>(s))) {
        const ResourceId p = temporal_[f].property;
        if (!any || p != last) properties_by_subject_.values.push_back(p);
        last = p;
        any = true;
      }
      properties_by_subject_.offsets[s + 1] =
          static_cast<std::uint32_t>(properties_by_subject_.values.size());
    }
  }
  temporal_props_.clear();
  for (std::size_t p = 0; p < keys; ++p)
    if (!temporal_by_property_.at(static_cast<std::uint32_t>(p)).empty())
      temporal_props_.push_back(static_cast<ResourceId>(p));

  std::vector<std::uint32_t> plain_ids(plain_.size());
  std::iota(plain_ids.begin(), plain_ids.end(), 0u);
  auto by_po = plain_ids;
  std::sort(by_po.begin(), by_po.end(), [&](FactId a, FactId b) {
    const auto& x = plain_[a];
    const auto& y = plain_[b];
    return std::tie(x.property, x.object, x.id) < std::tie(y.property, y.object, y.id);
  });
  fill_csr(plain_by_subject_.offsets, plain_by_subject_.values, keys, by_po,
           [&](FactId f) { return plain_[f].subject; });
  auto by_ps = plain_ids;
  std::sort(by_ps.begin(), by_ps.end(), [&](FactId a, FactId b) {
    const auto& x = plain_[a];
    const auto& y = plain_[b];
    return std::tie(x.property, x.subject, x.id) < std::tie(y.property, y.subject, y.id);
  });
  fill_csr(plain_by_object_.offsets, plain_by_object_.values, keys, by_ps,
           [&](FactId f) { return plain_[f].object; });

  classes_.offsets.assign(keys + 1, 0);
  classes_.values.clear();
  for (std::size_t e = 0; e < keys; ++e) {
    if (class_property_) {
      std::vector<ResourceId> cls;
      for (FactId f : plain_by_subject_.at(static_cast<std::uint32_t>(e))) {
        const auto& pf = plain_[f];
        if (pf.property == *class_property_ && !is_literal(pf.object)) cls.push_back(pf.object);
      }
      std::sort(cls.begin(), cls.end());
      cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
      classes_.values.insert(classes_.values.end(), cls.begin(), cls.end());
    }
    classes_.offsets[e + 1] = static_cast<std::uint32_t>(classes_.values.size());
  }
}

std::span<const FactId> KgStore::temporal_facts_of(ResourceId subject) const {
  return temporal_by_subject_.at(subject);
}

std::span<const FactId> KgStore::temporal_facts_of(ResourceId subject,
                                                   ResourceId property) const {
  auto all = temporal_by_subject_property_.at(subject);
  auto lo = std::lower_bound(all.begin(), all.end(), property,
                             [&](FactId f, ResourceId p) { return temporal_[f].property < p; });
  auto hi = std::upper_bound(lo, all.end(), property,
                             [&](ResourceId p, FactId f) { return p < temporal_[f].property; });
  return {lo, hi};
}

std::span<const FactId> KgStore::temporal_by_property(ResourceId property) const {
  return temporal_by_property_.at(property);
}

std::span<const ResourceId> KgStore::subjects_with(ResourceId property) const {
  return subjects_by_property_.at(property);
}

std::span<const ResourceId> KgStore::temporal_properties_of(ResourceId subject) const {
  return properties_by_subject_.at(subject);
}

std::span<const FactId> KgStore::plain_facts_from(ResourceId subject) const {
  return plain_by_subject_.at(subject);
}

std::span<const FactId> KgStore::plain_facts_to(ResourceId object) const {
  return plain_by_object_.at(object);
}

std::vector<FactId> KgStore::plain_facts_linking(ResourceId subject) const {
  std::vector<FactId> out;
  for (FactId f : plain_by_subject_.at(subject))
    if (!is_literal(plain_[f].object)) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

std::span<const ResourceId> KgStore::classes_of(ResourceId entity) const {
  return classes_.at(entity);
}

bool KgStore::has_class(ResourceId entity, ResourceId cls) const {
  auto c = classes_.at(entity);
  return std::binary_search(c.begin(), c.end(), cls);
}

KgStore ingest(std::istream& in, const IngestConfig& config, IngestReport* report) {
  if (!in) throw IngestError("unreadable input stream");
  KgStoreBuilder builder(config);
  std::string line;
  while (std::getline(in, line)) builder.add_line(line);
  if (in.bad()) throw IngestError("read error while ingesting facts");
  if (report) *report = builder.report();
  return std::move(builder).build();
}

KgStore ingest_file(const std::filesystem::path& path, const IngestConfig& config,
                    IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open fact file " + path.string());
  return ingest(in, config, report);
}

void write_tsv(const KgStore& store, std::ostream& out) {
  for (const auto& f : store.temporal_facts()) {
    out << store.name(f.subject) << '\t' << store.name(f.property) << '\t'
        << store.name(f.object) << '\t' << format_time_field(f.interval.start) << '\t'
        << format_time_field(f.interval.end) << '\n';
  }
  for (const auto& f : store.plain_facts()) {
    out << store.name(f.subject) << '\t' << store.name(f.property) << '\t'
        << store.name(f.object) << "\t-\t-\n";
  }
}

}  // namespace tcm
