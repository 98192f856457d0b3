#pragma once
// KgStore: interned, immutable store of temporal quads, plain triples and
// entity -> class memberships.
//
// Layout:
// - Dictionary: external id string <-> dense ResourceId (first-seen order)
// - Temporal facts: dense FactId in ingest order, with precomputed day bounds
// - CSR indexes keyed by ResourceId:
//     temporal by subject (id order), temporal by subject sorted (property, id),
//     temporal by property (id order), subjects per property,
//     plain by subject (property, object), plain by object (property, subject),
//     classes per entity (sorted, unique)

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tcm/time.hpp"

namespace tcm {

using ResourceId = std::uint32_t;
using FactId = std::uint32_t;

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TemporalFact {
  FactId id;
  ResourceId subject;
  ResourceId property;
  ResourceId object;
  TimeInterval interval;
};

struct PlainFact {
  FactId id;
  ResourceId subject;
  ResourceId property;
  ResourceId object;
};

class Dictionary {
 public:
  ResourceId intern(std::string_view name);
  std::optional<ResourceId> find(std::string_view name) const;
  const std::string& name(ResourceId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, ResourceId, Hash, std::equal_to<>> ids_;
  std::vector<std::string> names_;
};

struct IngestConfig {
  // External id of the class-membership property (e.g. an instance-of id).
  std::string class_property;
  bool strict = false;
  // In strict mode, ingest fails when malformed lines exceed this fraction.
  double max_malformed_fraction = 0.0;
  // When set, facts whose property is not listed are skipped. The class
  // property is always kept.
  std::optional<std::unordered_set<std::string>> property_allow_list;
};

struct IngestReport {
  std::size_t lines = 0;
  std::size_t temporal = 0;
  std::size_t plain = 0;
  std::size_t duplicates = 0;
  std::size_t malformed = 0;
  std::size_t rejected_intervals = 0;
  std::size_t filtered = 0;
  std::vector<std::string> diagnostics;  // capped at kMaxDiagnostics
  static constexpr std::size_t kMaxDiagnostics = 100;
};

class KgStore;

// Single-writer builder. Interning follows insertion order.
class KgStoreBuilder {
 public:
  explicit KgStoreBuilder(IngestConfig config = {});

  // Parses one TSV or JSONL record. Blank lines and lines starting with '#'
  // are ignored.
  void add_line(std::string_view line);

  // Returns false when the fact was an exact duplicate.
  bool add_temporal(std::string_view s, std::string_view p, std::string_view o,
                    const TimeInterval& interval);
  bool add_plain(std::string_view s, std::string_view p, std::string_view o);

  const IngestReport& report() const { return report_; }

  // Throws IngestError in strict mode when too many lines were malformed.
  KgStore build() &&;

 private:
  void diagnose(std::string message);
  bool allowed(std::string_view property) const;
  void add_record(std::string_view s, std::string_view p, std::string_view o,
                  const std::optional<TimePoint>& ts, const std::optional<TimePoint>& te,
                  bool temporal);
  void parse_tsv(std::string_view line);
  void parse_jsonl(std::string_view line);

  struct TemporalKey {
    ResourceId s, p, o;
    TimeInterval t;
    friend bool operator==(const TemporalKey&, const TemporalKey&) = default;
  };
  struct TemporalKeyHash {
    std::size_t operator()(const TemporalKey& k) const noexcept;
  };
  struct PlainKeyHash {
    std::size_t operator()(const std::array<ResourceId, 3>& k) const noexcept;
  };

  IngestConfig config_;
  IngestReport report_;
  Dictionary dict_;
  std::vector<TemporalFact> temporal_;
  std::vector<PlainFact> plain_;
  std::unordered_set<TemporalKey, TemporalKeyHash> temporal_keys_;
  std::unordered_set<std::array<ResourceId, 3>, PlainKeyHash> plain_keys_;
};

class KgStore {
 public:
  KgStore() = default;

  const Dictionary& dictionary() const { return dict_; }
  const std::string& name(ResourceId id) const { return dict_.name(id); }
  std::optional<ResourceId> find(std::string_view name) const { return dict_.find(name); }
  std::size_t resource_count() const { return dict_.size(); }
  bool is_literal(ResourceId id) const { return !name(id).empty() && name(id)[0] == '"'; }

  std::span<const TemporalFact> temporal_facts() const { return temporal_; }
  std::span<const PlainFact> plain_facts() const { return plain_; }
  const TemporalFact& temporal(FactId id) const { return temporal_[id]; }
  const PlainFact& plain(FactId id) const { return plain_[id]; }
  const IntervalBounds& bounds(FactId id) const { return bounds_[id]; }

  std::optional<ResourceId> class_property() const { return class_property_; }

  // Temporal facts of a subject, ordered by FactId.
  std::span<const FactId> temporal_facts_of(ResourceId subject) const;
  // Temporal facts of (subject, property), ordered by FactId.
  std::span<const FactId> temporal_facts_of(ResourceId subject, ResourceId property) const;
  // Temporal facts with a property, ordered by FactId.
  std::span<const FactId> temporal_by_property(ResourceId property) const;
  // Distinct subjects carrying a temporal property, ascending.
  std::span<const ResourceId> subjects_with(ResourceId property) const;
  // Distinct temporal properties of a subject, ascending.
  std::span<const ResourceId> temporal_properties_of(ResourceId subject) const;
  // Distinct temporal properties in the store, ascending.
  std::span<const ResourceId> temporal_properties() const { return temporal_props_; }

  // Plain facts (x, p, y) with subject x, ordered by (property, object, id).
  std::span<const FactId> plain_facts_from(ResourceId subject) const;
  // Plain facts (y, p, x) with object x, ordered by (property, subject, id).
  std::span<const FactId> plain_facts_to(ResourceId object) const;
  // Plain facts (x, p0, y) whose object y is a resource, ordered by FactId.
  std::vector<FactId> plain_facts_linking(ResourceId subject) const;

  std::span<const ResourceId> classes_of(ResourceId entity) const;
  bool has_class(ResourceId entity, ResourceId cls) const;

 private:
  friend class KgStoreBuilder;

  struct Csr {
    std::vector<std::uint32_t> offsets;  // size = key count + 1
    std::vector<std::uint32_t> values;
    std::span<const std::uint32_t> at(std::uint32_t key) const {
      if (key + 1 >= offsets.size()) return {};
      return {values.data() + offsets[key], values.data() + offsets[key + 1]};
    }
  };

  void build_indexes();

  Dictionary dict_;
  std::optional<ResourceId> class_property_;
  std::vector<TemporalFact> temporal_;
  std::vector<PlainFact> plain_;
  std::vector<IntervalBounds> bounds_;

  Csr temporal_by_subject_;
  Csr temporal_by_subject_property_;  // within a subject: sorted by (property, id)
  Csr temporal_by_property_;
  Csr subjects_by_property_;
  Csr properties_by_subject_;
  Csr plain_by_subject_;
  Csr plain_by_object_;
  Csr classes_;
  std::vector<ResourceId> temporal_props_;
};

// Reads TSV/JSONL records line by line. Throws IngestError when the stream is
// unreadable or strict mode trips.
KgStore ingest(std::istream& in, const IngestConfig& config, IngestReport* report = nullptr);
KgStore ingest_file(const std::filesystem::path& path, const IngestConfig& config,
                    IngestReport* report = nullptr);

// Writes every fact back as TSV (temporal facts first, then plain facts).
void write_tsv(const KgStore& store, std::ostream& out);

}  // namespace tcm
