#pragma once
// Graph patterns, class restrictions and scored constraints.
//
// Shape A:  (x, p1, y, t1), (x, p2, z, t2)            head over (t1, t2)
// Shape B:  (x, p0, y) or (y, p0, x) when reversed,
//           (y, p1, z1, t1), (x, p2, z2, t2)           head over (t1, t2)
// The anchor x is the entity that receives a verdict.

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "tcm/kg_store.hpp"
#include "tcm/time.hpp"

namespace tcm {

enum class Shape : std::uint8_t { A, B };
enum class LinkDirection : std::uint8_t { Forward, Reversed };

std::string_view to_string(Shape s);
std::string_view to_string(LinkDirection d);

struct GraphPattern {
  Shape shape = Shape::A;
  ResourceId link_property = 0;  // shape B only
  LinkDirection direction = LinkDirection::Forward;  // shape B only
  ResourceId property1 = 0;
  ResourceId property2 = 0;

  static GraphPattern a(ResourceId p1, ResourceId p2) {
    return {Shape::A, 0, LinkDirection::Forward, p1, p2};
  }
  static GraphPattern b(ResourceId p0, LinkDirection dir, ResourceId p1, ResourceId p2) {
    return {Shape::B, p0, dir, p1, p2};
  }

  bool same_property() const { return shape == Shape::A && property1 == property2; }

  friend auto operator<=>(const GraphPattern&, const GraphPattern&) = default;
};

enum class Slot : std::uint8_t { X, Y, Z, Z1, Z2 };

std::string_view to_string(Slot s);
std::optional<Slot> parse_slot(std::string_view name);
bool slot_valid_for(Slot s, Shape shape);

// Slot -> required class. Empty means unrestricted.
using ClassRestriction = std::map<Slot, ResourceId>;

struct Scores {
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  std::uint64_t unknowns = 0;

  std::uint64_t support() const { return positives + negatives; }
  std::uint64_t entities() const { return positives + negatives + unknowns; }
  // Undefined (nullopt) when there is no decided evidence.
  std::optional<double> confidence() const {
    if (support() == 0) return std::nullopt;
    return static_cast<double>(positives) / static_cast<double>(support());
  }
  friend bool operator==(const Scores&, const Scores&) = default;
};

// Exact non-negative rational used for thresholds.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Accepts decimal text such as "0.9", "1", "3/4".
  static Ratio parse(std::string_view text);
  // Goes through the shortest decimal text that round-trips the double.
  static Ratio from_double(double v);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

bool operator<(const Ratio& a, const Ratio& b);
inline bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }

// positives / support >= r, compared exactly. False when support is 0.
bool confidence_at_least(const Scores& s, const Ratio& r);

struct Constraint {
  GraphPattern pattern;
  TemporalPredicate head = TemporalPredicate::Disjoint;
  ClassRestriction restriction;
  Scores scores;

  bool refined() const { return !restriction.empty(); }
};

// Total order used for output: confidence desc, support desc, then pattern
// identity by external ids so the order does not depend on interning.
bool output_before(const KgStore& store, const Constraint& a, const Constraint& b);

// Identity (pattern, head, restriction) ignoring scores, keyed by external ids.
std::string constraint_key(const KgStore& store, const Constraint& c);

}  // namespace tcm
