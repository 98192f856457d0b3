#pragma once
// Granularity-aware time values and three-valued interval predicates.
//
// A coarse time value (a year, or a year and month) denotes the closed range of
// days it could refine to. Comparisons between such ranges are decided only
// when every refinement agrees; otherwise they are Unknown.

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcm {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ordered so that Kleene conjunction is min and disjunction is max.
enum class Truth : std::uint8_t { Negative = 0, Unknown = 1, Positive = 2 };

constexpr Truth kleene_and(Truth a, Truth b) { return a < b ? a : b; }
constexpr Truth kleene_or(Truth a, Truth b) { return a < b ? b : a; }
constexpr Truth kleene_not(Truth a) {
  return static_cast<Truth>(2 - static_cast<int>(a));
}

std::string_view to_string(Truth t);

enum class Granularity : std::uint8_t { Year, Month, Day };

class TimePoint {
 public:
  // Throws std::invalid_argument when month/day are out of range for the year.
  static TimePoint make(int year, std::optional<int> month = std::nullopt,
                        std::optional<int> day = std::nullopt);

  // Strict literal: [-]YYYY[-MM[-DD]], at least four year digits, zero-padded
  // month and day, no whitespace.
  static TimePoint parse(std::string_view text);

  int year() const { return year_; }
  std::optional<int> month() const { return month_; }
  std::optional<int> day() const { return day_; }
  Granularity granularity() const {
    return day_ ? Granularity::Day : month_ ? Granularity::Month : Granularity::Year;
  }

  std::string to_string() const;

  friend bool operator==(const TimePoint&, const TimePoint&) = default;

 private:
  TimePoint(int y, std::optional<int> m, std::optional<int> d)
      : year_(y), month_(m), day_(d) {}

  int year_;
  std::optional<int> month_;
  std::optional<int> day_;
};

// Parses a time column value: "-" is absent, anything else must be a TimePoint.
std::optional<TimePoint> parse_time_field(std::string_view text);
std::string format_time_field(const std::optional<TimePoint>& t);

// Days since 1970-01-01 in the proleptic Gregorian calendar.
using DayIndex = std::int64_t;
inline constexpr DayIndex kNegInf = std::numeric_limits<DayIndex>::min();
inline constexpr DayIndex kPosInf = std::numeric_limits<DayIndex>::max();

DayIndex day_index(int year, int month, int day);

struct DayRange {
  DayIndex lo = kNegInf;
  DayIndex hi = kPosInf;

  bool exact() const { return lo == hi; }
  bool contains(const DayRange& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  friend bool operator==(const DayRange&, const DayRange&) = default;
};

DayRange to_day_range(const TimePoint& t);

struct TimeInterval {
  std::optional<TimePoint> start;
  std::optional<TimePoint> end;

  bool empty() const { return !start && !end; }
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

// False when both endpoints are present and the start is certainly after the end.
bool is_well_formed(const TimeInterval& t);

struct IntervalBounds {
  DayRange start;
  DayRange end;
  friend bool operator==(const IntervalBounds&, const IntervalBounds&) = default;
};

// Ranges of the start and end points. A missing endpoint is bounded by the
// present one through start <= end.
IntervalBounds effective_bounds(const TimeInterval& t);

Truth cmp_lt(const DayRange& a, const DayRange& b);
Truth cmp_eq(const DayRange& a, const DayRange& b);
inline Truth cmp_le(const DayRange& a, const DayRange& b) {
  return kleene_or(cmp_lt(a, b), cmp_eq(a, b));
}

enum class TemporalPredicate : std::uint8_t {
  Start,
  Finish,
  Before,
  Disjoint,
  Include,
  MutualExclusion,
};

inline constexpr TemporalPredicate kAllPredicates[] = {
    TemporalPredicate::Start,   TemporalPredicate::Finish,
    TemporalPredicate::Before,  TemporalPredicate::Disjoint,
    TemporalPredicate::Include, TemporalPredicate::MutualExclusion,
};

std::string_view to_string(TemporalPredicate p);
std::optional<TemporalPredicate> parse_predicate(std::string_view name);

// Argument order does not change the value of these predicates.
constexpr bool is_symmetric(TemporalPredicate p) {
  return p != TemporalPredicate::Before && p != TemporalPredicate::Include;
}

// Throws std::invalid_argument for MutualExclusion, which is a head-only atom.
Truth eval_predicate(TemporalPredicate p, const IntervalBounds& t1,
                     const IntervalBounds& t2);
Truth eval_predicate(TemporalPredicate p, const TimeInterval& t1,
                     const TimeInterval& t2);

}  // namespace tcm
