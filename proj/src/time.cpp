#include "tcm/time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace tcm {

namespace {

namespace chr = std::chrono;

constexpr int kMinYear = -32767;
constexpr int kMaxYear = 32767;

bool all_digits(std::string_view s) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("time value out of range: " + std::string(s));
  return v;
}

unsigned last_day_of_month(int year, int month) {
  return static_cast<unsigned>(
      chr::year_month_day_last{chr::year{year} / chr::month{static_cast<unsigned>(month)} /
                               chr::last}
          .day());
}

}  // namespace

std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::Positive: return "positive";
    case Truth::Negative: return "negative";
    case Truth::Unknown: return "unknown";
  }
  return "unknown";
}

TimePoint TimePoint::make(int year, std::optional<int> month, std::optional<int> day) {
  if (year < kMinYear || year > kMaxYear)
    throw std::invalid_argument("year out of supported range");
  if (day && !month) throw std::invalid_argument("day requires month");
  if (month && (*month < 1 || *month > 12))
    throw std::invalid_argument("month out of range");
  if (day && (*day < 1 || static_cast<unsigned>(*day) > last_day_of_month(year, *month)))
    throw std::invalid_argument("day out of range");
  return TimePoint(year, month, day);
}

TimePoint TimePoint::parse(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto first_dash = text.find('-');
  const std::string_view year_part = text.substr(0, first_dash);
  if (year_part.size() < 4 || !all_digits(year_part))
    throw ParseError("malformed year in time value '" + original + "'");
  int year = to_int(year_part);
  if (negative) year = -year;

  std::optional<int> month;
  std::optional<int> day;
  if (first_dash != std::string_view::npos) {
    std::string_view rest = text.substr(first_dash + 1);
    const auto second_dash = rest.find('-');
    const std::string_view month_part = rest.substr(0, second_dash);
    if (month_part.size() != 2 || !all_digits(month_part))
      throw ParseError("malformed month in time value '" + original + "'");
    month = to_int(month_part);
    if (second_dash != std::string_view::npos) {
      const std::string_view day_part = rest.substr(second_dash + 1);
      if (day_part.size() != 2 || !all_digits(day_part))
        throw ParseError("malformed day in time value '" + original + "'");
      day = to_int(day_part);
    }
  }
  try {
    return make(year, month, day);
  } catch (const std::invalid_argument& e) {
    throw ParseError("invalid time value '" + original + "': " + e.what());
  }
}

std::string TimePoint::to_string() const {
  char buf[32];
  const int abs_year = year_ < 0 ? -year_ : year_;
  int n = std::snprintf(buf, sizeof buf, "%s%04d", year_ < 0 ? "-" : "", abs_year);
  if (month_) n += std::snprintf(buf + n, sizeof buf - n, "-%02d", *month_);
  if (day_) std::snprintf(buf + n, sizeof buf - n, "-%02d", *day_);
  return buf;
}

std::optional<TimePoint> parse_time_field(std::string_view text) {
  if (text == "-") return std::nullopt;
  return TimePoint::parse(text);
}

std::string format_time_field(const std::optional<TimePoint>& t) {
  return t ? t->to_string() : std::string("-");
}

DayIndex day_index(int year, int month, int day) {
  const chr::sys_days d{chr::year{year} / chr::month{static_cast<unsigned>(month)} /
                        chr::day{static_cast<unsigned>(day)}};
  return d.time_since_epoch().count();
}

DayRange to_day_range(const TimePoint& t) {
  if (t.day()) {
    const DayIndex d = day_index(t.year(), *t.month(), *t.day());
    return {d, d};
  }
  if (t.month()) {
    return {day_index(t.year(), *t.month(), 1),
            day_index(t.year(), *t.month(),
                      static_cast<int>(last_day_of_month(t.year(), *t.month())))};
  }
  return {day_index(t.year(), 1, 1), day_index(t.year(), 12, 31)};
}

bool is_well_formed(const TimeInterval& t) {
  if (!t.start || !t.end) return true;
  return to_day_range(*t.start).lo <= to_day_range(*t.end).hi;
}

IntervalBounds effective_bounds(const TimeInterval& t) {
  IntervalBounds b;
  if (t.start) b.start = to_day_range(*t.start);
  if (t.end) b.end = to_day_range(*t.end);
  if (!t.start && t.end) b.start = {kNegInf, b.end.hi};
  if (t.start && !t.end) b.end = {b.start.lo, kPosInf};
  return b;
}

Truth cmp_lt(const DayRange& a, const DayRange& b) {
  if (a.hi < b.lo) return Truth::Positive;
  if (a.lo >= b.hi) return Truth::Negative;
  return Truth::Unknown;
}

Truth cmp_eq(const DayRange& a, const DayRange& b) {
  if (a.exact() && b.exact() && a.lo == b.lo) return Truth::Positive;
  if (a.hi < b.lo || b.hi < a.lo) return Truth::Negative;
  return Truth::Unknown;
}

std::string_view to_string(TemporalPredicate p) {
  switch (p) {
    case TemporalPredicate::Start: return "start";
    case TemporalPredicate::Finish: return "finish";
    case TemporalPredicate::Before: return "before";
    case TemporalPredicate::Disjoint: return "disjoint";
    case TemporalPredicate::Include: return "include";
    case TemporalPredicate::MutualExclusion: return "false";
  }
  return "?";
}

std::optional<TemporalPredicate> parse_predicate(std::string_view name) {
  for (TemporalPredicate p : kAllPredicates)
    if (to_string(p) == name) return p;
  if (name == "mutual_exclusion") return TemporalPredicate::MutualExclusion;
  return std::nullopt;
}

namespace {

Truth before(const IntervalBounds& t1, const IntervalBounds& t2) {
  const Truth differ =
      kleene_not(kleene_and(cmp_eq(t1.start, t2.start), cmp_eq(t1.end, t2.end)));
  return kleene_or(cmp_lt(t1.end, t2.start),
                   kleene_and(cmp_eq(t1.end, t2.start), differ));
}

}  // namespace

Truth eval_predicate(TemporalPredicate p, const IntervalBounds& t1,
                     const IntervalBounds& t2) {
  switch (p) {
    case TemporalPredicate::Start: return cmp_eq(t1.start, t2.start);
    case TemporalPredicate::Finish: return cmp_eq(t1.end, t2.end);
    case TemporalPredicate::Before: return before(t1, t2);
    case TemporalPredicate::Disjoint: return kleene_or(before(t1, t2), before(t2, t1));
    case TemporalPredicate::Include:
      return kleene_and(cmp_le(t1.start, t2.start), cmp_le(t2.end, t1.end));
    case TemporalPredicate::MutualExclusion: break;
  }
  throw std::invalid_argument("mutual exclusion is not evaluated over intervals");
}

Truth eval_predicate(TemporalPredicate p, const TimeInterval& t1, const TimeInterval& t2) {
  return eval_predicate(p, effective_bounds(t1), effective_bounds(t2));
}

}  // namespace tcm
