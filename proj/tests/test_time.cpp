#include <gtest/gtest.h>

#include <random>

#include "tcm/time.hpp"
#include "two_valued.hpp"

using namespace tcm;

namespace {

DayRange range(std::string_view text) {
  if (text == "-") return {kNegInf, kPosInf};
  return to_day_range(TimePoint::parse(text));
}

TimeInterval iv(std::string_view s, std::string_view e) {
  return {parse_time_field(s), parse_time_field(e)};
}

TimeInterval exact(DayIndex s, DayIndex e) { return oracle::to_interval({s, e}); }

}  // namespace

TEST(Kleene, Tables) {
  constexpr Truth P = Truth::Positive, N = Truth::Negative, U = Truth::Unknown;
  EXPECT_EQ(kleene_or(N, U), U);
  EXPECT_EQ(kleene_or(P, U), P);
  EXPECT_EQ(kleene_and(N, U), N);
  EXPECT_EQ(kleene_and(P, U), U);
  EXPECT_EQ(kleene_and(P, P), P);
  EXPECT_EQ(kleene_or(N, N), N);
  EXPECT_EQ(kleene_not(P), N);
  EXPECT_EQ(kleene_not(N), P);
  EXPECT_EQ(kleene_not(U), U);
}

TEST(TimePointParse, AcceptsGranularities) {
  EXPECT_EQ(TimePoint::parse("2022").granularity(), Granularity::Year);
  EXPECT_EQ(TimePoint::parse("2022-01").granularity(), Granularity::Month);
  EXPECT_EQ(TimePoint::parse("2022-01-31").granularity(), Granularity::Day);
  EXPECT_EQ(TimePoint::parse("-0044-03-15").year(), -44);
  EXPECT_EQ(TimePoint::parse("0000").year(), 0);
  EXPECT_EQ(TimePoint::parse("12345").year(), 12345);
}

TEST(TimePointParse, RejectsSloppyLiterals) {
  for (const char* bad : {"", "22", "2022-1", "2022-01-1", " 2022", "2022 ", "2022-13",
                          "2022-00", "2022-02-30", "2021-02-29", "2022/01", "2022-01-01T00",
                          "+2022", "--2022", "2022-", "abcd"}) {
    EXPECT_THROW(TimePoint::parse(bad), ParseError) << bad;
  }
}

TEST(TimePointParse, LeapYears) {
  EXPECT_NO_THROW(TimePoint::parse("2000-02-29"));
  EXPECT_NO_THROW(TimePoint::parse("2024-02-29"));
  EXPECT_THROW(TimePoint::parse("1900-02-29"), ParseError);
  EXPECT_EQ(range("2024-02"), (DayRange{day_index(2024, 2, 1), day_index(2024, 2, 29)}));
  EXPECT_EQ(range("1900-02").hi, day_index(1900, 2, 28));
}

TEST(TimePointParse, RoundTrip) {
  for (const char* s : {"2022", "2022-03", "2022-03-05", "-0001", "-0500-12-31", "0001-01-01"})
    EXPECT_EQ(TimePoint::parse(s).to_string(), s);
  EXPECT_EQ(format_time_field(parse_time_field("-")), "-");
  EXPECT_FALSE(parse_time_field("-").has_value());
}

TEST(DayRanges, Granularity) {
  EXPECT_EQ(range("2022"), (DayRange{day_index(2022, 1, 1), day_index(2022, 12, 31)}));
  EXPECT_EQ(range("2022-12"), (DayRange{day_index(2022, 12, 1), day_index(2022, 12, 31)}));
  EXPECT_TRUE(range("2022-12-05").exact());
  // Proleptic calendar keeps BCE years ordered.
  EXPECT_LT(range("-0001").hi, range("0000").lo);
  EXPECT_EQ(range("0000").hi + 1, range("0001").lo);
}

TEST(DayRanges, LoNotAboveHi) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> y(-3000, 3000), m(1, 12), d(1, 28), g(0, 2);
  for (int i = 0; i < 2000; ++i) {
    const int kind = g(rng);
    const auto t = kind == 0   ? TimePoint::make(y(rng))
                   : kind == 1 ? TimePoint::make(y(rng), m(rng))
                               : TimePoint::make(y(rng), m(rng), d(rng));
    const auto r = to_day_range(t);
    EXPECT_LE(r.lo, r.hi);
    EXPECT_EQ(r.lo == r.hi, t.granularity() == Granularity::Day);
  }
}

TEST(EffectiveBounds, AbsentEndpoints) {
  const auto b = effective_bounds(iv("2002", "-"));
  EXPECT_EQ(b.start, range("2002"));
  EXPECT_EQ(b.end, (DayRange{day_index(2002, 1, 1), kPosInf}));
  const auto c = effective_bounds(iv("-", "2009"));
  EXPECT_EQ(c.start, (DayRange{kNegInf, day_index(2009, 12, 31)}));
  EXPECT_EQ(c.end, range("2009"));
  const auto d = effective_bounds(iv("-", "-"));
  EXPECT_EQ(d.start, (DayRange{kNegInf, kPosInf}));
  EXPECT_EQ(d.end, (DayRange{kNegInf, kPosInf}));
}

TEST(Comparisons, ComparisonTableRows) {
  EXPECT_EQ(cmp_lt(range("2021-12"), range("2022")), Truth::Positive);
  EXPECT_EQ(cmp_eq(range("2021-12"), range("2022")), Truth::Negative);
  EXPECT_EQ(cmp_lt(range("2022-01"), range("2022")), Truth::Unknown);
  EXPECT_EQ(cmp_eq(range("2022-01"), range("2022")), Truth::Unknown);
  EXPECT_EQ(cmp_lt(range("-"), range("2022")), Truth::Unknown);
  EXPECT_EQ(cmp_eq(range("-"), range("2022")), Truth::Unknown);
}

TEST(Comparisons, Equality) {
  EXPECT_EQ(cmp_eq(range("2022-03-05"), range("2022-03-05")), Truth::Positive);
  EXPECT_EQ(cmp_eq(range("2022"), range("2022")), Truth::Unknown);
  EXPECT_EQ(cmp_eq(range("2022-03-05"), range("2022-03-06")), Truth::Negative);
  EXPECT_EQ(cmp_lt(range("2022-03-05"), range("2022-03-05")), Truth::Negative);
  EXPECT_EQ(cmp_le(range("2022-03-05"), range("2022-03-05")), Truth::Positive);
}

TEST(Comparisons, AntisymmetryAndSymmetry) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> y(1995, 2000), m(1, 12), d(1, 28), g(0, 3);
  auto random_range = [&] {
    switch (g(rng)) {
      case 0: return range("-");
      case 1: return to_day_range(TimePoint::make(y(rng)));
      case 2: return to_day_range(TimePoint::make(y(rng), m(rng)));
      default: return to_day_range(TimePoint::make(y(rng), m(rng), d(rng)));
    }
  };
  for (int i = 0; i < 5000; ++i) {
    const auto a = random_range();
    const auto b = random_range();
    if (cmp_lt(a, b) == Truth::Positive) EXPECT_EQ(cmp_lt(b, a), Truth::Negative);
    EXPECT_EQ(cmp_eq(a, b), cmp_eq(b, a));
  }
}

TEST(Predicates, WorkedCases) {
  EXPECT_EQ(eval_predicate(TemporalPredicate::Disjoint, iv("1998", "2009"), iv("2002", "-")),
            Truth::Negative);
  EXPECT_EQ(eval_predicate(TemporalPredicate::Include, iv("1998", "2009"), iv("2002", "2005")),
            Truth::Positive);
  EXPECT_EQ(eval_predicate(TemporalPredicate::Start, iv("2022", "2023"), iv("2022", "2024")),
            Truth::Unknown);
  EXPECT_EQ(eval_predicate(TemporalPredicate::Disjoint, iv("1998", "2001"), iv("2002", "-")),
            Truth::Positive);
  EXPECT_EQ(eval_predicate(TemporalPredicate::Before, iv("1998", "2001"), iv("2002", "-")),
            Truth::Positive);
}

TEST(Predicates, BeforeTouchingEndpoints) {
  // Meeting at one exact day counts as before unless the intervals coincide.
  EXPECT_EQ(eval_predicate(TemporalPredicate::Before, iv("2000-01-01", "2000-05-01"),
                           iv("2000-05-01", "2000-06-01")),
            Truth::Positive);
  EXPECT_EQ(eval_predicate(TemporalPredicate::Before, iv("2000-05-01", "2000-05-01"),
                           iv("2000-05-01", "2000-05-01")),
            Truth::Negative);
  EXPECT_EQ(eval_predicate(TemporalPredicate::Before, iv("2000", "2000"), iv("2000", "2000")),
            Truth::Unknown);
}

TEST(Predicates, MutualExclusionIsHeadOnly) {
  EXPECT_THROW(eval_predicate(TemporalPredicate::MutualExclusion, iv("2000", "2001"),
                              iv("2000", "2001")),
               std::invalid_argument);
}

TEST(Predicates, Names) {
  for (TemporalPredicate p : kAllPredicates) EXPECT_EQ(parse_predicate(to_string(p)), p);
  EXPECT_EQ(to_string(TemporalPredicate::MutualExclusion), "false");
  EXPECT_EQ(parse_predicate("mutual_exclusion"), TemporalPredicate::MutualExclusion);
  EXPECT_FALSE(parse_predicate("overlaps"));
}

namespace {

struct RandomIntervals {
  std::mt19937_64 rng;
  explicit RandomIntervals(std::uint64_t seed) : rng(seed) {}

  std::optional<TimePoint> point() {
    std::uniform_int_distribution<int> g(0, 3), y(2000, 2003), m(1, 12), d(1, 28);
    switch (g(rng)) {
      case 0: return std::nullopt;
      case 1: return TimePoint::make(y(rng));
      case 2: return TimePoint::make(y(rng), m(rng));
      default: return TimePoint::make(y(rng), m(rng), d(rng));
    }
  }
  TimeInterval interval() {
    for (;;) {
      TimeInterval t{point(), point()};
      if (is_well_formed(t)) return t;
    }
  }
};

// A random exact day inside a range clipped to a finite window.
DayIndex sample_in(std::mt19937_64& rng, DayRange r) {
  const DayIndex lo = std::max<DayIndex>(r.lo, day_index(1990, 1, 1));
  const DayIndex hi = std::min<DayIndex>(r.hi, day_index(2015, 12, 31));
  return std::uniform_int_distribution<DayIndex>(lo, hi)(rng);
}

// Narrow an interval by fixing coarse or absent endpoints to exact days
// consistent with the original ranges.
TimeInterval refine(std::mt19937_64& rng, const TimeInterval& t) {
  const auto b = effective_bounds(t);
  for (;;) {
    const DayIndex s = sample_in(rng, b.start);
    const DayIndex e = sample_in(rng, b.end);
    if (s <= e) return exact(s, e);
  }
}

}  // namespace

TEST(Predicates, DisjointSymmetric) {
  RandomIntervals gen(3);
  for (int i = 0; i < 20000; ++i) {
    const auto a = gen.interval();
    const auto b = gen.interval();
    EXPECT_EQ(eval_predicate(TemporalPredicate::Disjoint, a, b),
              eval_predicate(TemporalPredicate::Disjoint, b, a));
    EXPECT_EQ(eval_predicate(TemporalPredicate::Start, a, b),
              eval_predicate(TemporalPredicate::Start, b, a));
    EXPECT_EQ(eval_predicate(TemporalPredicate::Finish, a, b),
              eval_predicate(TemporalPredicate::Finish, b, a));
  }
}

TEST(Predicates, DecidedVerdictsSurviveRefinement) {
  RandomIntervals gen(4);
  std::mt19937_64 rng(5);
  const TemporalPredicate heads[] = {TemporalPredicate::Start, TemporalPredicate::Finish,
                                     TemporalPredicate::Before, TemporalPredicate::Disjoint,
                                     TemporalPredicate::Include};
  for (int i = 0; i < 5000; ++i) {
    const auto a = gen.interval();
    const auto b = gen.interval();
    const auto a2 = refine(rng, a);
    const auto b2 = refine(rng, b);
    for (auto h : heads) {
      const Truth coarse = eval_predicate(h, a, b);
      const Truth fine = eval_predicate(h, a2, b2);
      if (coarse != Truth::Unknown) EXPECT_EQ(coarse, fine) << to_string(h);
      EXPECT_NE(fine, Truth::Unknown);
    }
  }
}

TEST(Predicates, AgreeWithTwoValuedReadingOnExactDays) {
  std::mt19937_64 rng(6);
  // A narrow window makes shared endpoints frequent.
  std::uniform_int_distribution<DayIndex> day(day_index(2000, 1, 1), day_index(2000, 1, 20));
  const TemporalPredicate heads[] = {TemporalPredicate::Start, TemporalPredicate::Finish,
                                     TemporalPredicate::Before, TemporalPredicate::Disjoint,
                                     TemporalPredicate::Include};
  for (int i = 0; i < 5000; ++i) {
    DayIndex a0 = day(rng), a1 = day(rng), b0 = day(rng), b1 = day(rng);
    if (a0 > a1) std::swap(a0, a1);
    if (b0 > b1) std::swap(b0, b1);
    const oracle::ExactInterval a{a0, a1}, b{b0, b1};
    for (auto h : heads) {
      const Truth want = oracle::eval2(h, a, b) ? Truth::Positive : Truth::Negative;
      EXPECT_EQ(eval_predicate(h, oracle::to_interval(a), oracle::to_interval(b)), want)
          << to_string(h);
    }
  }
}
