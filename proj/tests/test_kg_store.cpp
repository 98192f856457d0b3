#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "random_kg.hpp"
#include "tcm/kg_store.hpp"

using namespace tcm;

namespace {

KgStore from_text(const std::string& text, IngestReport* report = nullptr,
                  IngestConfig config = {"instance_of", false, 0.0, std::nullopt}) {
  std::istringstream in(text);
  return ingest(in, config, report);
}

ResourceId id(const KgStore& s, std::string_view name) {
  auto r = s.find(name);
  EXPECT_TRUE(r.has_value()) << name;
  return r.value_or(0);
}

}  // namespace

TEST(Ingest, CountsTemporalAndPlain) {
  IngestReport rep;
  const auto s = from_text(
      "a\tmember_of\tt1\t1998\t2009\n"
      "a\tmember_of\tt2\t2002\t-\n"
      "b\tspouse\tc\t2001-05\t2004\n"
      "a\tinstance_of\thuman\t-\t-\n"
      "t1\tinstance_of\tclub\n",
      &rep);
  EXPECT_EQ(s.temporal_facts().size(), 3u);
  EXPECT_EQ(s.plain_facts().size(), 2u);
  EXPECT_EQ(rep.temporal, 3u);
  EXPECT_EQ(rep.plain, 2u);
  EXPECT_EQ(rep.malformed, 0u);
}

TEST(Ingest, RejectsReversedInterval) {
  IngestReport rep;
  const auto s = from_text("a\tp\to\t2000\t2001\na\tp\to\t2009\t2002\n", &rep);
  EXPECT_EQ(s.temporal_facts().size(), 1u);
  EXPECT_EQ(rep.rejected_intervals, 1u);
  ASSERT_EQ(rep.diagnostics.size(), 1u);
  EXPECT_NE(rep.diagnostics[0].find("line 2"), std::string::npos);
}

TEST(Ingest, OverlappingCoarseEndpointsAreKept) {
  // 2001-06 .. 2001 may still satisfy start <= end.
  const auto s = from_text("a\tp\to\t2001-06\t2001\n");
  EXPECT_EQ(s.temporal_facts().size(), 1u);
}

TEST(Ingest, DeduplicatesExactQuads) {
  IngestReport rep;
  const auto s = from_text(
      "a\tp\to\t2001\t2002\n"
      "a\tp\to\t2001\t2002\n"
      "a\tp\to\t2001\t2003\n"
      "a\tq\to\n"
      "a\tq\to\t-\t-\n",
      &rep);
  EXPECT_EQ(s.temporal_facts().size(), 2u);
  EXPECT_EQ(s.plain_facts().size(), 1u);
  EXPECT_EQ(rep.duplicates, 2u);
}

TEST(Ingest, TwiceIsIdentical) {
  std::ostringstream text;
  write_tsv(oracle::random_store(11), text);
  const auto a = from_text(text.str());
  const auto b = from_text(text.str());
  ASSERT_EQ(a.resource_count(), b.resource_count());
  for (ResourceId r = 0; r < a.resource_count(); ++r) EXPECT_EQ(a.name(r), b.name(r));
  ASSERT_EQ(a.temporal_facts().size(), b.temporal_facts().size());
  for (FactId f = 0; f < a.temporal_facts().size(); ++f) {
    EXPECT_EQ(a.temporal(f).subject, b.temporal(f).subject);
    EXPECT_EQ(a.temporal(f).interval, b.temporal(f).interval);
  }
}

TEST(Ingest, MalformedLinesCountedNotFatal) {
  IngestReport rep;
  const auto s = from_text(
      "a\tp\n"
      "a\tp\to\t20x1\t2002\n"
      "\n"
      "# comment\n"
      "a\tp\to\t2001\t2002\n",
      &rep);
  EXPECT_EQ(rep.malformed, 2u);
  EXPECT_EQ(s.temporal_facts().size(), 1u);
}

TEST(Ingest, StrictModeFailsOverThreshold) {
  const std::string text = "a\tp\n" "a\tp\to\t2001\t2002\n";
  EXPECT_THROW(from_text(text, nullptr, {"instance_of", true, 0.0, std::nullopt}), IngestError);
  EXPECT_NO_THROW(from_text(text, nullptr, {"instance_of", true, 0.6, std::nullopt}));
  EXPECT_NO_THROW(from_text(text));
}

TEST(Ingest, UnreadableFile) {
  EXPECT_THROW(ingest_file("/nonexistent/facts.tsv", {}), IngestError);
}

TEST(Ingest, PointInTimeColumn) {
  const auto s = from_text("a\tborn_in\tcity\t1950-04-02\n");
  ASSERT_EQ(s.temporal_facts().size(), 1u);
  const auto& t = s.temporal(0).interval;
  EXPECT_EQ(t.start, t.end);
  EXPECT_EQ(t.start->to_string(), "1950-04-02");
}

TEST(Ingest, JsonLines) {
  IngestReport rep;
  const auto s = from_text(
      "{\"s\":\"a\",\"p\":\"member_of\",\"o\":\"t1\",\"ts\":\"1998\",\"te\":\"2009\"}\n"
      "{\"s\":\"a\",\"p\":\"member_of\",\"o\":\"t2\",\"ts\":\"2002\",\"te\":null}\n"
      "{\"s\":\"a\",\"p\":\"born\",\"o\":\"x\",\"t\":\"1970\"}\n"
      "{\"s\":\"a\",\"p\":\"instance_of\",\"o\":\"human\"}\n"
      "{\"s\":\"a\"}\n",
      &rep);
  EXPECT_EQ(s.temporal_facts().size(), 3u);
  EXPECT_EQ(s.plain_facts().size(), 1u);
  EXPECT_EQ(rep.malformed, 1u);
  EXPECT_FALSE(s.temporal(1).interval.end.has_value());
}

TEST(Ingest, AllowListKeepsClassProperty) {
  IngestConfig cfg{"instance_of", false, 0.0, std::unordered_set<std::string>{"member_of"}};
  IngestReport rep;
  const auto s = from_text(
      "a\tmember_of\tt\t2000\t2001\n"
      "a\tspouse\tb\t2000\t2001\n"
      "a\tinstance_of\thuman\n",
      &rep, cfg);
  EXPECT_EQ(s.temporal_facts().size(), 1u);
  EXPECT_EQ(s.plain_facts().size(), 1u);
  EXPECT_EQ(rep.filtered, 1u);
}

TEST(Store, Classes) {
  const auto s = from_text(
      "a\tinstance_of\thuman\n"
      "b\tinstance_of\thuman\n"
      "b\tinstance_of\tathlete\n"
      "b\tmember_of\tc\t2000\t2001\n");
  EXPECT_EQ(s.classes_of(id(s, "a")).size(), 1u);
  EXPECT_TRUE(s.has_class(id(s, "a"), id(s, "human")));
  EXPECT_EQ(s.classes_of(id(s, "b")).size(), 2u);
  EXPECT_TRUE(s.classes_of(id(s, "c")).empty());
  EXPECT_FALSE(s.has_class(id(s, "c"), id(s, "human")));
}

TEST(Store, LookupOrderAndMisses) {
  const auto s = from_text(
      "a\tp\to1\t2000\t2001\n"
      "b\tp\to1\t2000\t2001\n"
      "a\tq\to2\t2000\t2001\n"
      "a\tp\to3\t2003\t2004\n"
      "a\tlink\tb\n"
      "a\tlink\t\"text\"\n");
  const auto a = id(s, "a");
  const auto facts = s.temporal_facts_of(a);
  EXPECT_EQ(std::vector<FactId>(facts.begin(), facts.end()), (std::vector<FactId>{0, 2, 3}));
  const auto ap = s.temporal_facts_of(a, id(s, "p"));
  EXPECT_EQ(std::vector<FactId>(ap.begin(), ap.end()), (std::vector<FactId>{0, 3}));
  EXPECT_TRUE(s.temporal_facts_of(id(s, "o1")).empty());
  EXPECT_TRUE(s.temporal_facts_of(a, id(s, "o1")).empty());
  EXPECT_TRUE(s.is_literal(id(s, "\"text\"")));
  EXPECT_EQ(s.plain_facts_linking(a).size(), 1u);
}

TEST(Store, IndexesAgree) {
  const auto s = oracle::random_store(21);
  for (ResourceId p : s.temporal_properties()) {
    std::vector<FactId> joined;
    for (ResourceId x : s.subjects_with(p))
      for (FactId f : s.temporal_facts_of(x, p)) joined.push_back(f);
    std::sort(joined.begin(), joined.end());
    const auto byp = s.temporal_by_property(p);
    EXPECT_EQ(joined, std::vector<FactId>(byp.begin(), byp.end()));
  }
  std::size_t total = 0;
  for (ResourceId x = 0; x < s.resource_count(); ++x) {
    const auto fs = s.temporal_facts_of(x);
    EXPECT_TRUE(std::is_sorted(fs.begin(), fs.end()));
    for (FactId f : fs) EXPECT_EQ(s.temporal(f).subject, x);
    total += fs.size();
    for (FactId f : s.plain_facts_from(x)) EXPECT_EQ(s.plain(f).subject, x);
    for (FactId f : s.plain_facts_to(x)) EXPECT_EQ(s.plain(f).object, x);
    std::set<ResourceId> classes;
    for (const auto& pf : s.plain_facts())
      if (pf.subject == x && pf.property == *s.class_property()) classes.insert(pf.object);
    const auto got = s.classes_of(x);
    EXPECT_EQ(std::vector<ResourceId>(classes.begin(), classes.end()),
              std::vector<ResourceId>(got.begin(), got.end()));
  }
  EXPECT_EQ(total, s.temporal_facts().size());
}

TEST(Store, InterningRoundTrip) {
  const auto s = oracle::random_store(22);
  for (ResourceId r = 0; r < s.resource_count(); ++r) EXPECT_EQ(s.find(s.name(r)), r);
}

TEST(Store, TsvExportIsFixedPoint) {
  // Start from a store read from TSV: a builder-made fact with no time at
  // all has no TSV spelling distinct from a plain fact.
  std::ostringstream raw;
  write_tsv(oracle::random_store(23), raw);
  const auto s = from_text(raw.str(), nullptr, {"type", false, 0.0, std::nullopt});
  std::ostringstream first;
  write_tsv(s, first);
  const auto t = from_text(first.str(), nullptr, {"type", false, 0.0, std::nullopt});
  std::ostringstream second;
  write_tsv(t, second);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(s.temporal_facts().size(), t.temporal_facts().size());
  EXPECT_EQ(s.plain_facts().size(), t.plain_facts().size());
}
