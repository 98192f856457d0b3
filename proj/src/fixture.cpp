#include "tcm/fixture.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "tcm/time.hpp"

namespace tcm {

namespace {

namespace chr = std::chrono;

// mt19937_64 output is fully specified, unlike the standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  // k distinct indices from [0, n)
  std::vector<std::size_t> distinct(std::size_t k, std::size_t n) {
    std::vector<std::size_t> out;
    while (out.size() < k) {
      const auto i = index(n);
      if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

DayIndex day(int y, int m, int d) { return day_index(y, m, d); }

std::string date(DayIndex d) {
  const chr::year_month_day ymd{chr::sys_days{chr::days{d}}};
  return TimePoint::make(static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
                         static_cast<int>(static_cast<unsigned>(ymd.day())))
      .to_string();
}

struct Stint {
  DayIndex start;
  DayIndex end;
};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void temporal(const std::string& s, const char* p, const std::string& o, const std::string& ts,
                const std::string& te) {
    out_ << s << '\t' << p << '\t' << o << '\t' << ts << '\t' << te << '\n';
    ++temporal_;
  }
  void temporal(const std::string& s, const char* p, const std::string& o, const Stint& t) {
    temporal(s, p, o, date(t.start), date(t.end));
  }
  void plain(const std::string& s, const char* p, const std::string& o) {
    out_ << s << '\t' << p << '\t' << o << "\t-\t-\n";
    ++plain_;
  }
  std::size_t temporal_count() const { return temporal_; }
  std::size_t plain_count() const { return plain_; }

 private:
  std::ostream& out_;
  std::size_t temporal_ = 0;
  std::size_t plain_ = 0;
};

std::string id(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

constexpr const char* kMemberOf = "member_of_sports_team";
constexpr const char* kBirthplace = "place_of_birth";
constexpr const char* kAdvisor = "doctoral_advisor";
constexpr const char* kEducatedAt = "educated_at";
constexpr const char* kDegree = "academic_degree";
constexpr const char* kClub = "sports_club";
constexpr const char* kNational = "national_association_football_team";
constexpr const char* kNoiseProperties[] = {"noise_property_1", "noise_property_2",
                                            "noise_property_3"};

}  // namespace

void FixtureConfig::validate() const {
  for (double p : {national_share, cross_overlap, club_exception, national_exception,
                   birthplace_noise, advisor_exception}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("fixture rates must lie in [0, 1]");
  }
  if (!(noise >= 0.0 && noise <= 10.0)) throw std::invalid_argument("noise fraction out of range");
  if (size > 50'000'000) throw std::invalid_argument("fixture size too large");
}

FixtureManifest generate_fixture(const FixtureConfig& config, std::ostream& out) {
  config.validate();
  FixtureManifest manifest;
  manifest.seed = config.seed;
  manifest.size = config.size;
  manifest.class_property = kFixtureClassProperty;
  if (config.size == 0) return manifest;

  Rng rng(config.seed);
  Writer w(out);
  const std::size_t n_athletes = config.size;
  const std::size_t n_persons = config.size / 2;
  const std::size_t n_students = config.size / 2;
  const std::size_t n_advisors = n_students == 0 ? 0 : std::max<std::size_t>(1, n_students / 5);
  const std::size_t n_clubs = std::max<std::size_t>(20, config.size / 20);
  const std::size_t n_national = 50;
  const std::size_t n_cities = 200;
  const std::size_t n_universities = 100;
  const std::size_t n_degrees = 6;

  for (std::size_t i = 0; i < n_clubs; ++i) w.plain(id("club_", i), kFixtureClassProperty, kClub);
  for (std::size_t i = 0; i < n_national; ++i)
    w.plain(id("national_team_", i), kFixtureClassProperty, kNational);
  for (std::size_t i = 0; i < n_cities; ++i) w.plain(id("city_", i), kFixtureClassProperty, "city");
  for (std::size_t i = 0; i < n_universities; ++i)
    w.plain(id("university_", i), kFixtureClassProperty, "university");

  // Athletes.
  for (std::size_t a = 0; a < n_athletes; ++a) {
    const std::string x = id("athlete_", a);
    const auto k = static_cast<std::size_t>(rng.uniform(2, 4));
    std::vector<Stint> clubs;
    DayIndex t = day(1980, 1, 1) + rng.uniform(0, 20 * 365);
    for (std::size_t i = 0; i < k; ++i) {
      const DayIndex end = t + rng.uniform(365, 5 * 365);
      clubs.push_back({t, end});
      t = end + rng.uniform(30, 400);
    }
    if (rng.chance(config.club_exception)) {
      const auto i = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(k) - 1));
      clubs[i].start = clubs[i - 1].end - rng.uniform(30, 200);
    }
    const auto club_ids = rng.distinct(k, n_clubs);
    for (std::size_t i = 0; i < k; ++i) w.temporal(x, kMemberOf, id("club_", club_ids[i]), clubs[i]);

    if (rng.chance(config.national_share)) {
      Stint n1{};
      if (rng.chance(config.cross_overlap))
        n1.start = clubs[0].start + rng.uniform(10, 100);
      else
        n1.start = clubs.back().end + rng.uniform(30, 400);
      n1.end = n1.start + rng.uniform(200, 3 * 365);
      Stint n2{};
      n2.start = n1.end + rng.uniform(30, 400);
      if (rng.chance(config.national_exception)) n2.start = n1.end - rng.uniform(10, 150);
      n2.end = n2.start + rng.uniform(200, 3 * 365);
      const auto nat = rng.distinct(2, n_national);
      w.temporal(x, kMemberOf, id("national_team_", nat[0]), n1);
      w.temporal(x, kMemberOf, id("national_team_", nat[1]), n2);
    }
  }

  // Persons with birthplaces.
  const DayIndex birth_lo = day(1900, 1, 1);
  const DayIndex birth_hi = day(2000, 12, 31);
  for (std::size_t p = 0; p < n_persons; ++p) {
    const std::string x = id("person_", p);
    const DayIndex born = rng.uniform(birth_lo, birth_hi);
    const auto city = rng.index(n_cities);
    w.temporal(x, kBirthplace, id("city_", city), date(born), date(born));
    if (rng.chance(config.birthplace_noise)) {
      const auto other = (city + 1 + rng.index(n_cities - 1)) % n_cities;
      DayIndex when = born;
      if (rng.chance(0.5)) {
        while (when == born) when = rng.uniform(birth_lo, birth_hi);
      }
      w.temporal(x, kBirthplace, id("city_", other), date(when), date(when));
    }
  }

  // Advisors and students.
  std::vector<DayIndex> advisor_done(n_advisors, kNegInf);
  const DayIndex edu_cap = day(1990, 12, 31);
  for (std::size_t v = 0; v < n_advisors; ++v) {
    const std::string x = id("advisor_", v);
    const auto k = static_cast<std::size_t>(rng.uniform(2, 3));
    const auto unis = rng.distinct(k, n_universities);
    for (std::size_t i = 0; i < k; ++i) {
      const DayIndex s = rng.uniform(day(1950, 1, 1), day(1980, 12, 31));
      const DayIndex e = std::min(edu_cap, s + rng.uniform(2 * 365, 10 * 365));
      advisor_done[v] = std::max(advisor_done[v], e);
      w.temporal(x, kEducatedAt, id("university_", unis[i]), Stint{s, e});
    }
  }
  for (std::size_t s = 0; s < n_students; ++s) {
    const std::string x = id("student_", s);
    const auto adv = rng.index(n_advisors);
    w.plain(x, kAdvisor, id("advisor_", adv));
    const auto k = static_cast<std::size_t>(rng.uniform(2, 3));
    const auto degs = rng.distinct(k, n_degrees);
    std::vector<Stint> stints;
    for (std::size_t i = 0; i < k; ++i) {
      const DayIndex st = rng.uniform(day(1992, 1, 1), day(2015, 12, 31));
      stints.push_back({st, st + rng.uniform(365, 6 * 365)});
    }
    if (rng.chance(config.advisor_exception))
      stints[rng.index(k)].start = advisor_done[adv] - rng.uniform(30, 365);
    for (std::size_t i = 0; i < k; ++i) w.temporal(x, kDegree, id("degree_", degs[i]), stints[i]);
  }

  // Noise clusters on random subjects.
  const std::size_t planted = w.temporal_count();
  const auto target = static_cast<std::size_t>(static_cast<double>(planted) * config.noise + 0.5);
  const std::size_t n_subjects = n_athletes + n_persons + n_advisors + n_students;
  std::size_t noise = 0;
  while (noise < target) {
    auto pick = rng.index(n_subjects);
    std::string x;
    if (pick < n_athletes) {
      x = id("athlete_", pick);
    } else if ((pick -= n_athletes) < n_persons) {
      x = id("person_", pick);
    } else if ((pick -= n_persons) < n_advisors) {
      x = id("advisor_", pick);
    } else {
      x = id("student_", pick - n_advisors);
    }
    const char* prop = kNoiseProperties[rng.index(3)];
    const auto k = static_cast<std::size_t>(rng.uniform(2, 4));
    for (std::size_t obj : rng.distinct(k, 500)) {
      const int y0 = static_cast<int>(rng.uniform(1900, 2030));
      const int y1 = y0 + static_cast<int>(rng.uniform(0, 60));
      std::string ts;
      std::string te;
      if (rng.chance(0.5)) {
        const DayIndex s = day(y0, 1, 1) + rng.uniform(0, 364);
        const DayIndex e = std::max(s, day(y1, 1, 1) + rng.uniform(0, 364));
        ts = date(s);
        te = date(e);
      } else {
        ts = TimePoint::make(y0).to_string();
        te = TimePoint::make(y1).to_string();
      }
      w.temporal(x, prop, id("noise_object_", obj), ts, te);
      ++noise;
    }
  }

  manifest.temporal_facts = w.temporal_count();
  manifest.noise_facts = noise;
  manifest.plain_facts = w.plain_count();

  auto member = [&](std::vector<std::pair<std::string, std::string>> r, double conf) {
    return PlantedConstraint{"A", {kMemberOf, kMemberOf}, std::nullopt, "disjoint", std::move(r), conf};
  };
  const double club_ok = 1.0 - config.club_exception;
  const double nat_ok = 1.0 - config.national_exception;
  PlantedRegularity careers;
  careers.name = "disjoint_careers";
  careers.coarse = member({}, club_ok * ((1.0 - config.national_share) +
                                         config.national_share * (1.0 - config.cross_overlap) * nat_ok));
  careers.constraints.push_back(member({{"y", kClub}, {"z", kClub}}, club_ok));
  careers.constraints.push_back(member({{"y", kNational}, {"z", kNational}}, nat_ok));
  manifest.planted.push_back(std::move(careers));

  if (n_persons > 0) {
    manifest.planted.push_back(
        {"birthplace_uniqueness",
         std::nullopt,
         {PlantedConstraint{"A", {kBirthplace, kBirthplace}, std::nullopt, "false", {},
                            1.0 - config.birthplace_noise}}});
  }
  if (n_students > 0) {
    manifest.planted.push_back(
        {"advisor_precedence",
         std::nullopt,
         {PlantedConstraint{"B", {kAdvisor, kEducatedAt, kDegree}, "forward", "before", {},
                            1.0 - config.advisor_exception}}});
  }
  return manifest;
}

std::string FixtureManifest::to_json() const {
  using nlohmann::ordered_json;
  auto constraint = [](const PlantedConstraint& c) {
    ordered_json j;
    j["shape"] = c.shape;
    j["properties"] = c.properties;
    if (c.link_direction)
      j["linkDirection"] = *c.link_direction;
    else
      j["linkDirection"] = nullptr;
    j["head"] = c.head;
    if (c.restriction.empty()) {
      j["restriction"] = nullptr;
    } else {
      ordered_json r = ordered_json::object();
      for (const auto& [slot, cls] : c.restriction) r[slot] = cls;
      j["restriction"] = r;
    }
    j["expected_confidence"] = c.expected_confidence;
    return j;
  };
  ordered_json j;
  j["seed"] = seed;
  j["size"] = size;
  j["class_property"] = class_property;
  j["temporal_facts"] = temporal_facts;
  j["noise_facts"] = noise_facts;
  j["plain_facts"] = plain_facts;
  ordered_json planted_json = ordered_json::array();
  for (const auto& p : planted) {
    ordered_json e;
    e["name"] = p.name;
    if (p.coarse)
      e["coarse"] = constraint(*p.coarse);
    ordered_json cs = ordered_json::array();
    for (const auto& c : p.constraints) cs.push_back(constraint(c));
    e["constraints"] = cs;
    planted_json.push_back(e);
  }
  j["planted"] = planted_json;
  return j.dump(2);
}

}  // namespace tcm
