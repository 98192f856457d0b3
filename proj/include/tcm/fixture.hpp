#pragma once
// Synthetic temporal KG with planted regularities and a ground-truth manifest.
//
// Populations scale with `size` (number of athletes):
//   athletes  club careers disjoint within clubs and within national teams,
//             but national stints overlap club stints for a share of athletes
//   persons   (size / 2) one birthplace each, a few with a second one
//   students  (size / 2) degrees start after their advisor's education ends
//   advisors  (students / 5)
// plus clusters of random noise facts on random subjects.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tcm {

struct FixtureConfig {
  std::uint64_t seed = 7;
  std::size_t size = 10000;
  double noise = 0.10;              // noise facts / planted temporal facts
  double national_share = 0.5;      // athletes with national-team stints
  double cross_overlap = 0.8;       // of those, stints overlapping club stints
  double club_exception = 0.02;     // overlapping club stints
  double national_exception = 0.02; // overlapping national stints
  double birthplace_noise = 0.02;   // persons with a second birthplace
  double advisor_exception = 0.03;  // degrees starting before advisor finished

  void validate() const;  // throws std::invalid_argument
};

struct PlantedConstraint {
  std::string shape;                    // "A" or "B"
  std::vector<std::string> properties;  // external ids
  std::optional<std::string> link_direction;
  std::string head;
  std::vector<std::pair<std::string, std::string>> restriction;  // slot -> class
  double expected_confidence = 0;
};

struct PlantedRegularity {
  std::string name;
  std::optional<PlantedConstraint> coarse;  // scored but expected to need refinement
  std::vector<PlantedConstraint> constraints;
};

struct FixtureManifest {
  std::uint64_t seed = 0;
  std::size_t size = 0;
  std::string class_property;
  std::size_t temporal_facts = 0;
  std::size_t noise_facts = 0;
  std::size_t plain_facts = 0;
  std::vector<PlantedRegularity> planted;

  std::string to_json() const;
};

inline constexpr const char* kFixtureClassProperty = "instance_of";

// Writes TSV facts to `out` and returns the manifest. Same config, same bytes.
FixtureManifest generate_fixture(const FixtureConfig& config, std::ostream& out);

}  // namespace tcm
