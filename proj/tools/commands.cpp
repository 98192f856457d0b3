#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcm/constraint_io.hpp"
#include "tcm/detector.hpp"
#include "tcm/fixture.hpp"
#include "tcm/kg_store.hpp"
#include "tcm/miner.hpp"

namespace tcm::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw flag values. Unset optionals fall back to the config file, then defaults.
struct Flags {
  std::string facts;
  std::string constraints;
  std::string out;
  std::string summary;
  std::string manifest;
  std::string conflicts;
  std::string candidates;
  std::string config;
  std::optional<std::uint64_t> theta_freq;
  std::optional<std::string> theta_accept;
  std::optional<std::string> theta_refine;
  std::optional<std::size_t> max_classes;
  std::optional<std::string> class_property;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::optional<long long> size;
  std::optional<double> noise;
  bool strict = false;
  bool distinct_objects = false;
  bool verbose = false;
};

struct Settings {
  MiningConfig mining;
  std::string class_property = kFixtureClassProperty;
  bool strict = false;
  bool verbose = false;
  std::uint64_t seed = FixtureConfig{}.seed;
  long long size = static_cast<long long>(FixtureConfig{}.size);
  double noise = FixtureConfig{}.noise;
};

Ratio ratio_from_json(const nlohmann::json& v, const char* key) {
  if (v.is_number()) return Ratio::from_double(v.get<double>());
  if (v.is_string()) return Ratio::parse(v.get<std::string>());
  throw UsageError(std::string("config key '") + key + "' must be a number or string");
}

Settings resolve(const Flags& f) {
  Settings s;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw IoError("cannot open config file " + f.config);
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw UsageError("config file is not a JSON object");
    try {
      for (const auto& [key, v] : j.items()) {
        if (key == "theta_freq") s.mining.theta_freq = v.get<std::uint64_t>();
        else if (key == "theta_accept") s.mining.theta_accept = ratio_from_json(v, "theta_accept");
        else if (key == "theta_refine") s.mining.theta_refine = ratio_from_json(v, "theta_refine");
        else if (key == "max_classes") s.mining.max_classes_per_slot = v.get<std::size_t>();
        else if (key == "class_property") s.class_property = v.get<std::string>();
        else if (key == "threads") s.mining.threads = v.get<unsigned>();
        else if (key == "strict") s.strict = v.get<bool>();
        else if (key == "distinct_objects") s.mining.match.distinct_objects = v.get<bool>();
        else if (key == "verbose") s.verbose = v.get<bool>();
        else if (key == "seed") s.seed = v.get<std::uint64_t>();
        else if (key == "size") s.size = v.get<long long>();
        else if (key == "noise") s.noise = v.get<double>();
        else if (key == "heads") {
          s.mining.heads.clear();
          for (const auto& h : v) {
            auto p = parse_predicate(h.get<std::string>());
            if (!p) throw UsageError("unknown head '" + h.get<std::string>() + "' in config");
            s.mining.heads.push_back(*p);
          }
        } else {
          throw UsageError("unknown config key '" + key + "'");
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad config value: ") + e.what());
    }
  }
  if (f.theta_freq) s.mining.theta_freq = *f.theta_freq;
  if (f.theta_accept) s.mining.theta_accept = Ratio::parse(*f.theta_accept);
  if (f.theta_refine) s.mining.theta_refine = Ratio::parse(*f.theta_refine);
  if (f.max_classes) s.mining.max_classes_per_slot = *f.max_classes;
  if (f.class_property) s.class_property = *f.class_property;
  if (f.threads) s.mining.threads = *f.threads;
  if (f.seed) s.seed = *f.seed;
  if (f.size) s.size = *f.size;
  if (f.noise) s.noise = *f.noise;
  if (f.strict) s.strict = true;
  if (f.distinct_objects) s.mining.match.distinct_objects = true;
  if (f.verbose) s.verbose = true;
  try {
    s.mining.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void check_written(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed on " + path);
}

KgStore load(const std::string& path, const Settings& s, std::ostream& err) {
  if (!std::filesystem::exists(path)) throw IoError("fact file not found: " + path);
  IngestConfig config;
  config.class_property = s.class_property;
  config.strict = s.strict;
  IngestReport report;
  KgStore store = ingest_file(path, config, &report);
  err << "ingested " << report.temporal << " temporal and " << report.plain << " plain facts ("
      << report.duplicates << " duplicates, " << report.malformed << " malformed, "
      << report.rejected_intervals << " rejected intervals)\n";
  for (const auto& d : report.diagnostics) err << "  " << d << '\n';
  return store;
}

struct DetectionOutcome {
  std::size_t conflicts = 0;
  double seconds = 0;
};

DetectionOutcome run_detection(const KgStore& store, std::span<const std::optional<Constraint>> cs,
                               const Settings& s, const std::string& out_path,
                               const std::string& summary_path) {
  const auto t0 = Clock::now();
  DetectOptions opts;
  opts.match = s.mining.match;
  opts.threads = s.mining.threads;
  opts.count_unknown = s.verbose;
  const auto result = detect(store, cs, opts);
  DetectionOutcome outcome{result.reports.size(), seconds_since(t0)};

  auto out = open_out(out_path);
  write_conflicts(store, result.reports, out);
  check_written(out, out_path);
  if (!summary_path.empty()) {
    auto stats = summarize(result.reports, cs.size());
    stats.unknown_matches = result.unknown_matches;
    auto sum = open_out(summary_path);
    write_summary(store, stats, sum, s.verbose);
    check_written(sum, summary_path);
  }
  return outcome;
}

void print_timing(std::ostream& out, double ingest, double mining, double detection) {
  out << std::fixed << std::setprecision(3) << "time ingest " << ingest << " s\n"
      << "time mining " << mining << " s\n"
      << "time detection " << detection << " s\n"
      << "time total " << ingest + mining + detection << " s\n";
  out << std::defaultfloat;
}

int cmd_mine(const Flags& f, std::ostream& out, std::ostream& err) {
  const Settings s = resolve(f);
  auto t0 = Clock::now();
  const KgStore store = load(f.facts, s, err);
  const double ingest_s = seconds_since(t0);
  if (store.temporal_facts().empty()) err << "warning: no temporal facts in " << f.facts << '\n';

  t0 = Clock::now();
  err << "mining with theta_freq=" << s.mining.theta_freq
      << " theta_accept=" << s.mining.theta_accept.to_string()
      << " theta_refine=" << s.mining.theta_refine.to_string() << '\n';
  const MiningResult result = mine(store, s.mining);
  const double mining_s = seconds_since(t0);

  auto cs = open_out(f.out);
  write_constraints(store, result.constraints, cs);
  check_written(cs, f.out);
  if (!f.candidates.empty()) {
    auto cands = open_out(f.candidates);
    write_constraints(store, result.candidates, cands);
    check_written(cands, f.candidates);
  }

  DetectionOutcome detection;
  if (!f.conflicts.empty()) {
    std::vector<std::optional<Constraint>> wrapped(result.constraints.begin(),
                                                   result.constraints.end());
    detection = run_detection(store, wrapped, s, f.conflicts, f.summary);
  }

  const auto& st = result.stats;
  out << "patterns " << st.patterns << '\n'
      << "candidates " << st.candidates << '\n'
      << "accepted " << st.accepted << '\n'
      << "refinement_attempts " << st.refinement_attempts << '\n'
      << "refined " << st.refined << '\n'
      << "discarded " << st.discarded << '\n'
      << "constraints " << result.constraints.size() << '\n';
  if (!f.conflicts.empty()) out << "conflicts " << detection.conflicts << '\n';
  print_timing(out, ingest_s, mining_s, detection.seconds);
  return kOk;
}

int cmd_detect(const Flags& f, std::ostream& out, std::ostream& err) {
  const Settings s = resolve(f);
  if (!std::filesystem::exists(f.constraints))
    throw IoError("constraints file not found: " + f.constraints);
  auto t0 = Clock::now();
  const KgStore store = load(f.facts, s, err);
  const double ingest_s = seconds_since(t0);

  std::ifstream in(f.constraints);
  if (!in) throw IoError("cannot open " + f.constraints);
  std::vector<std::string> warnings;
  std::vector<std::optional<Constraint>> cs;
  try {
    cs = read_constraints(in, store, &warnings);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  const auto detection = run_detection(store, cs, s, f.out, f.summary);
  out << "constraints " << cs.size() << '\n'
      << "skipped " << std::count(cs.begin(), cs.end(), std::nullopt) << '\n'
      << "conflicts " << detection.conflicts << '\n';
  print_timing(out, ingest_s, 0.0, detection.seconds);
  return kOk;
}

int cmd_gen_fixture(const Flags& f, std::ostream& out, std::ostream& err) {
  const Settings s = resolve(f);
  if (s.size < 0) throw UsageError("--size must be non-negative");
  FixtureConfig config;
  config.seed = s.seed;
  config.size = static_cast<std::size_t>(s.size);
  config.noise = s.noise;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto facts = open_out(f.out);
  const auto manifest = generate_fixture(config, facts);
  check_written(facts, f.out);
  if (!f.manifest.empty()) {
    auto m = open_out(f.manifest);
    m << manifest.to_json() << '\n';
    check_written(m, f.manifest);
  }
  err << "wrote " << manifest.temporal_facts << " temporal and " << manifest.plain_facts
      << " plain facts to " << f.out << '\n';
  out << "temporal_facts " << manifest.temporal_facts << '\n'
      << "noise_facts " << manifest.noise_facts << '\n'
      << "plain_facts " << manifest.plain_facts << '\n'
      << "planted " << manifest.planted.size() << '\n';
  return kOk;
}

int cmd_stats(const Flags& f, std::ostream& out, std::ostream& err) {
  const Settings s = resolve(f);
  const KgStore store = load(f.facts, s, err);
  nlohmann::ordered_json j;
  j["resources"] = store.resource_count();
  j["temporal_facts"] = store.temporal_facts().size();
  j["plain_facts"] = store.plain_facts().size();
  std::map<std::string, std::size_t> temporal;
  for (ResourceId p : store.temporal_properties())
    temporal[store.name(p)] = store.temporal_by_property(p).size();
  j["temporal_properties"] = temporal;
  std::map<std::string, std::size_t> plain;
  std::set<ResourceId> classes;
  for (const auto& pf : store.plain_facts()) {
    ++plain[store.name(pf.property)];
    if (store.class_property() && pf.property == *store.class_property()) classes.insert(pf.object);
  }
  j["plain_properties"] = plain;
  j["classes"] = classes.size();
  if (f.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    auto o = open_out(f.out);
    o << j.dump(2) << '\n';
    check_written(o, f.out);
  }
  return kOk;
}

void add_mining_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--theta-freq", f.theta_freq, "minimum support (decided entities)");
  cmd->add_option("--theta-accept", f.theta_accept, "acceptance confidence, e.g. 0.9 or 9/10");
  cmd->add_option("--theta-refine", f.theta_refine, "refinement floor, e.g. 0.5");
  cmd->add_option("--max-classes", f.max_classes, "classes tried per restricted slot");
}

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  cmd->add_option("--class-property", f.class_property, "class-membership property id");
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--strict", f.strict, "fail on malformed input lines");
  cmd->add_flag("--distinct-objects", f.distinct_objects,
                "same-property pairs must have different objects");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal constraint mining and conflict detection", "tcmine"};
  app.require_subcommand(1);
  Flags f;

  auto* mine_cmd = app.add_subcommand("mine", "mine temporal constraints from a fact file");
  mine_cmd->add_option("--facts", f.facts, "fact file (TSV or JSONL)")->required();
  mine_cmd->add_option("--out", f.out, "constraints output (JSONL)")->required();
  mine_cmd->add_option("--candidates", f.candidates, "also write every scored candidate");
  mine_cmd->add_option("--conflicts", f.conflicts, "also run detection, writing conflicts here");
  mine_cmd->add_option("--summary", f.summary, "conflict summary (JSON), with --conflicts");
  mine_cmd->add_flag("--verbose", f.verbose, "count Unknown matches during detection");
  add_mining_flags(mine_cmd, f);
  add_common_flags(mine_cmd, f);

  auto* detect_cmd = app.add_subcommand("detect", "report conflicts against a constraint set");
  detect_cmd->add_option("--facts", f.facts, "fact file (TSV or JSONL)")->required();
  detect_cmd->add_option("--constraints", f.constraints, "constraints (JSONL)")->required();
  detect_cmd->add_option("--out", f.out, "conflicts output (JSONL)")->required();
  detect_cmd->add_option("--summary", f.summary, "summary output (JSON)");
  detect_cmd->add_flag("--verbose", f.verbose, "count Unknown matches in the summary");
  add_common_flags(detect_cmd, f);

  auto* gen_cmd = app.add_subcommand("gen-fixture", "write a synthetic KG with planted constraints");
  gen_cmd->add_option("--out", f.out, "fact output (TSV)")->required();
  gen_cmd->add_option("--manifest", f.manifest, "planted-constraint manifest (JSON)");
  gen_cmd->add_option("--seed", f.seed, "random seed");
  gen_cmd->add_option("--size", f.size, "number of athletes; other populations scale with it");
  gen_cmd->add_option("--noise", f.noise, "noise facts per planted temporal fact");
  gen_cmd->add_option("--config", f.config, "JSON config file; flags override it");

  auto* stats_cmd = app.add_subcommand("stats", "print store statistics");
  stats_cmd->add_option("--facts", f.facts, "fact file (TSV or JSONL)")->required();
  stats_cmd->add_option("--out", f.out, "write JSON here instead of standard output");
  stats_cmd->add_option("--class-property", f.class_property, "class-membership property id");
  stats_cmd->add_flag("--strict", f.strict, "fail on malformed input lines");

  std::vector<std::string> argv_store{"tcmine"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(f, out, err);
    if (detect_cmd->parsed()) return cmd_detect(f, out, err);
    if (gen_cmd->parsed()) return cmd_gen_fixture(f, out, err);
    return cmd_stats(f, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const IngestError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace tcm::cli
