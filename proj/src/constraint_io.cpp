#include "tcm/constraint_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace tcm {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string constraint_to_json(const KgStore& store, const Constraint& c) {
  const auto& gp = c.pattern;
  ordered_json j;
  j["shape"] = std::string(to_string(gp.shape));
  if (gp.shape == Shape::A) {
    j["properties"] = {store.name(gp.property1), store.name(gp.property2)};
    j["linkDirection"] = nullptr;
  } else {
    j["properties"] = {store.name(gp.link_property), store.name(gp.property1),
                       store.name(gp.property2)};
    j["linkDirection"] = std::string(to_string(gp.direction));
  }
  j["head"] = std::string(to_string(c.head));
  if (c.restriction.empty()) {
    j["restriction"] = nullptr;
  } else {
    ordered_json r = ordered_json::object();
    for (const auto& [slot, cls] : c.restriction) r[std::string(to_string(slot))] = store.name(cls);
    j["restriction"] = r;
  }
  j["support"] = c.scores.support();
  j["positives"] = c.scores.positives;
  j["negatives"] = c.scores.negatives;
  j["unknowns"] = c.scores.unknowns;
  if (auto conf = c.scores.confidence())
    j["confidence"] = *conf;
  else
    j["confidence"] = nullptr;
  return j.dump();
}

void write_constraints(const KgStore& store, std::span<const Constraint> constraints,
                       std::ostream& out) {
  for (const auto& c : constraints) out << constraint_to_json(store, c) << '\n';
}

std::vector<std::optional<Constraint>> read_constraints(std::istream& in, const KgStore& store,
                                                        std::vector<std::string>* warnings) {
  std::vector<std::optional<Constraint>> out;
  std::string line;
  std::size_t line_no = 0;
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back("constraint line " + std::to_string(line_no) + ": " + msg);
  };
  auto fail = [&](const std::string& msg) {
    throw ParseError("constraint line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail("invalid JSON object");
    if (!j.contains("shape") || !j.contains("properties") || !j.contains("head"))
      fail("missing shape, properties or head");
    if (!j["shape"].is_string() || !j["properties"].is_array() || !j["head"].is_string())
      fail("wrong field types");

    const std::string shape_text = j["shape"];
    if (shape_text != "A" && shape_text != "B") fail("unknown shape '" + shape_text + "'");
    const Shape shape = shape_text == "A" ? Shape::A : Shape::B;
    const auto head = parse_predicate(j["head"].get<std::string>());
    if (!head) fail("unknown head '" + j["head"].get<std::string>() + "'");
    if (shape == Shape::B &&
        (*head == TemporalPredicate::Disjoint || *head == TemporalPredicate::MutualExclusion))
      fail("shape B does not take head " + std::string(to_string(*head)));

    const auto& props = j["properties"];
    if (props.size() != (shape == Shape::A ? 2u : 3u)) fail("wrong number of properties");
    std::vector<std::string> names;
    for (const auto& p : props) {
      if (!p.is_string()) fail("property ids must be strings");
      names.push_back(p.get<std::string>());
    }
    LinkDirection dir = LinkDirection::Forward;
    if (shape == Shape::B) {
      const auto d = j.value("linkDirection", std::string("forward"));
      if (d == "reversed")
        dir = LinkDirection::Reversed;
      else if (d != "forward")
        fail("unknown linkDirection '" + d + "'");
    }

    bool resolvable = true;
    std::vector<ResourceId> ids;
    for (const auto& n : names) {
      if (auto id = store.find(n)) {
        ids.push_back(*id);
      } else {
        warn("unknown property '" + n + "'");
        resolvable = false;
      }
    }
    ClassRestriction restriction;
    if (j.contains("restriction") && !j["restriction"].is_null()) {
      if (!j["restriction"].is_object()) fail("restriction must be an object or null");
      for (const auto& [slot_name, cls] : j["restriction"].items()) {
        const auto slot = parse_slot(slot_name);
        if (!slot || !slot_valid_for(*slot, shape)) fail("invalid slot '" + slot_name + "'");
        if (!cls.is_string()) fail("class ids must be strings");
        if (auto id = store.find(cls.get<std::string>())) {
          restriction[*slot] = *id;
        } else {
          warn("unknown class '" + cls.get<std::string>() + "'");
          resolvable = false;
        }
      }
    }
    if (!resolvable) {
      out.push_back(std::nullopt);
      continue;
    }
    Constraint c;
    c.pattern = shape == Shape::A ? GraphPattern::a(ids[0], ids[1])
                                  : GraphPattern::b(ids[0], dir, ids[1], ids[2]);
    c.head = *head;
    c.restriction = std::move(restriction);
    c.scores.positives = j.value("positives", std::uint64_t{0});
    c.scores.negatives = j.value("negatives", std::uint64_t{0});
    c.scores.unknowns = j.value("unknowns", std::uint64_t{0});
    out.push_back(std::move(c));
  }
  if (in.bad()) throw ParseError("read error on constraint input");
  return out;
}

namespace {

ordered_json fact_json(const KgStore& store, FactId id) {
  const auto& f = store.temporal(id);
  ordered_json j;
  j["id"] = id;
  j["s"] = store.name(f.subject);
  j["p"] = store.name(f.property);
  j["o"] = store.name(f.object);
  j["ts"] = format_time_field(f.interval.start);
  j["te"] = format_time_field(f.interval.end);
  return j;
}

}  // namespace

void write_conflicts(const KgStore& store, std::span<const ConflictReport> reports,
                     std::ostream& out) {
  for (const auto& r : reports) {
    ordered_json j;
    j["constraint"] = r.constraint_index;
    j["anchor"] = store.name(r.anchor);
    j["head"] = std::string(to_string(r.head));
    j["truth"] = std::string(to_string(r.truth));
    ordered_json facts = ordered_json::array();
    for (FactId f : r.facts) facts.push_back(fact_json(store, f));
    j["facts"] = facts;
    if (r.link) {
      const auto& pf = store.plain(*r.link);
      j["link"] = {{"s", store.name(pf.subject)}, {"p", store.name(pf.property)},
                   {"o", store.name(pf.object)}};
    }
    if (!r.objects.empty()) {
      ordered_json objs = ordered_json::array();
      for (ResourceId o : r.objects) objs.push_back(store.name(o));
      j["objects"] = objs;
    }
    out << j.dump() << '\n';
  }
}

void write_summary(const KgStore& store, const ConflictStats& stats, std::ostream& out,
                   bool include_unknown) {
  ordered_json j;
  j["total"] = stats.total;
  j["per_constraint"] = stats.per_constraint;
  ordered_json heads = ordered_json::object();
  for (const auto& [h, n] : stats.per_head) heads[std::string(to_string(h))] = n;
  j["per_head"] = heads;
  ordered_json top = ordered_json::array();
  for (const auto& [e, n] : stats.top_entities)
    top.push_back({{"entity", store.name(e)}, {"conflicts", n}});
  j["top_entities"] = top;
  if (include_unknown) j["unknown_matches"] = stats.unknown_matches;
  out << j.dump(2) << '\n';
}

}  // namespace tcm
