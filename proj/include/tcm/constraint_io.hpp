#pragma once
// JSONL encodings for constraints and conflict reports, plus the summary document.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcm/detector.hpp"
#include "tcm/pattern.hpp"

namespace tcm {

std::string constraint_to_json(const KgStore& store, const Constraint& c);
void write_constraints(const KgStore& store, std::span<const Constraint> constraints,
                       std::ostream& out);

// One entry per non-blank line. Entries naming ids absent from the store
// resolve to nullopt and add a warning. Throws ParseError on malformed lines.
std::vector<std::optional<Constraint>> read_constraints(std::istream& in, const KgStore& store,
                                                        std::vector<std::string>* warnings = nullptr);

void write_conflicts(const KgStore& store, std::span<const ConflictReport> reports,
                     std::ostream& out);
void write_summary(const KgStore& store, const ConflictStats& stats, std::ostream& out,
                   bool include_unknown = false);

}  // namespace tcm
