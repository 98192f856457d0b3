#include "tcm/pattern.hpp"

#include <charconv>
#include <numeric>
#include <tuple>

namespace tcm {

std::string_view to_string(Shape s) { return s == Shape::A ? "A" : "B"; }

std::string_view to_string(LinkDirection d) {
  return d == LinkDirection::Forward ? "forward" : "reversed";
}

std::string_view to_string(Slot s) {
  switch (s) {
    case Slot::X: return "x";
    case Slot::Y: return "y";
    case Slot::Z: return "z";
    case Slot::Z1: return "z1";
    case Slot::Z2: return "z2";
  }
  return "?";
}

std::optional<Slot> parse_slot(std::string_view name) {
  for (Slot s : {Slot::X, Slot::Y, Slot::Z, Slot::Z1, Slot::Z2})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

bool slot_valid_for(Slot s, Shape shape) {
  if (s == Slot::X || s == Slot::Y) return true;
  return shape == Shape::A ? s == Slot::Z : (s == Slot::Z1 || s == Slot::Z2);
}

Ratio Ratio::parse(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Ratio { throw std::invalid_argument("invalid ratio '" + original + "'"); };
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size() || v < 0) fail();
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    Ratio r{parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
    if (r.den == 0) fail();
    const auto g = std::gcd(r.num, r.den);
    return {r.num / g, r.den / g};
  }
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) fail();
  if (frac.size() > 15) frac = frac.substr(0, 15);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
  const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
  if (dot != std::string_view::npos && frac.empty() && whole.empty()) fail();
  const std::int64_t num = w * den + f;
  const auto g = std::gcd(num, den);
  return {num / g, den / g};
}

Ratio Ratio::from_double(double v) {
  if (!(v >= 0.0) || v > 1e6) throw std::invalid_argument("ratio must be a finite non-negative number");
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  if (ec != std::errc()) throw std::invalid_argument("unrepresentable ratio");
  return parse(std::string_view(buf, p - buf));
}

std::string Ratio::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

bool operator<(const Ratio& a, const Ratio& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

bool confidence_at_least(const Scores& s, const Ratio& r) {
  if (s.support() == 0) return false;
  return static_cast<__int128>(s.positives) * r.den >=
         static_cast<__int128>(r.num) * static_cast<__int128>(s.support());
}

namespace {

// Lexicographic identity by external ids.
auto identity(const KgStore& store, const Constraint& c) {
  const auto& gp = c.pattern;
  const std::string_view p0 =
      gp.shape == Shape::B ? std::string_view(store.name(gp.link_property)) : std::string_view();
  return std::make_tuple(gp.shape, p0, gp.direction, std::string_view(store.name(gp.property1)),
                         std::string_view(store.name(gp.property2)), c.head);
}

int compare_restrictions(const KgStore& store, const ClassRestriction& a,
                         const ClassRestriction& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    const int c = store.name(ia->second).compare(store.name(ib->second));
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (ia == a.end() && ib == b.end()) return 0;
  return ia == a.end() ? -1 : 1;
}

}  // namespace

bool output_before(const KgStore& store, const Constraint& a, const Constraint& b) {
  const auto& sa = a.scores;
  const auto& sb = b.scores;
  // confidence desc: pa/na > pb/nb  <=>  pa*nb > pb*na (support 0 sorts last)
  const auto lhs = static_cast<__int128>(sa.positives) * sb.support();
  const auto rhs = static_cast<__int128>(sb.positives) * sa.support();
  if (sa.support() == 0 || sb.support() == 0) {
    if ((sa.support() == 0) != (sb.support() == 0)) return sb.support() == 0;
  } else if (lhs != rhs) {
    return lhs > rhs;
  }
  if (sa.support() != sb.support()) return sa.support() > sb.support();
  const auto ka = identity(store, a);
  const auto kb = identity(store, b);
  if (ka != kb) return ka < kb;
  return compare_restrictions(store, a.restriction, b.restriction) < 0;
}

std::string constraint_key(const KgStore& store, const Constraint& c) {
  const auto& gp = c.pattern;
  std::string key(to_string(gp.shape));
  if (gp.shape == Shape::B) {
    key += '|';
    key += store.name(gp.link_property);
    key += '|';
    key += to_string(gp.direction);
  }
  key += '|';
  key += store.name(gp.property1);
  key += '|';
  key += store.name(gp.property2);
  key += '|';
  key += to_string(c.head);
  for (const auto& [slot, cls] : c.restriction) {
    key += '|';
    key += to_string(slot);
    key += '=';
    key += store.name(cls);
  }
  return key;
}

}  // namespace tcm
