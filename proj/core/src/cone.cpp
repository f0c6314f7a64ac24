#include "dirca/cone.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <map>

#include "dirca/errors.hpp"

namespace dirca {

DirectionCone::DirectionCone(Rational beta, Rational b) : beta_(beta), b_(b) {
  if (b_ <= Rational(0)) throw PreconditionViolation("cone width b must be positive");
}

bool cone_contains(const DirectionCone& cone, const ActionIndex& p) {
  const Rational center = cone.beta() * Rational(p.m());
  const Rational half = cone.width() / Rational(2);
  const Rational n(p.n());
  return center - half <= n && n <= center + half;
}

std::vector<ActionIndex> cone_slice(const DirectionCone& cone, std::int64_t m) {
  const Rational center = cone.beta() * Rational(m);
  const Rational half = cone.width() / Rational(2);
  std::vector<ActionIndex> out;
  for (auto n = ceil_of(center - half); n <= floor_of(center + half); ++n) out.emplace_back(m, n);
  return out;
}

std::vector<ActionIndex> cone_points(const DirectionCone& cone, std::int64_t k) {
  if (k < 1) throw PreconditionViolation("cone_points needs k >= 1");
  std::vector<ActionIndex> out;
  for (std::int64_t m = 0; m < k; ++m) {
    const auto slice = cone_slice(cone, m);
    out.insert(out.end(), slice.begin(), slice.end());
  }
  return out;
}

SequenceS SequenceS::prefix(std::size_t len) const {
  if (len > points.size()) throw PreconditionViolation("prefix longer than sequence");
  return SequenceS{{points.begin(), points.begin() + static_cast<std::ptrdiff_t>(len)}};
}

namespace {

// Leading factor of an affine term; empty means 1, a trailing '*' is allowed.
Rational parse_coefficient(std::string_view text, std::string_view whole) {
  if (text.empty()) return Rational(1);
  if (text.back() == '*') text.remove_suffix(1);
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
    throw ParseError("malformed affine expression '" + std::string(whole) + "'");
  }
}

}  // namespace

AffineRule parse_affine(std::string_view text) {
  if (text.empty()) throw ParseError("empty affine expression");
  AffineRule rule;
  std::size_t pos = 0;
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw ParseError("malformed affine expression '" + std::string(text) + "'");
    }
    auto end = text.find_first_of("+-", pos);
    if (end == std::string_view::npos) end = text.size();
    const auto term = text.substr(pos, end - pos);
    if (term.empty()) throw ParseError("malformed affine expression '" + std::string(text) + "'");
    const auto mpos = term.find('m');
    if (mpos == std::string_view::npos) {
      rule.offset += Rational(sign) * parse_coefficient(term, text);
    } else {
      Rational coef = parse_coefficient(term.substr(0, mpos), text);
      const auto tail = term.substr(mpos + 1);
      if (!tail.empty()) {
        if (tail.front() != '/') throw ParseError("malformed affine term '" + std::string(term) + "'");
        const auto den = parse_rational(tail.substr(1));
        if (den == Rational(0)) throw ParseError("division by zero in '" + std::string(text) + "'");
        coef /= den;
      }
      rule.slope += Rational(sign) * coef;
    }
    pos = end;
  }
  return rule;
}

SequenceS make_syndetic_sequence(std::int64_t gap, std::int64_t len, const AffineRule& n_of_m) {
  if (gap < 1 || len < 1) throw PreconditionViolation("syndetic sequence needs gap >= 1, len >= 1");
  SequenceS s;
  for (std::int64_t i = 1; i <= len; ++i) {
    const auto m = i * gap;
    const Rational n = n_of_m(m);
    s.points.emplace_back(m, n.numerator() / n.denominator());  // C++ division truncates
  }
  return s;
}

SequenceS make_geometric_sequence(std::int64_t base, std::int64_t len, const Rational& beta) {
  if (base < 2 || len < 1) throw PreconditionViolation("geometric sequence needs base >= 2, len >= 1");
  SequenceS s;
  std::int64_t m = 1;
  for (std::int64_t i = 1; i <= len; ++i) {
    if (m > std::numeric_limits<std::int64_t>::max() / base) {
      throw PreconditionViolation("geometric sequence overflows 64-bit exponents");
    }
    m *= base;
    s.points.emplace_back(m, round_half_toward_zero(beta * Rational(m)));
  }
  return s;
}

std::string_view to_string(Coverage c) {
  switch (c) {
    case Coverage::holds: return "holds";
    case Coverage::boundary: return "boundary";
    case Coverage::fails: return "fails";
  }
  return "?";
}

std::vector<std::string> SequenceReport::failed_hypotheses() const {
  std::vector<std::string> failed;
  if (!strictly_monotone) failed.emplace_back("strictly_monotone");
  if (!syndetic) failed.emplace_back("syndetic");
  if (!m_exceeds_n) failed.emplace_back("m_i>n_i");
  return failed;
}

SequenceReport validate_sequence(const SequenceS& s, const std::optional<DirectionCone>& cone,
                                 const LocalRule* rule, std::optional<std::int64_t> M,
                                 std::optional<std::int64_t> gap_bound) {
  SequenceReport report;
  const auto& pts = s.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].m() <= pts[i].n()) report.m_exceeds_n = false;
    if (i + 1 < pts.size()) {
      const auto gap = pts[i + 1].m() - pts[i].m();
      if (gap <= 0) report.strictly_monotone = false;
      report.max_gap = std::max(report.max_gap, gap);
    }
  }
  report.syndetic = !pts.empty() && report.strictly_monotone &&
                    (!gap_bound || report.max_gap <= *gap_bound);
  if (cone) {
    bool inside = true;
    for (const auto& p : pts) inside = inside && cone_contains(*cone, p);
    report.in_cone = inside;
  }
  if (rule != nullptr && M) {
    const std::int64_t r = rule->radius();
    Coverage status = Coverage::holds;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const auto lhs = 2 * (r * pts[i].m() + *M) + 1;
      const auto rhs = 2 * r * pts[i + 1].m() + 1;
      Coverage here = lhs > rhs ? Coverage::holds : (lhs == rhs ? Coverage::boundary : Coverage::fails);
      if (here != Coverage::holds && !report.first_coverage_gap) report.first_coverage_gap = i;
      if (here == Coverage::fails || (here == Coverage::boundary && status == Coverage::holds)) {
        status = here;
      }
    }
    report.coverage = status;
  }
  return report;
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("malformed integer '" + std::string(text) + "' in '" + std::string(whole) + "'");
  }
  return v;
}

std::map<std::string, std::string, std::less<>> parse_fields(std::string_view body,
                                                              std::string_view whole) {
  std::map<std::string, std::string, std::less<>> fields;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key=value in sequence literal '" + std::string(whole) + "'");
    }
    if (!fields.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))).second) {
      throw ParseError("duplicate key in sequence literal '" + std::string(whole) + "'");
    }
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return fields;
}

std::string take(std::map<std::string, std::string, std::less<>>& fields, std::string_view key,
                 std::string_view whole) {
  const auto it = fields.find(key);
  if (it == fields.end()) {
    throw ParseError("sequence literal '" + std::string(whole) + "' lacks '" + std::string(key) + "'");
  }
  auto value = it->second;
  fields.erase(it);
  return value;
}

void reject_leftovers(const std::map<std::string, std::string, std::less<>>& fields,
                      std::string_view whole) {
  if (!fields.empty()) {
    throw ParseError("unknown key '" + fields.begin()->first + "' in sequence literal '" +
                     std::string(whole) + "'");
  }
}

}  // namespace

SequenceS parse_sequence(std::string_view literal) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("sequence literal needs a 'kind:' prefix: '" + std::string(literal) + "'");
  }
  const auto kind = literal.substr(0, colon);
  const auto body = literal.substr(colon + 1);
  if (kind == "syndetic") {
    auto fields = parse_fields(body, literal);
    const auto gap = parse_int(take(fields, "gap", literal), literal);
    const auto len = parse_int(take(fields, "len", literal), literal);
    const auto n = parse_affine(take(fields, "n", literal));
    reject_leftovers(fields, literal);
    return make_syndetic_sequence(gap, len, n);
  }
  if (kind == "geometric") {
    auto fields = parse_fields(body, literal);
    const auto base = parse_int(take(fields, "base", literal), literal);
    const auto len = parse_int(take(fields, "len", literal), literal);
    const auto beta = parse_rational(take(fields, "beta", literal));
    reject_leftovers(fields, literal);
    return make_geometric_sequence(base, len, beta);
  }
  if (kind == "explicit") {
    SequenceS s;
    auto rest = body;
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const auto item = rest.substr(0, semi);
      if (item.size() < 5 || item.front() != '(' || item.back() != ')') {
        throw ParseError("malformed point '" + std::string(item) + "' in '" + std::string(literal) + "'");
      }
      const auto inner = item.substr(1, item.size() - 2);
      const auto comma = inner.find(',');
      if (comma == std::string_view::npos) {
        throw ParseError("malformed point '" + std::string(item) + "' in '" + std::string(literal) + "'");
      }
      s.points.emplace_back(parse_int(inner.substr(0, comma), literal),
                            parse_int(inner.substr(comma + 1), literal));
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
    return s;
  }
  throw ParseError("unknown sequence kind '" + std::string(kind) + "'");
}

std::string to_string(const SequenceS& s) {
  std::string out = "explicit:";
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (i) out += ';';
    out += to_string(s.points[i]);
  }
  return out;
}

}  // namespace dirca
