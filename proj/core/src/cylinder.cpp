#include "dirca/cylinder.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "dirca/errors.hpp"

namespace dirca {

std::optional<std::uint64_t> checked_power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / a) return std::nullopt;
    result *= a;
  }
  return result;
}

Cylinder::Cylinder(Coord lo, std::vector<Symbol> symbols, Modulus modulus)
    : lo_(lo), symbols_(std::move(symbols)), modulus_(modulus) {
  if (symbols_.empty()) throw PreconditionViolation("cylinder must fix at least one coordinate");
  for (const auto s : symbols_) {
    if (s >= modulus_.value()) {
      throw PreconditionViolation("cylinder symbol " + std::to_string(s) + " outside Z_" +
                                  std::to_string(modulus_.value()));
    }
  }
}

namespace {

int digit_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'z') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'Z') return ch - 'A' + 10;
  return -1;
}

char digit_char(int v) { return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10)); }

}  // namespace

Cylinder parse_cylinder(std::string_view literal, Modulus modulus) {
  const auto fail = [&] { return ParseError("malformed cylinder literal '" + std::string(literal) + "'"); };
  if (literal.size() < 5 || literal.front() != '[' || literal.back() != ']') throw fail();
  const auto body = literal.substr(1, literal.size() - 2);
  const auto colon = body.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == body.size()) throw fail();
  Coord lo = 0;
  const auto lo_text = body.substr(0, colon);
  auto [ptr, ec] = std::from_chars(lo_text.data(), lo_text.data() + lo_text.size(), lo);
  if (ec != std::errc{} || ptr != lo_text.data() + lo_text.size()) throw fail();
  std::vector<Symbol> symbols;
  for (const char ch : body.substr(colon + 1)) {
    const int v = digit_value(ch);
    if (v < 0) throw fail();
    if (v >= modulus.value()) {
      throw ParseError("symbol '" + std::string(1, ch) + "' outside Z_" + std::to_string(modulus.value()) +
                       " in '" + std::string(literal) + "'");
    }
    symbols.push_back(static_cast<Symbol>(v));
  }
  return Cylinder(lo, std::move(symbols), modulus);
}

std::string to_string(const Cylinder& c) {
  std::string out = "[" + std::to_string(c.lo()) + ":";
  for (const auto s : c.symbols()) out += digit_char(s);
  return out + "]";
}

CylinderPartition::CylinderPartition(std::int64_t M, Modulus modulus) : M_(M), modulus_(modulus), count_(0) {
  if (M < 0) throw PreconditionViolation("partition radius M must be >= 0");
  const auto count = checked_power(static_cast<std::uint64_t>(modulus.value()),
                                   static_cast<std::uint64_t>(2 * M + 1));
  if (!count) throw PreconditionViolation("partition xi(-M,M) too large to index");
  count_ = *count;
}

Cylinder CylinderPartition::atom(std::uint64_t index) const {
  if (index >= count_) throw PreconditionViolation("atom index out of range");
  const auto a = static_cast<std::uint64_t>(modulus_.value());
  std::vector<Symbol> symbols(static_cast<std::size_t>(2 * M_ + 1));
  for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) {
    *it = static_cast<Symbol>(index % a);
    index /= a;
  }
  return Cylinder(-M_, std::move(symbols), modulus_);
}

std::vector<Cylinder> CylinderPartition::atoms() const {
  std::vector<Cylinder> out;
  out.reserve(static_cast<std::size_t>(count_));
  for (std::uint64_t i = 0; i < count_; ++i) out.push_back(atom(i));
  return out;
}

ExactProb::ExactProb(std::uint64_t count, int exponent, Modulus modulus)
    : count_(count), exponent_(exponent), modulus_(modulus) {
  if (exponent < 0) throw PreconditionViolation("probability exponent must be >= 0");
  const auto a = static_cast<std::uint64_t>(modulus.value());
  if (const auto denom = checked_power(a, static_cast<std::uint64_t>(exponent)); denom && count > *denom) {
    throw PreconditionViolation("probability count exceeds a^w");
  }
  if (count_ == 0) {
    exponent_ = 0;
    return;
  }
  while (exponent_ > 0 && count_ % a == 0) {
    count_ /= a;
    --exponent_;
  }
}

BigRational ExactProb::value() const {
  BigInt denom = boost::multiprecision::pow(BigInt(modulus_.value()), static_cast<unsigned>(exponent_));
  return BigRational(BigInt(count_), denom);
}

double ExactProb::to_double() const {
  return static_cast<double>(static_cast<long double>(count_) *
                             std::pow(static_cast<long double>(modulus_.value()), -exponent_));
}

double ExactProb::neg_p_log_p() const {
  if (count_ == 0) return 0.0;
  const long double p = static_cast<long double>(count_) *
                        std::pow(static_cast<long double>(modulus_.value()), -exponent_);
  const long double log_p = std::log(static_cast<long double>(count_)) -
                            exponent_ * std::log(static_cast<long double>(modulus_.value()));
  return static_cast<double>(-p * log_p);
}

std::string ExactProb::str() const {
  return std::to_string(count_) + "/" + std::to_string(modulus_.value()) + "^" + std::to_string(exponent_);
}

ExactProb ExactProb::operator*(const ExactProb& other) const {
  if (modulus_ != other.modulus_) throw PreconditionViolation("multiplying probabilities over different alphabets");
  BigInt c = BigInt(count_) * other.count_;
  int w = exponent_ + other.exponent_;
  const auto a = static_cast<unsigned>(modulus_.value());
  while (c != 0 && w > 0 && c % a == 0) {
    c /= a;
    --w;
  }
  if (c > std::numeric_limits<std::uint64_t>::max()) throw PreconditionViolation("probability product overflows");
  return ExactProb(c.convert_to<std::uint64_t>(), w, modulus_);
}

std::strong_ordering operator<=>(const ExactProb& x, const ExactProb& y) {
  const BigInt lhs = BigInt(x.count_) * boost::multiprecision::pow(BigInt(y.modulus_.value()), static_cast<unsigned>(y.exponent_));
  const BigInt rhs = BigInt(y.count_) * boost::multiprecision::pow(BigInt(x.modulus_.value()), static_cast<unsigned>(x.exponent_));
  if (lhs < rhs) return std::strong_ordering::less;
  if (rhs < lhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactProb cylinder_measure(const Cylinder& b) {
  return ExactProb(1, static_cast<int>(b.size()), b.modulus());
}

Interval pullback_support(const Cylinder& b, const ActionIndex& act, const LocalRule& rule) {
  return needed_support(b.interval(), act, rule);
}

std::vector<Coord> event_support(const EventSpec& e, const LocalRule& rule) {
  std::vector<Coord> coords;
  for (const auto& c : e.constraints) {
    const auto iv = pullback_support(c.cylinder, c.act, rule);
    for (auto i = iv.lo; i <= iv.hi; ++i) coords.push_back(i);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return coords;
}

std::vector<Symbol> rule_power(const LocalRule& rule, std::int64_t m) {
  if (m < 0) throw PreconditionViolation("rule_power needs m >= 0");
  const auto a = static_cast<unsigned>(rule.a());
  std::vector<Symbol> base;
  for (int j = rule.min_dep(); j <= rule.max_dep(); ++j) base.push_back(rule.coeff(j));
  std::vector<Symbol> acc{1};
  for (std::int64_t step = 0; step < m; ++step) {
    std::vector<Symbol> next(acc.size() + base.size() - 1, 0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0) continue;
      for (std::size_t j = 0; j < base.size(); ++j) {
        next[i + j] = static_cast<Symbol>((next[i + j] + static_cast<unsigned>(acc[i]) * base[j]) % a);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

namespace {

void check_alphabets(const EventSpec& e, const LocalRule& rule) {
  if (e.constraints.empty()) throw PreconditionViolation("event needs at least one constraint");
  for (const auto& c : e.constraints) {
    if (c.cylinder.modulus() != rule.modulus()) {
      throw PreconditionViolation("cylinder and rule alphabets differ");
    }
  }
}

unsigned inverse_mod(unsigned x, unsigned p) {
  unsigned result = 1;
  unsigned base = x % p;
  for (unsigned e = p - 2; e != 0; e >>= 1) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

// Solves the affine system over the field Z_p; the event has measure
// p^{-rank} when consistent.
ExactProb measure_by_elimination(const EventSpec& e, const LocalRule& rule) {
  const auto p = static_cast<unsigned>(rule.a());
  const auto coords = event_support(e, rule);
  const auto column_of = [&](Coord c) {
    return static_cast<std::size_t>(std::lower_bound(coords.begin(), coords.end(), c) - coords.begin());
  };
  const std::size_t cols = coords.size();
  const std::size_t stride = cols + 1;

  std::vector<unsigned> matrix;
  std::map<std::int64_t, std::vector<Symbol>> powers;
  std::size_t rows = 0;
  for (const auto& c : e.constraints) {
    auto it = powers.find(c.act.m());
    if (it == powers.end()) it = powers.emplace(c.act.m(), rule_power(rule, c.act.m())).first;
    const auto& poly = it->second;
    for (auto i = c.cylinder.lo(); i <= c.cylinder.hi(); ++i) {
      matrix.resize((rows + 1) * stride, 0);
      unsigned* row = &matrix[rows * stride];
      const Coord first = i + c.act.n() + c.act.m() * rule.min_dep();
      for (std::size_t k = 0; k < poly.size(); ++k) {
        if (poly[k] != 0) row[column_of(first + static_cast<Coord>(k))] = poly[k];
      }
      row[cols] = c.cylinder.at(i);
      ++rows;
    }
  }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && matrix[pivot * stride + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(matrix.begin() + static_cast<std::ptrdiff_t>(pivot * stride),
                       matrix.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * stride),
                       matrix.begin() + static_cast<std::ptrdiff_t>(rank * stride));
    }
    unsigned* prow = &matrix[rank * stride];
    const unsigned inv = inverse_mod(prow[col], p);
    for (std::size_t k = col; k < stride; ++k) prow[k] = prow[k] * inv % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      unsigned* row = &matrix[r * stride];
      const unsigned f = row[col];
      if (f == 0) continue;
      for (std::size_t k = col; k < stride; ++k) row[k] = (row[k] + (p - f) * prow[k]) % p;
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (matrix[r * stride + cols] != 0) return ExactProb::zero(rule.modulus());
  }
  return ExactProb(1, static_cast<int>(rank), rule.modulus());
}

ExactProb measure_by_enumeration(const EventSpec& e, const LocalRule& rule, std::uint64_t budget) {
  const auto coords = event_support(e, rule);
  const auto a = static_cast<std::uint64_t>(rule.a());
  const auto total = checked_power(a, coords.size());
  if (!total || *total > budget) {
    throw BudgetExceeded("enumerating " + std::to_string(a) + "^" + std::to_string(coords.size()) +
                         " assignments exceeds budget " + std::to_string(budget));
  }
  struct Slot {
    std::size_t offset;
    std::size_t length;
    std::int64_t steps;
    const Cylinder* cylinder;
  };
  std::vector<Slot> slots;
  for (const auto& c : e.constraints) {
    const auto iv = pullback_support(c.cylinder, c.act, rule);
    const auto offset = static_cast<std::size_t>(std::lower_bound(coords.begin(), coords.end(), iv.lo) - coords.begin());
    slots.push_back({offset, static_cast<std::size_t>(iv.size()), c.act.m(), &c.cylinder});
  }
  Stepper stepper(rule);
  std::vector<Symbol> x(coords.size(), 0);
  std::uint64_t hits = 0;
  for (std::uint64_t visited = 0; visited < *total; ++visited) {
    bool inside = true;
    for (const auto& slot : slots) {
      const auto image = stepper.run(std::span<const Symbol>(x).subspan(slot.offset, slot.length), slot.steps);
      if (!std::equal(image.begin(), image.end(), slot.cylinder->symbols().begin())) {
        inside = false;
        break;
      }
    }
    hits += inside ? 1 : 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (++x[k] < a) break;
      x[k] = 0;
    }
  }
  return ExactProb(hits, static_cast<int>(coords.size()), rule.modulus());
}

}  // namespace

ExactProb event_measure(const EventSpec& e, const LocalRule& rule, std::uint64_t budget,
                        MeasureStrategy strategy) {
  check_alphabets(e, rule);
  switch (strategy) {
    case MeasureStrategy::automatic:
      return rule.modulus().is_prime() ? measure_by_elimination(e, rule)
                                       : measure_by_enumeration(e, rule, budget);
    case MeasureStrategy::linear_algebra:
      if (!rule.modulus().is_prime()) {
        throw NotPrime("linear-algebra strategy needs a prime alphabet size, got " + std::to_string(rule.a()));
      }
      return measure_by_elimination(e, rule);
    case MeasureStrategy::enumeration:
      return measure_by_enumeration(e, rule, budget);
  }
  throw PreconditionViolation("unknown measure strategy");
}

}  // namespace dirca
