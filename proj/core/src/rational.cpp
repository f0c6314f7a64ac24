#include "dirca/rational.hpp"

#include <charconv>
#include <cmath>

#include "dirca/errors.hpp"

namespace dirca {

std::int64_t floor_of(const Rational& q) {
  const auto n = q.numerator();
  const auto d = q.denominator();  // always > 0 for boost::rational
  auto f = n / d;
  if (n % d != 0 && n < 0) --f;
  return f;
}

std::int64_t ceil_of(const Rational& q) {
  const auto n = q.numerator();
  const auto d = q.denominator();
  auto c = n / d;
  if (n % d != 0 && n > 0) ++c;
  return c;
}

std::int64_t round_half_toward_zero(const Rational& q) {
  const auto lo = floor_of(q);
  const auto hi = ceil_of(q);
  if (lo == hi) return lo;
  const Rational below = q - Rational(lo);
  const Rational above = Rational(hi) - q;
  if (below < above) return lo;
  if (above < below) return hi;
  return q < Rational(0) ? hi : lo;
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  const auto num = parse_int(text.substr(0, slash), text);
  const auto den = parse_int(text.substr(slash + 1), text);
  if (den <= 0) throw ParseError("rational '" + std::string(text) + "' needs a positive denominator");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string to_string(const BigRational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const BigRational& q) { return q.convert_to<double>(); }

}  // namespace dirca
