#include "dirca/rule.hpp"

#include <charconv>
#include <numeric>

#include "dirca/errors.hpp"

namespace dirca {

Modulus::Modulus(int a) : a_(a) {
  if (a < 2) throw BadAlphabet("alphabet size must be >= 2, got " + std::to_string(a));
  if (a > kMaxAlphabet) {
    throw BadAlphabet("alphabet size must be <= " + std::to_string(kMaxAlphabet) + ", got " +
                      std::to_string(a));
  }
}

bool Modulus::is_prime() const noexcept {
  for (int d = 2; d * d <= a_; ++d) {
    if (a_ % d == 0) return false;
  }
  return true;
}

LocalRule::LocalRule(Modulus modulus, std::vector<Symbol> coeffs)
    : modulus_(modulus),
      radius_(static_cast<int>(coeffs.size() / 2)),
      coeffs_(std::move(coeffs)),
      min_dep_(0),
      max_dep_(0),
      left_invertible_(false),
      right_invertible_(false),
      one_sided_(false) {
  const int r = radius_;
  int lo = r + 1;
  int hi = -r - 1;
  for (int i = -r; i <= r; ++i) {
    if (coeffs_[static_cast<std::size_t>(i + r)] != 0) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  min_dep_ = lo;
  max_dep_ = hi;
  const int a = modulus_.value();
  left_invertible_ = std::gcd(static_cast<int>(coeffs_.front()), a) == 1;
  right_invertible_ = std::gcd(static_cast<int>(coeffs_.back()), a) == 1;
  one_sided_ = min_dep_ >= 0;
}

LocalRule LocalRule::validate(int a, std::span<const std::int64_t> coeffs) {
  const Modulus modulus(a);
  if (coeffs.size() < 3 || coeffs.size() % 2 == 0) {
    throw PreconditionViolation("rule needs an odd number (>= 3) of coefficients, got " +
                                std::to_string(coeffs.size()));
  }
  std::vector<Symbol> reduced;
  reduced.reserve(coeffs.size());
  bool any_nonzero = false;
  for (const auto c : coeffs) {
    auto v = c % a;
    if (v < 0) v += a;
    any_nonzero = any_nonzero || v != 0;
    reduced.push_back(static_cast<Symbol>(v));
  }
  if (!any_nonzero) throw AllZeroRule("every coefficient vanishes mod " + std::to_string(a));
  return LocalRule(modulus, std::move(reduced));
}

Symbol LocalRule::coeff(int offset) const noexcept {
  if (offset < -radius_ || offset > radius_) return 0;
  return coeffs_[static_cast<std::size_t>(offset + radius_)];
}

std::string LocalRule::literal() const {
  std::string out = "a=" + std::to_string(a()) + ";coeffs=";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coeffs_[i]);
  }
  return out;
}

LocalRule validate_rule(int a, std::span<const std::int64_t> coeffs) {
  return LocalRule::validate(a, coeffs);
}

namespace {

std::int64_t parse_int_field(std::string_view text, std::string_view literal) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("malformed integer '" + std::string(text) + "' in rule literal '" +
                     std::string(literal) + "'");
  }
  return value;
}

}  // namespace

LocalRule parse_rule(std::string_view literal) {
  constexpr std::string_view kA = "a=";
  constexpr std::string_view kCoeffs = ";coeffs=";
  if (!literal.starts_with(kA)) {
    throw ParseError("rule literal must start with 'a=': '" + std::string(literal) + "'");
  }
  const auto sep = literal.find(kCoeffs);
  if (sep == std::string_view::npos) {
    throw ParseError("rule literal lacks ';coeffs=': '" + std::string(literal) + "'");
  }
  const auto a = parse_int_field(literal.substr(kA.size(), sep - kA.size()), literal);
  std::vector<std::int64_t> coeffs;
  auto rest = literal.substr(sep + kCoeffs.size());
  while (true) {
    const auto comma = rest.find(',');
    coeffs.push_back(parse_int_field(rest.substr(0, comma), literal));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (a < 2 || a > kMaxAlphabet) {
    throw BadAlphabet("alphabet size out of range in '" + std::string(literal) + "'");
  }
  return LocalRule::validate(static_cast<int>(a), coeffs);
}

}  // namespace dirca
