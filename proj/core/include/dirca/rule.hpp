#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dirca {

// One cell value in Z_a. The alphabet is capped at 256 symbols.
using Symbol = std::uint8_t;

inline constexpr int kMaxAlphabet = 256;

// Alphabet / ring size a, 2 <= a <= 256.
class Modulus {
 public:
  explicit Modulus(int a);

  int value() const noexcept { return a_; }
  bool is_prime() const noexcept;

  friend bool operator==(Modulus, Modulus) = default;

 private:
  int a_;
};

// Linear local rule f(x_{-r..r}) = sum lambda_i x_i mod a.
//
// Coefficients are stored reduced mod a. min_dep/max_dep give the tight
// dependency span (offsets of the extreme nonzero coefficients); the declared
// radius r is kept separately because the entropy formula uses it.
class LocalRule {
 public:
  // Throws BadAlphabet (a < 2 or a > 256), AllZeroRule, or
  // PreconditionViolation when coeffs does not have odd length >= 3.
  static LocalRule validate(int a, std::span<const std::int64_t> coeffs);

  Modulus modulus() const noexcept { return modulus_; }
  int a() const noexcept { return modulus_.value(); }
  int radius() const noexcept { return radius_; }

  // lambda_{-r} .. lambda_r
  std::span<const Symbol> coeffs() const noexcept { return coeffs_; }
  // lambda_offset for offset in [-r, r]; zero outside.
  Symbol coeff(int offset) const noexcept;

  int min_dep() const noexcept { return min_dep_; }
  int max_dep() const noexcept { return max_dep_; }
  int dep_width() const noexcept { return max_dep_ - min_dep_; }

  bool left_invertible() const noexcept { return left_invertible_; }
  bool right_invertible() const noexcept { return right_invertible_; }
  bool one_sided() const noexcept { return one_sided_; }

  // "a=<int>;coeffs=<c_-r>,...,<c_r>"
  std::string literal() const;

  friend bool operator==(const LocalRule&, const LocalRule&) = default;

 private:
  LocalRule(Modulus modulus, std::vector<Symbol> coeffs);

  Modulus modulus_;
  int radius_;
  std::vector<Symbol> coeffs_;
  int min_dep_;
  int max_dep_;
  bool left_invertible_;
  bool right_invertible_;
  bool one_sided_;
};

LocalRule validate_rule(int a, std::span<const std::int64_t> coeffs);

// Strict parser for "a=<int>;coeffs=<c>,<c>,..." (no whitespace).
LocalRule parse_rule(std::string_view literal);

}  // namespace dirca
