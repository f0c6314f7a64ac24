#pragma once

#include <compare>
#include <optional>
#include <span>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dirca/rational.hpp"
#include "dirca/rule.hpp"
#include "dirca/window.hpp"

namespace dirca {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

// _lo[s_lo ... s_hi]_hi: configurations with prescribed symbols on [lo, hi].
class Cylinder {
 public:
  // Throws PreconditionViolation on an empty pattern or a symbol >= a.
  Cylinder(Coord lo, std::vector<Symbol> symbols, Modulus modulus);

  Coord lo() const noexcept { return lo_; }
  Coord hi() const noexcept { return lo_ + static_cast<Coord>(symbols_.size()) - 1; }
  Interval interval() const noexcept { return {lo(), hi()}; }
  std::size_t size() const noexcept { return symbols_.size(); }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  Symbol at(Coord i) const { return symbols_.at(static_cast<std::size_t>(i - lo_)); }
  Modulus modulus() const noexcept { return modulus_; }

  Cylinder translated(Coord by) const { return Cylinder(lo_ + by, symbols_, modulus_); }

  friend bool operator==(const Cylinder&, const Cylinder&) = default;

 private:
  Coord lo_;
  std::vector<Symbol> symbols_;
  Modulus modulus_;
};

// "[<lo>:<sym>...<sym>]", symbols as base-36 digits, e.g. "[0:0]", "[-1:01]".
Cylinder parse_cylinder(std::string_view literal, Modulus modulus);
std::string to_string(const Cylinder& c);

// xi(-M, M): the a^(2M+1) cylinders on [-M, M].
class CylinderPartition {
 public:
  CylinderPartition(std::int64_t M, Modulus modulus);

  std::int64_t M() const noexcept { return M_; }
  Interval interval() const noexcept { return {-M_, M_}; }
  std::uint64_t atom_count() const noexcept { return count_; }
  // Atom number `index` in lexicographic order of its symbol string.
  Cylinder atom(std::uint64_t index) const;
  std::vector<Cylinder> atoms() const;

 private:
  std::int64_t M_;
  Modulus modulus_;
  std::uint64_t count_;
};

// Probability count / a^exponent, kept with an uncollapsed a-power
// denominator. Stored canonically: count is not divisible by a unless the
// exponent is 0, and zero is (0, 0).
class ExactProb {
 public:
  ExactProb(std::uint64_t count, int exponent, Modulus modulus);

  static ExactProb one(Modulus modulus) { return ExactProb(1, 0, modulus); }
  static ExactProb zero(Modulus modulus) { return ExactProb(0, 0, modulus); }

  std::uint64_t count() const noexcept { return count_; }
  int exponent() const noexcept { return exponent_; }
  Modulus modulus() const noexcept { return modulus_; }

  BigRational value() const;
  double to_double() const;
  // -p ln p, computed from (count, exponent).
  double neg_p_log_p() const;

  // "count/a^w"
  std::string str() const;

  ExactProb operator*(const ExactProb& other) const;

  friend bool operator==(const ExactProb&, const ExactProb&) = default;
  // Orders by value.
  friend std::strong_ordering operator<=>(const ExactProb& x, const ExactProb& y);

 private:
  std::uint64_t count_;
  int exponent_;
  Modulus modulus_;
};

// Lexicographic (exponent, count) order; a cheap canonical order for
// multisets of probabilities over the same alphabet.
struct CanonicalLess {
  bool operator()(const ExactProb& x, const ExactProb& y) const noexcept {
    return x.exponent() != y.exponent() ? x.exponent() < y.exponent() : x.count() < y.count();
  }
};

struct Constraint {
  ActionIndex act;
  Cylinder cylinder;
};

// The event  intersection_i Phi^{-(m_i, n_i)} B_i.
struct EventSpec {
  std::vector<Constraint> constraints;
};

enum class MeasureStrategy {
  automatic,       // linear algebra for prime a, enumeration otherwise
  linear_algebra,  // prime a only
  enumeration,
};

ExactProb cylinder_measure(const Cylinder& b);

Interval pullback_support(const Cylinder& b, const ActionIndex& act, const LocalRule& rule);

// Sorted coordinates that the event depends on (union of pullback supports).
std::vector<Coord> event_support(const EventSpec& e, const LocalRule& rule);

// Exact mu(intersection Phi^{-(m_i,n_i)} B_i) under the uniform Bernoulli
// measure. Throws BudgetExceeded when enumeration would visit more than
// `budget` assignments; NotPrime when linear_algebra is forced for composite a.
ExactProb event_measure(const EventSpec& e, const LocalRule& rule,
                        std::uint64_t budget = kDefaultBudget,
                        MeasureStrategy strategy = MeasureStrategy::automatic);

// Coefficients of the m-th power of the rule polynomial, for offsets
// m*min_dep .. m*max_dep: (T^m x)_i = sum_k c_k x_{i + m*min_dep + k}.
std::vector<Symbol> rule_power(const LocalRule& rule, std::int64_t m);

// a^e as a 64-bit integer, or nothing on overflow.
std::optional<std::uint64_t> checked_power(std::uint64_t a, std::uint64_t e);

}  // namespace dirca
