#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dirca/rule.hpp"

namespace dirca {

// Which digit the binomial weights are applied to:
//   leading: s_n = sum_{l=0}^{nN} C(nN, l) x_{l+1}
//   action: s_n = sum_{l=0}^{nN} C(nN, l) x_{n+l}   (= (T^{nN} sigma^n x)_0)
enum class IndexVariant { leading, action };

std::string_view to_string(IndexVariant v);
IndexVariant parse_variant(std::string_view text);

// Finite prefix x_1, x_2, ... of a k-adic development.
class DigitStream {
 public:
  // Throws PreconditionViolation on a digit >= k.
  DigitStream(Modulus k, std::vector<Symbol> digits, std::string provenance = "explicit");

  Modulus k() const noexcept { return k_; }
  std::size_t size() const noexcept { return digits_.size(); }
  // x_i, 1-based.
  Symbol x(std::size_t i) const { return digits_.at(i - 1); }
  std::span<const Symbol> digits() const noexcept { return digits_; }
  const std::string& provenance() const noexcept { return provenance_; }

 private:
  Modulus k_;
  std::vector<Symbol> digits_;
  std::string provenance_;
};

// Seeded i.i.d. uniform digits (see sample_symbols).
DigitStream random_digit_stream(std::uint64_t seed, Modulus k, std::size_t length);

// Digits needed by sequence_s_*: n_max * N + n_max + 1.
std::size_t required_prefix(std::int64_t N, std::int64_t n_max);

// (C(n, l) mod k), l = 0..n, by additive row updates.
std::vector<Symbol> pascal_row_mod(std::int64_t n, int k);

// C(n, l) mod p via base-p digits. Throws NotPrime.
Symbol binom_mod_lucas(std::uint64_t n, std::uint64_t l, int p);

struct EngineOptions {
  // Use byte-per-cell rows even when a packed kernel exists (k = 2, 3, 4).
  bool force_generic = false;
};

// s_1..s_{n_max} from one running row of CA images T^t x (rule x_0 + x_1 mod k),
// advanced by T^N per term. Bit-packed for k = 2, two bit planes for k = 3
// and 4, one byte per cell otherwise. Throws PrefixTooShort.
std::vector<Symbol> sequence_s_engine(const DigitStream& x, std::int64_t N, std::int64_t n_max,
                                      IndexVariant variant, EngineOptions options = {});

// Same sequence by explicit binomial-weighted sums over Pascal rows mod k.
std::vector<Symbol> sequence_s_direct(const DigitStream& x, std::int64_t N, std::int64_t n_max,
                                      IndexVariant variant);

// Same sequence with every weight taken from binom_mod_lucas. k must be prime.
std::vector<Symbol> sequence_s_lucas(const DigitStream& x, std::int64_t N, std::int64_t n_max,
                                     IndexVariant variant);

struct FreqReport {
  int k = 0;
  std::vector<std::uint64_t> counts;  // per residue j
  std::uint64_t n_max = 0;
  double max_dev = 0;  // max_j |counts[j] / n_max - 1/k|
  std::string variant;

  double freq(int j) const { return static_cast<double>(counts.at(static_cast<std::size_t>(j))) / static_cast<double>(n_max); }
};

FreqReport frequency_report(std::span<const Symbol> s, int k, std::string variant = {});

struct OracleAgreement {
  bool agree = false;
  std::size_t engine_direct_mismatches = 0;  // summed over both variants
  std::size_t engine_lucas_mismatches = 0;
};

// Engine, direct and Lucas sequences compared termwise for both variants.
// Throws NotPrime.
OracleAgreement engine_vs_lucas_check(const DigitStream& x, std::int64_t N, std::int64_t n_max, int p);

}  // namespace dirca
