#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dirca/window.hpp"

namespace dirca {

// A binary configuration window packed 64 cells per word, bit t of the
// string holding coordinate lo + t. Bits past size() are kept zero.
class PackedRow {
 public:
  PackedRow() = default;
  // w must be over Z_2.
  explicit PackedRow(const WindowConfig& w);
  PackedRow(Coord lo, std::span<const Symbol> bits);

  Coord lo() const noexcept { return lo_; }
  std::size_t size() const noexcept { return nbits_; }
  Interval interval() const noexcept { return {lo_, lo_ + static_cast<Coord>(nbits_) - 1}; }

  Symbol at(Coord i) const noexcept {
    const auto t = static_cast<std::uint64_t>(i - lo_);
    return static_cast<Symbol>((words_[t >> 6] >> (t & 63)) & 1u);
  }

  // y_i = XOR over d in offsets of x_{i + d}; offsets sorted, offsets[0] == 0.
  // The row keeps its lo and loses offsets.back() cells on the right.
  void xor_combine(std::span<const int> offsets);

  // One application of T (rule over Z_2).
  void step(const LocalRule& rule);

  // sigma^n: relabel coordinates, (sigma^n x)_i = x_{i+n}.
  void shift(std::int64_t n) noexcept { lo_ -= n; }

  // Discards cells left of coordinate c, in whole words only.
  void drop_words_before(Coord c);

  WindowConfig to_window() const;

 private:
  void clear_tail() noexcept;

  Coord lo_ = 0;
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;  // one spare zero word at the end
};

}  // namespace dirca
