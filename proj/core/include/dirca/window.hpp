#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dirca/rule.hpp"

namespace dirca {

using Coord = std::int64_t;

// Closed integer interval [lo, hi]; empty when hi < lo.
struct Interval {
  Coord lo = 0;
  Coord hi = -1;

  bool empty() const noexcept { return hi < lo; }
  std::int64_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool contains(Coord i) const noexcept { return lo <= i && i <= hi; }
  bool contains(const Interval& other) const noexcept {
    return other.empty() || (lo <= other.lo && other.hi <= hi);
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& iv);

// Lattice point (m, n) indexing Phi^(m,n) = T^m o sigma^n. m >= 0.
class ActionIndex {
 public:
  ActionIndex() = default;
  // Throws PreconditionViolation when m < 0.
  ActionIndex(std::int64_t m, std::int64_t n);

  std::int64_t m() const noexcept { return m_; }
  std::int64_t n() const noexcept { return n_; }

  friend bool operator==(const ActionIndex&, const ActionIndex&) = default;
  friend auto operator<=>(const ActionIndex&, const ActionIndex&) = default;

 private:
  std::int64_t m_ = 0;
  std::int64_t n_ = 0;
};

std::string to_string(const ActionIndex& act);

// A configuration x restricted to [lo, lo + size - 1].
class WindowConfig {
 public:
  // Throws PreconditionViolation if a symbol is >= a.
  WindowConfig(Coord lo, std::vector<Symbol> symbols, Modulus modulus);

  Coord lo() const noexcept { return lo_; }
  Coord hi() const noexcept { return lo_ + static_cast<Coord>(symbols_.size()) - 1; }
  Interval interval() const noexcept { return {lo(), hi()}; }
  std::size_t size() const noexcept { return symbols_.size(); }
  Modulus modulus() const noexcept { return modulus_; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }

  // Symbol at absolute coordinate i; i must lie in interval().
  Symbol at(Coord i) const;

  // Sub-window over iv, which must lie inside interval().
  WindowConfig restrict_to(const Interval& iv) const;

  friend bool operator==(const WindowConfig&, const WindowConfig&) = default;

 private:
  Coord lo_;
  std::vector<Symbol> symbols_;
  Modulus modulus_;
};

// Iterates T on raw symbol buffers without reallocating between calls.
// Used by the enumeration kernels, which evaluate millions of short windows.
class Stepper {
 public:
  explicit Stepper(const LocalRule& rule);

  // Applies T `steps` times to `in` (cell 0 at coordinate c) and returns the
  // determined cells, which start at coordinate c - steps * min_dep.
  // The view stays valid until the next call. Requires
  // in.size() > steps * dep_width() when steps > 0.
  std::span<const Symbol> run(std::span<const Symbol> in, std::int64_t steps);

  const LocalRule& rule() const noexcept { return rule_; }

 private:
  LocalRule rule_;
  std::vector<std::pair<int, Symbol>> terms_;  // (offset from min_dep, coefficient)
  std::vector<Symbol> front_;
  std::vector<Symbol> back_;
};

// Smallest interval of x that determines (Phi^(m,n) x) on target.
Interval needed_support(const Interval& target, const ActionIndex& act, const LocalRule& rule);

// T(x) on every coordinate determined by w. Throws WindowTooSmall.
WindowConfig step_once(const WindowConfig& w, const LocalRule& rule);

// Phi^(m,n) x on every determined coordinate. Throws WindowTooSmall.
WindowConfig apply_action(const WindowConfig& w, const ActionIndex& act, const LocalRule& rule);

// (Phi^(m,n) x)_i. Throws WindowTooSmall when w misses needed_support.
Symbol eval_coordinate(const WindowConfig& w, const ActionIndex& act, const LocalRule& rule,
                       Coord i);

// ((T^t x)_col) for t = 1..steps. Uses the bit-packed path when a == 2.
// w must cover col and needed_support([col,col], (steps,0)).
std::vector<Symbol> column_trace(const WindowConfig& w, const LocalRule& rule, std::int64_t steps,
                                 Coord col);

// The two concrete implementations behind column_trace.
std::vector<Symbol> column_trace_generic(const WindowConfig& w, const LocalRule& rule,
                                         std::int64_t steps, Coord col);
std::vector<Symbol> column_trace_packed(const WindowConfig& w, const LocalRule& rule,
                                        std::int64_t steps, Coord col);

}  // namespace dirca
