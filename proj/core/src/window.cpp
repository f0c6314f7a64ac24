#include "dirca/window.hpp"

#include <algorithm>

#include "dirca/errors.hpp"
#include "dirca/packed_row.hpp"

namespace dirca {

std::string to_string(const Interval& iv) {
  return "[" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "]";
}

ActionIndex::ActionIndex(std::int64_t m, std::int64_t n) : m_(m), n_(n) {
  if (m < 0) throw PreconditionViolation("CA exponent m must be >= 0, got " + std::to_string(m));
}

std::string to_string(const ActionIndex& act) {
  return "(" + std::to_string(act.m()) + "," + std::to_string(act.n()) + ")";
}

WindowConfig::WindowConfig(Coord lo, std::vector<Symbol> symbols, Modulus modulus)
    : lo_(lo), symbols_(std::move(symbols)), modulus_(modulus) {
  for (const auto s : symbols_) {
    if (s >= modulus_.value()) {
      throw PreconditionViolation("symbol " + std::to_string(s) + " outside Z_" +
                                  std::to_string(modulus_.value()));
    }
  }
}

Symbol WindowConfig::at(Coord i) const {
  if (!interval().contains(i)) {
    throw WindowTooSmall("coordinate " + std::to_string(i) + " outside window " +
                         to_string(interval()));
  }
  return symbols_[static_cast<std::size_t>(i - lo_)];
}

WindowConfig WindowConfig::restrict_to(const Interval& iv) const {
  if (!interval().contains(iv)) {
    throw WindowTooSmall("window " + to_string(interval()) + " does not cover " + to_string(iv));
  }
  if (iv.empty()) return WindowConfig(iv.lo, {}, modulus_);
  const auto first = symbols_.begin() + (iv.lo - lo_);
  return WindowConfig(iv.lo, std::vector<Symbol>(first, first + iv.size()), modulus_);
}

namespace {

using Terms = std::vector<std::pair<int, Symbol>>;

Terms rule_terms(const LocalRule& rule) {
  Terms terms;
  for (int j = rule.min_dep(); j <= rule.max_dep(); ++j) {
    if (const auto c = rule.coeff(j); c != 0) terms.emplace_back(j - rule.min_dep(), c);
  }
  return terms;
}

// out[t] = sum_d c_d in[t + d] mod a, for t < out_len.
void step_into(const Symbol* __restrict in, Symbol* __restrict out, std::size_t out_len,
               const Terms& terms, unsigned a) {
  if (terms.size() == 2 && terms[0].second == 1 && terms[1].second == 1) {
    const auto d = static_cast<std::size_t>(terms[1].first);
    for (std::size_t t = 0; t < out_len; ++t) {
      unsigned s = static_cast<unsigned>(in[t]) + in[t + d];
      out[t] = static_cast<Symbol>(s >= a ? s - a : s);
    }
    return;
  }
  for (std::size_t t = 0; t < out_len; ++t) {
    unsigned acc = 0;
    for (const auto& [d, c] : terms) acc += static_cast<unsigned>(c) * in[t + static_cast<std::size_t>(d)];
    out[t] = static_cast<Symbol>(acc % a);
  }
}

void require_steps_fit(std::size_t len, std::int64_t steps, const LocalRule& rule) {
  if (steps <= 0) return;
  const auto width = static_cast<std::int64_t>(rule.dep_width());
  if (static_cast<std::int64_t>(len) <= steps * width) {
    throw WindowTooSmall("window of " + std::to_string(len) + " cells cannot take " +
                         std::to_string(steps) + " step(s) of a rule with dependency width " +
                         std::to_string(width));
  }
}

}  // namespace

Stepper::Stepper(const LocalRule& rule) : rule_(rule), terms_(rule_terms(rule)) {}

std::span<const Symbol> Stepper::run(std::span<const Symbol> in, std::int64_t steps) {
  require_steps_fit(in.size(), steps, rule_);
  if (steps == 0) {
    front_.assign(in.begin(), in.end());
    return front_;
  }
  const auto width = static_cast<std::size_t>(rule_.dep_width());
  const auto a = static_cast<unsigned>(rule_.a());
  std::size_t len = in.size() - width;
  front_.resize(len);
  step_into(in.data(), front_.data(), len, terms_, a);
  for (std::int64_t s = 1; s < steps; ++s) {
    len -= width;
    back_.resize(len);
    step_into(front_.data(), back_.data(), len, terms_, a);
    std::swap(front_, back_);
  }
  return {front_.data(), len};
}

Interval needed_support(const Interval& target, const ActionIndex& act, const LocalRule& rule) {
  return {target.lo + act.n() + act.m() * rule.min_dep(),
          target.hi + act.n() + act.m() * rule.max_dep()};
}

WindowConfig step_once(const WindowConfig& w, const LocalRule& rule) {
  return apply_action(w, ActionIndex(1, 0), rule);
}

WindowConfig apply_action(const WindowConfig& w, const ActionIndex& act, const LocalRule& rule) {
  if (w.modulus() != rule.modulus()) throw PreconditionViolation("window and rule alphabets differ");
  if (act.m() > 0 && w.size() == 0) throw WindowTooSmall("empty window cannot be stepped");
  Stepper stepper(rule);
  const auto out = stepper.run(w.symbols(), act.m());
  const Coord lo = w.lo() - act.m() * rule.min_dep() - act.n();
  return WindowConfig(lo, std::vector<Symbol>(out.begin(), out.end()), w.modulus());
}

Symbol eval_coordinate(const WindowConfig& w, const ActionIndex& act, const LocalRule& rule,
                       Coord i) {
  const auto support = needed_support({i, i}, act, rule);
  if (!w.interval().contains(support)) {
    throw WindowTooSmall("evaluating coordinate " + std::to_string(i) + " under " +
                         to_string(act) + " needs " + to_string(support) + ", window is " +
                         to_string(w.interval()));
  }
  Stepper stepper(rule);
  const auto first = w.symbols().subspan(static_cast<std::size_t>(support.lo - w.lo()),
                                         static_cast<std::size_t>(support.size()));
  return stepper.run(first, act.m())[0];
}

namespace {

Interval trace_support(const WindowConfig& w, const LocalRule& rule, std::int64_t steps, Coord col) {
  if (steps < 0) throw PreconditionViolation("steps must be >= 0");
  // hull of the t = 0 and t = steps supports covers every intermediate step
  auto support = needed_support({col, col}, ActionIndex(steps, 0), rule);
  support = {std::min(support.lo, col), std::max(support.hi, col)};
  if (!w.interval().contains(support)) {
    throw WindowTooSmall("column trace of " + std::to_string(steps) + " steps at " +
                         std::to_string(col) + " needs " + to_string(support) + ", window is " +
                         to_string(w.interval()));
  }
  return support;
}

}  // namespace

std::vector<Symbol> column_trace_generic(const WindowConfig& w, const LocalRule& rule,
                                         std::int64_t steps, Coord col) {
  const auto support = trace_support(w, rule, steps, col);
  const auto terms = rule_terms(rule);
  const auto width = static_cast<std::size_t>(rule.dep_width());
  const auto a = static_cast<unsigned>(rule.a());

  auto row = w.restrict_to(support);
  std::vector<Symbol> cur(row.symbols().begin(), row.symbols().end());
  std::vector<Symbol> next(cur.size());
  Coord lo = support.lo;
  std::vector<Symbol> trace;
  trace.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t t = 1; t <= steps; ++t) {
    const std::size_t len = cur.size() - width;
    step_into(cur.data(), next.data(), len, terms, a);
    cur.swap(next);
    cur.resize(len);
    lo -= rule.min_dep();
    trace.push_back(cur[static_cast<std::size_t>(col - lo)]);
  }
  return trace;
}

std::vector<Symbol> column_trace_packed(const WindowConfig& w, const LocalRule& rule,
                                        std::int64_t steps, Coord col) {
  if (rule.a() != 2) throw PreconditionViolation("bit-packed path requires a = 2");
  const auto support = trace_support(w, rule, steps, col);
  PackedRow row(w.restrict_to(support));
  std::vector<Symbol> trace;
  trace.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t t = 1; t <= steps; ++t) {
    row.step(rule);
    trace.push_back(row.at(col));
  }
  return trace;
}

std::vector<Symbol> column_trace(const WindowConfig& w, const LocalRule& rule, std::int64_t steps,
                                 Coord col) {
  if (rule.a() == 2) return column_trace_packed(w, rule, steps, col);
  return column_trace_generic(w, rule, steps, col);
}

}  // namespace dirca
