#include "dirca/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "dirca/errors.hpp"

namespace dirca {

namespace {

std::string format_label(std::span<const Symbol> label, std::size_t block) {
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i && i % block == 0) out += '|';
    out += std::to_string(label[i]);
  }
  return out;
}

// Enumerates every assignment of the source window and reports, for each,
// the observed xi(-M,M) blocks at each observation point.
class JoinEnumerator {
 public:
  JoinEnumerator(std::vector<ActionIndex> points, std::int64_t M, const LocalRule& rule,
                 std::optional<Interval> extra = {})
      : points_(std::move(points)), M_(M), rule_(rule), stepper_(rule) {
    if (M < 0) throw PreconditionViolation("partition radius M must be >= 0");
    const Interval target{-M, M};
    for (const auto& p : points_) {
      const auto iv = needed_support(target, p, rule);
      for (auto c = iv.lo; c <= iv.hi; ++c) source_.push_back(c);
    }
    if (extra) {
      for (auto c = extra->lo; c <= extra->hi; ++c) source_.push_back(c);
    }
    std::sort(source_.begin(), source_.end());
    source_.erase(std::unique(source_.begin(), source_.end()), source_.end());
    for (const auto& p : points_) {
      const auto iv = needed_support(target, p, rule);
      slots_.push_back({offset_of(iv.lo), static_cast<std::size_t>(iv.size()), p.m()});
    }
  }

  const std::vector<Coord>& source() const noexcept { return source_; }
  std::size_t offset_of(Coord c) const {
    return static_cast<std::size_t>(std::lower_bound(source_.begin(), source_.end(), c) - source_.begin());
  }

  std::uint64_t total(std::uint64_t budget) const {
    const auto a = static_cast<std::uint64_t>(rule_.a());
    const auto total = checked_power(a, source_.size());
    if (!total || *total > budget) {
      throw BudgetExceeded("join enumeration over " + std::to_string(source_.size()) + " cells (" +
                           std::to_string(a) + "^" + std::to_string(source_.size()) +
                           " assignments) exceeds budget " + std::to_string(budget));
    }
    return *total;
  }

  // f(std::string_view label, std::span<const Symbol> assignment)
  template <class F>
  void for_each(std::uint64_t budget, F&& f) {
    const auto count = total(budget);
    const auto a = static_cast<Symbol>(rule_.a());
    const std::size_t block = static_cast<std::size_t>(2 * M_ + 1);
    std::vector<Symbol> x(source_.size(), 0);
    std::string label(points_.size() * block, '\0');
    for (std::uint64_t visited = 0; visited < count; ++visited) {
      for (std::size_t p = 0; p < slots_.size(); ++p) {
        const auto& slot = slots_[p];
        const auto image = stepper_.run(std::span<const Symbol>(x).subspan(slot.offset, slot.length), slot.steps);
        std::copy(image.begin(), image.end(), label.begin() + static_cast<std::ptrdiff_t>(p * block));
      }
      f(std::string_view(label), std::span<const Symbol>(x));
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (++x[k] < a) break;
        x[k] = 0;
      }
    }
  }

 private:
  struct Slot {
    std::size_t offset;
    std::size_t length;
    std::int64_t steps;
  };

  std::vector<ActionIndex> points_;
  std::int64_t M_;
  LocalRule rule_;
  Stepper stepper_;
  std::vector<Coord> source_;
  std::vector<Slot> slots_;
};

std::vector<ActionIndex> observation_points(const SequenceS& s, JoinOptions options) {
  std::vector<ActionIndex> points;
  if (options.include_identity) points.emplace_back(0, 0);
  points.insert(points.end(), s.points.begin(), s.points.end());
  return points;
}

std::span<const Symbol> as_symbols(std::string_view s) {
  return {reinterpret_cast<const Symbol*>(s.data()), s.size()};
}

}  // namespace

Interval JoinAtoms::window() const noexcept {
  if (source.empty()) return {};
  return {source.front(), source.back()};
}

double JoinAtoms::entropy() const {
  if (const auto e = uniform_exponent()) {
    return static_cast<double>(*e * std::log(static_cast<long double>(modulus.value())));
  }
  // Group equal measures so the sum does not depend on atom order.
  std::map<std::pair<int, std::uint64_t>, std::uint64_t> groups;
  for (const auto& atom : atoms) ++groups[{atom.prob.exponent(), atom.prob.count()}];
  long double h = 0;
  for (const auto& [key, multiplicity] : groups) {
    h += static_cast<long double>(multiplicity) *
         ExactProb(key.second, key.first, modulus).neg_p_log_p();
  }
  return static_cast<double>(h);
}

bool JoinAtoms::uniform() const noexcept {
  return std::all_of(atoms.begin(), atoms.end(),
                     [&](const JoinAtom& atom) { return atom.hits == atoms.front().hits; });
}

std::optional<int> JoinAtoms::uniform_exponent() const noexcept {
  if (atoms.empty() || !uniform()) return std::nullopt;
  const auto& p = atoms.front().prob;
  if (p.count() != 1) return std::nullopt;
  const auto expected = checked_power(static_cast<std::uint64_t>(modulus.value()),
                                      static_cast<std::uint64_t>(p.exponent()));
  if (!expected || *expected != atoms.size()) return std::nullopt;
  return p.exponent();
}

std::vector<ExactProb> JoinAtoms::sorted_probabilities() const {
  std::vector<ExactProb> probs;
  probs.reserve(atoms.size());
  for (const auto& atom : atoms) probs.push_back(atom.prob);
  std::sort(probs.begin(), probs.end(), CanonicalLess{});
  return probs;
}

JoinAtoms join_atoms(const SequenceS& s, std::int64_t M, const LocalRule& rule, std::uint64_t budget,
                     JoinOptions options) {
  auto points = observation_points(s, options);
  JoinEnumerator enumerator(points, M, rule);
  std::unordered_map<std::string, std::uint64_t> hits;
  enumerator.for_each(budget, [&](std::string_view label, std::span<const Symbol>) {
    ++hits[std::string(label)];
  });

  JoinAtoms result{rule.modulus(), M, std::move(points), enumerator.source(), {}};
  const int w = static_cast<int>(result.source.size());
  result.atoms.reserve(hits.size());
  for (auto& [label, count] : hits) {
    const auto symbols = as_symbols(label);
    result.atoms.push_back({{symbols.begin(), symbols.end()}, count, ExactProb(count, w, rule.modulus())});
  }
  std::sort(result.atoms.begin(), result.atoms.end(),
            [](const JoinAtom& x, const JoinAtom& y) { return x.label < y.label; });
  return result;
}

double join_entropy(const SequenceS& s, std::int64_t M, const LocalRule& rule, std::uint64_t budget,
                    JoinOptions options) {
  return join_atoms(s, M, rule, budget, options).entropy();
}

ClosedForm closed_form_hS(const LocalRule& rule, const SequenceS& s) {
  const auto report = validate_sequence(s);
  auto failed = report.failed_hypotheses();
  if (!rule.left_invertible()) failed.emplace_back("gcd(lambda_-r,a)=1");
  if (!rule.right_invertible()) failed.emplace_back("gcd(lambda_r,a)=1");
  if (!failed.empty()) {
    std::string msg = "closed form needs:";
    for (const auto& f : failed) msg += " " + f;
    throw HypothesisViolation(msg);
  }
  const std::size_t len = s.size();
  const std::size_t tail_start = len / 2 + 1;
  Rational best(s.points[tail_start - 1].m(), static_cast<std::int64_t>(tail_start));
  for (std::size_t l = tail_start + 1; l <= len; ++l) {
    best = std::max(best, Rational(s.points[l - 1].m(), static_cast<std::int64_t>(l)));
  }
  const long double ratio = static_cast<long double>(best.numerator()) / best.denominator();
  const long double value = 2.0L * rule.radius() * std::log(static_cast<long double>(rule.a())) * ratio;
  return {static_cast<double>(value), best, tail_start};
}

bool EntropyProfile::nondecreasing() const noexcept {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    // Exact rows compare exactly; others get rounding slack.
    if (rows[i].exact_exponent && rows[i - 1].exact_exponent) {
      if (*rows[i].exact_exponent < *rows[i - 1].exact_exponent) return false;
    } else if (rows[i].H < rows[i - 1].H - 1e-12) {
      return false;
    }
  }
  return true;
}

EntropyProfile hS_profile(const SequenceS& s, std::int64_t M, const LocalRule& rule, std::uint64_t budget) {
  EntropyProfile profile;
  for (std::size_t l = 0; l <= s.size(); ++l) {
    const auto atoms = join_atoms(s.prefix(l), M, rule, budget);
    const double h = atoms.entropy();
    profile.rows.push_back({l, h, h / static_cast<double>(l + 1), atoms.size(), atoms.window(),
                            atoms.uniform(), atoms.uniform_exponent()});
  }
  try {
    profile.closed_form = closed_form_hS(rule, s);
  } catch (const HypothesisViolation&) {
    profile.closed_form.reset();
  }
  return profile;
}

StructureReport verify_atom_structure(const SequenceS& s, std::int64_t M, const LocalRule& rule,
                                      std::uint64_t budget) {
  StructureReport report;
  const std::int64_t r = rule.radius();
  if (s.empty()) {
    report.predicted = {-M, M};
  } else {
    const auto& last = s.points.back();
    const auto half = r * last.m() + M;
    report.predicted = {-half + last.n(), half + last.n()};
  }
  const auto points = observation_points(s, {});
  JoinEnumerator enumerator(points, M, rule, report.predicted);
  const auto offset = enumerator.offset_of(report.predicted.lo);
  const auto width = static_cast<std::size_t>(report.predicted.size());
  const std::size_t block = static_cast<std::size_t>(2 * M + 1);

  std::unordered_map<std::string, std::string> label_to_cells;
  std::unordered_map<std::string, std::string> cells_to_label;
  std::unordered_map<std::string, std::uint64_t> hits;
  bool functional = true;
  enumerator.for_each(budget, [&](std::string_view label, std::span<const Symbol> x) {
    std::string key(label);
    std::string cells(reinterpret_cast<const char*>(x.data() + offset), width);
    ++hits[key];
    if (!functional) return;
    const auto [it, fresh] = label_to_cells.emplace(key, cells);
    if (!fresh && it->second != cells) {
      functional = false;
      report.counterexample = "atom " + format_label(as_symbols(key), block) +
                              " spans several patterns on " + to_string(report.predicted) + ": " +
                              format_label(as_symbols(it->second), width) + " and " +
                              format_label(as_symbols(cells), width);
      return;
    }
    const auto [jt, fresh_cells] = cells_to_label.emplace(cells, key);
    if (!fresh_cells && jt->second != key) {
      functional = false;
      report.counterexample = "pattern " + format_label(as_symbols(cells), width) + " on " +
                              to_string(report.predicted) + " is split between atoms " +
                              format_label(as_symbols(jt->second), block) + " and " +
                              format_label(as_symbols(key), block);
    }
  });

  report.atom_count = hits.size();
  const auto expected = checked_power(static_cast<std::uint64_t>(rule.a()), width);
  report.expected_atoms = expected.value_or(0);
  report.bijective = functional && expected && report.atom_count == *expected;
  if (functional && !report.bijective) {
    report.counterexample = std::to_string(report.atom_count) + " atoms, expected " +
                            std::to_string(report.expected_atoms);
  }
  std::uint64_t first = hits.empty() ? 0 : hits.begin()->second;
  report.uniform = std::all_of(hits.begin(), hits.end(), [&](const auto& kv) { return kv.second == first; });
  if (!report.uniform && report.counterexample.empty()) {
    auto [lo, hi] = std::minmax_element(hits.begin(), hits.end(),
                                        [](const auto& x, const auto& y) { return x.second < y.second; });
    report.counterexample = "atom measures differ: " + std::to_string(lo->second) + " vs " +
                            std::to_string(hi->second) + " assignments";
  }
  report.pass = report.bijective && report.uniform;
  return report;
}

InvarianceReport direction_invariance_check(const SequenceS& s1, const SequenceS& s2, std::int64_t M,
                                            const LocalRule& rule, std::uint64_t budget) {
  if (s1.size() != s2.size()) throw PreconditionViolation("sequences differ in length");
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (s1.points[i].m() != s2.points[i].m()) {
      throw PreconditionViolation("sequences must share their CA exponents m_i");
    }
    if (s1.points[i].m() <= s1.points[i].n() || s2.points[i].m() <= s2.points[i].n()) {
      throw PreconditionViolation("direction invariance needs m_i > n_i");
    }
  }
  InvarianceReport report;
  report.equal = true;
  for (std::size_t l = 0; l <= s1.size(); ++l) {
    const auto a1 = join_atoms(s1.prefix(l), M, rule, budget);
    const auto a2 = join_atoms(s2.prefix(l), M, rule, budget);
    const auto h1 = a1.entropy();
    const auto h2 = a2.entropy();
    report.first.rows.push_back({l, h1, h1 / static_cast<double>(l + 1), a1.size(), a1.window(),
                                 a1.uniform(), a1.uniform_exponent()});
    report.second.rows.push_back({l, h2, h2 / static_cast<double>(l + 1), a2.size(), a2.window(),
                                  a2.uniform(), a2.uniform_exponent()});
    if (report.equal && a1.sorted_probabilities() != a2.sorted_probabilities()) {
      report.equal = false;
      report.first_difference = l;
    }
  }
  return report;
}

IndependenceReport independence_join_check(const SequenceS& s, std::int64_t M, const LocalRule& rule,
                                           std::uint64_t budget, JoinOptions options) {
  const auto joint = join_atoms(s, M, rule, budget, options);
  IndependenceReport report;
  report.joint_entropy = joint.entropy();
  const std::size_t factors = joint.points.size();
  const std::size_t block = joint.block();

  const BigInt total = boost::multiprecision::pow(BigInt(rule.a()), static_cast<unsigned>(joint.source.size()));
  std::vector<std::map<std::vector<Symbol>, std::uint64_t>> marginals(factors);
  for (const auto& atom : joint.atoms) {
    for (std::size_t f = 0; f < factors; ++f) {
      const auto first = atom.label.begin() + static_cast<std::ptrdiff_t>(f * block);
      marginals[f][std::vector<Symbol>(first, first + static_cast<std::ptrdiff_t>(block))] += atom.hits;
    }
  }
  for (const auto& marginal : marginals) {
    long double h = 0;
    for (const auto& [label, hits] : marginal) {
      const long double p = static_cast<long double>(BigRational(BigInt(hits), total).convert_to<double>());
      if (p > 0) h -= p * std::log(p);
    }
    report.marginal_entropies.push_back(static_cast<double>(h));
  }
  report.independent = true;
  if (factors <= 1) return report;

  const BigInt scale = boost::multiprecision::pow(total, static_cast<unsigned>(factors - 1));
  for (const auto& atom : joint.atoms) {
    BigInt product = 1;
    for (std::size_t f = 0; f < factors; ++f) {
      const auto first = atom.label.begin() + static_cast<std::ptrdiff_t>(f * block);
      product *= marginals[f].at(std::vector<Symbol>(first, first + static_cast<std::ptrdiff_t>(block)));
    }
    if (BigInt(atom.hits) * scale != product) {
      report.independent = false;
      report.counterexample = "atom " + format_label(atom.label, block) + " has measure " + atom.prob.str() +
                              ", product of marginals differs";
      break;
    }
  }
  return report;
}

LogBase parse_log_base(std::string_view text) {
  if (text == "e" || text == "nats") return LogBase::nats;
  if (text == "2" || text == "bits") return LogBase::bits;
  if (text == "a" || text == "alphabet") return LogBase::alphabet;
  throw ParseError("unknown log base '" + std::string(text) + "' (expected e, 2 or a)");
}

std::string_view to_string(LogBase base) {
  switch (base) {
    case LogBase::nats: return "e";
    case LogBase::bits: return "2";
    case LogBase::alphabet: return "a";
  }
  return "?";
}

double in_log_base(double nats, LogBase base, int a) {
  switch (base) {
    case LogBase::nats: return nats;
    case LogBase::bits: return nats / std::log(2.0);
    case LogBase::alphabet: return nats / std::log(static_cast<double>(a));
  }
  return nats;
}

}  // namespace dirca
