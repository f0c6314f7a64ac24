#include "dirca/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "dirca/errors.hpp"
#include "dirca/packed_row.hpp"
#include "dirca/random.hpp"

namespace dirca {

Interval orbit_support(const ActionIndex& direction, const Cylinder& b, std::int64_t N, const LocalRule& rule) {
  if (N < 1) throw PreconditionViolation("orbit horizon N must be >= 1");
  const ActionIndex last((N - 1) * direction.m(), (N - 1) * direction.n());
  const auto end = needed_support(b.interval(), last, rule);
  return {std::min(end.lo, b.lo()), std::max(end.hi, b.hi())};
}

namespace {

template <class Row>
bool in_cylinder(const Row& row, const Cylinder& b) {
  for (auto i = b.lo(); i <= b.hi(); ++i) {
    if (row.at(i) != b.at(i)) return false;
  }
  return true;
}

// Generic symbol row with absolute coordinates.
class SymbolRow {
 public:
  SymbolRow(const WindowConfig& w, const LocalRule& rule) : lo_(w.lo()), cells_(w.symbols().begin(), w.symbols().end()), stepper_(rule) {}

  Symbol at(Coord i) const { return cells_[static_cast<std::size_t>(i - lo_)]; }

  void advance(std::int64_t m, std::int64_t n) {
    if (m > 0) {
      const auto image = stepper_.run(cells_, m);
      cells_.assign(image.begin(), image.end());
      lo_ -= m * stepper_.rule().min_dep();
    }
    lo_ -= n;
  }

 private:
  Coord lo_;
  std::vector<Symbol> cells_;
  Stepper stepper_;
};

template <class Row, class Advance>
void run_orbit(Row& row, const Cylinder& b, std::int64_t N, bool keep, OrbitStats& stats, Advance&& advance) {
  std::uint64_t hits = 0;
  for (std::int64_t k = 0; k < N; ++k) {
    if (k > 0) advance(row);
    hits += in_cylinder(row, b) ? 1 : 0;
    if (keep) stats.hits.push_back(static_cast<std::uint32_t>(hits));
  }
  stats.final_hits = hits;
}

}  // namespace

OrbitStats birkhoff_average(const WindowConfig& x, const ActionIndex& direction, const Cylinder& b,
                            std::int64_t N, const LocalRule& rule, bool keep_running) {
  if (x.modulus() != rule.modulus() || b.modulus() != rule.modulus()) {
    throw PreconditionViolation("configuration, cylinder and rule alphabets differ");
  }
  const auto support = orbit_support(direction, b, N, rule);
  if (!x.interval().contains(support)) {
    throw WindowTooSmall("orbit of " + std::to_string(N) + " points along " + to_string(direction) +
                         " needs x on " + to_string(support) + ", window is " + to_string(x.interval()));
  }
  OrbitStats stats;
  stats.direction = direction;
  stats.N = N;
  if (keep_running) stats.hits.reserve(static_cast<std::size_t>(N));
  const auto m = direction.m();
  const auto n = direction.n();
  const auto window = x.restrict_to(support);
  if (rule.a() == 2) {
    PackedRow row(window);
    run_orbit(row, b, N, keep_running, stats, [&](PackedRow& r) {
      for (std::int64_t s = 0; s < m; ++s) r.step(rule);
      r.shift(n);
    });
  } else {
    SymbolRow row(window, rule);
    run_orbit(row, b, N, keep_running, stats, [&](SymbolRow& r) { r.advance(m, n); });
  }
  stats.mu_b = cylinder_measure(b).to_double();
  stats.final_average = static_cast<double>(stats.final_hits) / static_cast<double>(N);
  stats.final_deviation = std::abs(stats.final_average - stats.mu_b);
  return stats;
}

OrbitFrequencyReport orbit_frequency_report(std::span<const std::uint64_t> seeds, const ActionIndex& direction,
                                            const Cylinder& b, std::int64_t N, const LocalRule& rule,
                                            double tolerance, bool keep_running) {
  OrbitFrequencyReport report;
  report.tolerance = tolerance;
  const auto support = orbit_support(direction, b, N, rule);
  for (const auto seed : seeds) {
    const auto x = sample_config(seed, support, rule.modulus());
    auto stats = birkhoff_average(x, direction, b, N, rule, keep_running);
    stats.seed = seed;
    if (stats.final_deviation < tolerance) ++report.within;
    report.per_seed.push_back(std::move(stats));
  }
  report.pass_fraction = seeds.empty() ? 0.0 : static_cast<double>(report.within) / static_cast<double>(seeds.size());
  return report;
}

}  // namespace dirca
