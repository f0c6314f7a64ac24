#include "dirca/mixing.hpp"

#include "dirca/errors.hpp"

namespace dirca {

BigRational correlation_deviation(const Cylinder& b, const Cylinder& c, const ActionIndex& act,
                                  const LocalRule& rule, std::uint64_t budget, MeasureStrategy strategy) {
  const EventSpec joint{{{act, b}, {ActionIndex(0, 0), c}}};
  const BigRational together = event_measure(joint, rule, budget, strategy).value();
  const BigRational apart = cylinder_measure(b).value() * cylinder_measure(c).value();
  return together >= apart ? together - apart : apart - together;
}

namespace {

BigRational deviation_at(const Cylinder& b, const Cylinder& c, const ActionIndex& p, const LocalRule& rule,
                         std::uint64_t budget, MeasureStrategy strategy) {
  try {
    return correlation_deviation(b, c, p, rule, budget, strategy);
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded("cone point " + to_string(p) + ": " + e.what());
  }
}

}  // namespace

ConeAverage cone_average_deviation(const Cylinder& b, const Cylinder& c, const DirectionCone& cone,
                                   std::int64_t k, const LocalRule& rule, std::uint64_t budget,
                                   MeasureStrategy strategy) {
  const auto points = cone_points(cone, k);
  BigRational sum = 0;
  for (const auto& p : points) sum += deviation_at(b, c, p, rule, budget, strategy);
  const BigRational mean = sum / static_cast<long long>(points.size());
  return {mean, to_double(mean), points.size()};
}

DeviationSeries decay_profile(const Cylinder& b, const Cylinder& c, const DirectionCone& cone,
                              std::int64_t k_max, const LocalRule& rule, std::uint64_t budget,
                              MeasureStrategy strategy) {
  if (k_max < 1) throw PreconditionViolation("decay_profile needs k_max >= 1");
  DeviationSeries series{cone, b, c, {}};
  BigRational sum = 0;
  std::size_t size = 0;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    // Lambda_k adds exactly the m = k-1 slice to Lambda_{k-1}.
    for (const auto& p : cone_slice(cone, k - 1)) {
      sum += deviation_at(b, c, p, rule, budget, strategy);
      ++size;
    }
    const BigRational mean = size == 0 ? BigRational(0) : sum / static_cast<long long>(size);
    series.points.push_back({k, size, mean, to_double(mean), true});
  }
  return series;
}

bool IndependenceTable::beyond_boundary_pass() const noexcept {
  for (const auto& row : rows) {
    if (!row.boundary && !row.pass) return false;
  }
  return true;
}

IndependenceTable independence_point_check(std::int64_t M, std::int64_t N, const LocalRule& rule,
                                           std::int64_t n_max, std::uint64_t budget, std::int64_t m_probe) {
  if (!rule.one_sided()) throw PreconditionViolation("independence points are defined for one-sided rules");
  if (M < 0 || N < 0) throw PreconditionViolation("partition radii must be >= 0");
  const CylinderPartition outer(M, rule.modulus());
  const CylinderPartition inner(N, rule.modulus());
  const auto outer_atoms = outer.atoms();
  const auto inner_atoms = inner.atoms();

  IndependenceTable table{M, N, {}};
  for (std::int64_t n = N + M; n <= n_max; ++n) {
    for (std::int64_t m = 0; m <= m_probe; ++m) {
      const ActionIndex act(m, n);
      bool pass = true;
      for (const auto& a_atom : outer_atoms) {
        const auto pulled = event_measure(EventSpec{{{act, a_atom}}}, rule, budget);
        for (const auto& b_atom : inner_atoms) {
          const auto joint = event_measure(EventSpec{{{act, a_atom}, {ActionIndex(0, 0), b_atom}}}, rule, budget);
          if (joint != pulled * cylinder_measure(b_atom)) {
            pass = false;
            break;
          }
        }
        if (!pass) break;
      }
      table.rows.push_back({m, n, pass, n == N + M});
    }
  }
  return table;
}

}  // namespace dirca
