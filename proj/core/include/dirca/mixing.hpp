#pragma once

#include <cstdint>
#include <vector>

#include "dirca/cone.hpp"
#include "dirca/cylinder.hpp"
#include "dirca/rational.hpp"

namespace dirca {

// |mu(Phi^{-(m,n)} B  n  C) - mu(B) mu(C)|, exactly.
BigRational correlation_deviation(const Cylinder& b, const Cylinder& c, const ActionIndex& act,
                                  const LocalRule& rule, std::uint64_t budget = kDefaultBudget,
                                  MeasureStrategy strategy = MeasureStrategy::automatic);

struct ConeAverage {
  BigRational exact;
  double value;
  std::size_t cone_size;
};

// Mean of correlation_deviation over Lambda_k^v(b). BudgetExceeded names the
// offending cone point.
ConeAverage cone_average_deviation(const Cylinder& b, const Cylinder& c, const DirectionCone& cone,
                                   std::int64_t k, const LocalRule& rule,
                                   std::uint64_t budget = kDefaultBudget,
                                   MeasureStrategy strategy = MeasureStrategy::automatic);

struct DeviationPoint {
  std::int64_t k;
  std::size_t cone_size;
  BigRational exact;
  double value;
  bool exact_value = true;
};

struct DeviationSeries {
  DirectionCone cone;
  Cylinder b;
  Cylinder c;
  std::vector<DeviationPoint> points;  // k = 1..k_max
};

DeviationSeries decay_profile(const Cylinder& b, const Cylinder& c, const DirectionCone& cone,
                              std::int64_t k_max, const LocalRule& rule,
                              std::uint64_t budget = kDefaultBudget,
                              MeasureStrategy strategy = MeasureStrategy::automatic);

struct IndependenceRow {
  std::int64_t m;
  std::int64_t n;
  bool pass;
  bool boundary;  // n == N + M: supports may touch, recorded but not asserted
};

struct IndependenceTable {
  std::int64_t M;
  std::int64_t N;
  std::vector<IndependenceRow> rows;

  // Every row with n > N + M passed.
  bool beyond_boundary_pass() const noexcept;
};

// For n in [N+M, n_max] and m in 0..m_probe, checks
//   mu(Phi^{-(m,n)} A  n  B) = mu(Phi^{-(m,n)} A) mu(B)
// for all atoms A of xi(-M,M) and B of xi(-N,N). Rule must be one-sided.
IndependenceTable independence_point_check(std::int64_t M, std::int64_t N, const LocalRule& rule,
                                           std::int64_t n_max, std::uint64_t budget = kDefaultBudget,
                                           std::int64_t m_probe = 5);

}  // namespace dirca
