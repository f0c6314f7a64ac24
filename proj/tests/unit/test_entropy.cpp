#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "dirca/dirca.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace dirca;
using namespace testing_helpers;

namespace {

const double kLn2 = std::log(2.0);

// Join distribution by brute force: label -> number of assignments.
struct BruteJoin {
  std::map<std::vector<int>, std::uint64_t> counts;
  std::uint64_t total = 0;

  double entropy() const {
    long double h = 0;
    for (const auto& [label, c] : counts) {
      const long double p = static_cast<long double>(c) / static_cast<long double>(total);
      h -= p * std::log(p);
    }
    return static_cast<double>(h);
  }
};

BruteJoin brute_join(const std::vector<ActionIndex>& points, std::int64_t M, const std::vector<int>& lam, int a) {
  const auto rl = rule(a, lam);
  Coord lo = INT64_MAX, hi = INT64_MIN;
  for (const auto& p : points) {
    const auto s = needed_support({-M, M}, p, rl);
    lo = std::min(lo, s.lo);
    hi = std::max(hi, s.hi);
  }
  BruteJoin out;
  oracle::for_each_assignment(a, static_cast<std::size_t>(hi - lo + 1), [&](const std::vector<int>& v) {
    const auto x = oracle::make_config(lo, v);
    std::vector<int> label;
    for (const auto& p : points) {
      const auto y = oracle::phi(x, p.m(), p.n(), lam, a);
      for (auto i = -M; i <= M; ++i) label.push_back(y.at(i));
    }
    ++out.counts[label];
    ++out.total;
  });
  return out;
}

std::vector<ActionIndex> with_identity(const SequenceS& s) {
  std::vector<ActionIndex> pts{{0, 0}};
  pts.insert(pts.end(), s.points.begin(), s.points.end());
  return pts;
}

SequenceS gap_one(std::int64_t len, const char* n = "0") { return make_syndetic_sequence(1, len, parse_affine(n)); }

}  // namespace

TEST(JoinAtoms, Examples) {
  const auto j1 = join_atoms(seq({{1, 0}}), 1, rule90());
  EXPECT_EQ(j1.size(), 32u);
  for (const auto& atom : j1.atoms) EXPECT_EQ(atom.prob.str(), "1/2^5");
  EXPECT_EQ(j1.window(), (Interval{-2, 2}));

  const auto j0 = join_atoms(SequenceS{}, 1, rule90());
  EXPECT_EQ(j0.size(), 8u);
  EXPECT_EQ(*j0.uniform_exponent(), 3);

  const auto j2 = join_atoms(seq({{2, 2}, {8, 8}}), 1, one_sided());
  EXPECT_EQ(*j2.uniform_exponent(), 9);
  EXPECT_NEAR(j2.entropy(), 9 * kLn2, 1e-12);
}

TEST(JoinEntropy, Examples) {
  EXPECT_NEAR(join_entropy(seq({{1, 0}}), 1, rule90()), 5 * kLn2, 1e-12);
  EXPECT_NEAR(join_entropy(seq({{1, 0}, {2, 0}}), 1, rule90()), 7 * kLn2, 1e-12);
  EXPECT_NEAR(join_entropy(SequenceS{}, 1, rule90()), 3 * kLn2, 1e-12);
  EXPECT_THROW(join_entropy(seq({{12, 0}}), 1, rule90(), 1024), BudgetExceeded);
}

TEST(JoinEntropy, MatchesBruteForce) {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int a = static_cast<int>(gen.uniform(2, 3));
    const auto lam = gen.rule(a, 1);
    SequenceS s;
    for (int i = 0, n = static_cast<int>(gen.uniform(0, 2)); i < n; ++i) s.points.emplace_back(gen.uniform(0, 2), gen.uniform(-2, 2));
    const std::int64_t M = gen.uniform(0, 1);
    const auto ref = brute_join(with_identity(s), M, lam, a);
    const auto got = join_atoms(s, M, rule(a, lam));
    ASSERT_EQ(got.size(), ref.counts.size());
    std::size_t i = 0;
    for (const auto& [label, c] : ref.counts) {
      EXPECT_EQ(std::vector<int>(got.atoms[i].label.begin(), got.atoms[i].label.end()), label);
      EXPECT_EQ(got.atoms[i].prob.value(), BigRational(BigInt(c), BigInt(ref.total)));
      ++i;
    }
    EXPECT_NEAR(got.entropy(), ref.entropy(), 1e-12);
  }
}

TEST(Profile, Rule90GapOne) {
  const auto prof = hS_profile(gap_one(6), 1, rule90());
  ASSERT_EQ(prof.rows.size(), 7u);
  for (const auto& row : prof.rows) {
    const int e = static_cast<int>(2 * (row.l + 1) + 1);
    ASSERT_TRUE(row.exact_exponent.has_value());
    EXPECT_EQ(*row.exact_exponent, e);
    EXPECT_NEAR(row.H, e * kLn2, 1e-12);
    EXPECT_LE(std::abs(row.H_per_step - 2 * kLn2), 3 * kLn2 / static_cast<double>(row.l + 1) + 1e-12);
  }
  EXPECT_NEAR(prof.rows.back().H_per_step, 15.0 / 7.0 * kLn2, 1e-12);
  ASSERT_TRUE(prof.closed_form.has_value());
  EXPECT_NEAR(prof.closed_form->value, 2 * kLn2, 1e-15);
  EXPECT_TRUE(prof.nondecreasing());
}

TEST(ClosedForm, Examples) {
  EXPECT_NEAR(closed_form_hS(rule90(), gap_one(10)).value, 2 * kLn2, 1e-15);
  EXPECT_NEAR(closed_form_hS(rule90(), make_syndetic_sequence(2, 10, parse_affine("0"))).value, 4 * kLn2, 1e-15);
  EXPECT_NEAR(closed_form_hS(rule(3, {1, 0, 0, 0, 2}), gap_one(10)).value, 4 * std::log(3.0), 1e-15);
  const auto cf = closed_form_hS(rule90(), gap_one(10));
  EXPECT_EQ(cf.tail_start, 6u);
  EXPECT_EQ(cf.ratio, Rational(1));
}

TEST(ClosedForm, HypothesisViolations) {
  try {
    closed_form_hS(rule90(), seq({{1, 2}, {2, 3}}));
    FAIL() << "expected HypothesisViolation";
  } catch (const HypothesisViolation& e) {
    EXPECT_NE(std::string(e.what()).find("m_i>n_i"), std::string::npos) << e.what();
  }
  EXPECT_THROW(closed_form_hS(one_sided(), gap_one(5)), HypothesisViolation);
  EXPECT_THROW(closed_form_hS(rule90(), seq({{2, 0}, {1, 0}})), HypothesisViolation);
}

TEST(Structure, Examples) {
  for (std::int64_t l = 1; l <= 3; ++l) {
    const auto rep = verify_atom_structure(gap_one(l), 1, rule90());
    EXPECT_TRUE(rep.pass) << rep.counterexample;
    EXPECT_EQ(rep.atom_count, std::uint64_t{1} << (2 * l + 3));
    EXPECT_EQ(rep.predicted, (Interval{-(l + 1), l + 1}));
  }
  const auto bad = verify_atom_structure(seq({{1, 0}}), 1, rule(4, {0, 1, 2}));
  EXPECT_FALSE(bad.pass);
  EXPECT_FALSE(bad.bijective);
  EXPECT_FALSE(bad.counterexample.empty());
  EXPECT_TRUE(verify_atom_structure(SequenceS{}, 1, rule90()).pass);
}

TEST(Structure, ShiftedSequenceMovesInterval) {
  const auto rep = verify_atom_structure(gap_one(2, "m-1"), 1, rule90());
  EXPECT_TRUE(rep.pass) << rep.counterexample;
  // the last point (2,1) observes [-(2+1)+1, (2+1)+1]
  EXPECT_EQ(rep.predicted, (Interval{-2, 4}));
}

TEST(Invariance, Examples) {
  const auto rep = direction_invariance_check(gap_one(3), gap_one(3, "m-1"), 1, rule90());
  EXPECT_TRUE(rep.equal);
  for (const auto& row : rep.second.rows) EXPECT_EQ(*row.exact_exponent, static_cast<int>(2 * row.l + 3));
  EXPECT_TRUE(direction_invariance_check(gap_one(3), gap_one(3), 1, rule90()).equal);
  EXPECT_THROW(direction_invariance_check(gap_one(3), make_syndetic_sequence(2, 3, parse_affine("0")), 1, rule90()),
               PreconditionViolation);
}

TEST(Independence, Examples) {
  const auto s = seq({{2, 2}, {8, 8}});
  const auto rep = independence_join_check(s, 1, one_sided(), kDefaultBudget, JoinOptions{false});
  EXPECT_TRUE(rep.independent) << rep.counterexample;
  EXPECT_NEAR(rep.joint_entropy, 6 * kLn2, 1e-12);
  EXPECT_EQ(rep.marginal_entropies.size(), 2u);
  EXPECT_FALSE(independence_join_check(seq({{1, 0}, {2, 0}}), 1, rule90()).independent);
  EXPECT_TRUE(independence_join_check(seq({{3, 1}}), 1, rule90(), kDefaultBudget, JoinOptions{false}).independent);
}

TEST(Property, ProfileMonotoneAndSubadditive) {
  oracle::Gen gen(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int a = static_cast<int>(gen.uniform(2, 3));
    const auto rl = rule(a, gen.rule(a, 1));
    SequenceS s;
    for (int i = 0; i < 3; ++i) s.points.emplace_back(gen.uniform(0, 3), gen.uniform(-3, 3));
    const auto prof = hS_profile(s, 1, rl, std::uint64_t{1} << 22);
    EXPECT_TRUE(prof.nondecreasing());
    for (std::size_t cut = 1; cut < s.size(); ++cut) {
      SequenceS left{{s.points.begin(), s.points.begin() + static_cast<std::ptrdiff_t>(cut)}};
      SequenceS right{{s.points.begin() + static_cast<std::ptrdiff_t>(cut), s.points.end()}};
      const double h = join_entropy(s, 1, rl, std::uint64_t{1} << 22);
      const double hl = join_entropy(left, 1, rl, std::uint64_t{1} << 22);
      const double hr = join_entropy(right, 1, rl, std::uint64_t{1} << 22, JoinOptions{false});
      EXPECT_LE(h, hl + hr + 1e-9);
    }
  }
}

TEST(Property, EmptyJoinIsPartitionEntropy) {
  for (int a = 2; a <= 5; ++a) {
    for (std::int64_t M = 0; M <= 2; ++M) {
      const auto rl = rule(a, {1, 1, 1});
      const auto j = join_atoms(SequenceS{}, M, rl);
      EXPECT_EQ(*j.uniform_exponent(), static_cast<int>(2 * M + 1));
      EXPECT_NEAR(j.entropy(), static_cast<double>(2 * M + 1) * std::log(static_cast<double>(a)), 1e-12);
    }
  }
}

TEST(Property, IndependenceGivesMarginalSum) {
  oracle::Gen gen(43);
  int independent_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto rl = one_sided();
    SequenceS s;
    std::int64_t m = 0;
    for (int i = 0; i < 2; ++i) {
      m += gen.uniform(1, 4);
      s.points.emplace_back(m, gen.uniform(-6, 6));
    }
    const auto rep = independence_join_check(s, 1, rl, std::uint64_t{1} << 22, JoinOptions{false});
    if (!rep.independent) continue;
    ++independent_seen;
    double sum = 0;
    for (const double h : rep.marginal_entropies) sum += h;
    EXPECT_NEAR(rep.joint_entropy, sum, 1e-9);
  }
  EXPECT_GT(independent_seen, 5);
}

TEST(LogBase, Conversion) {
  EXPECT_EQ(parse_log_base("e"), LogBase::nats);
  EXPECT_EQ(parse_log_base("bits"), LogBase::bits);
  EXPECT_EQ(parse_log_base("a"), LogBase::alphabet);
  EXPECT_THROW(parse_log_base("10"), ParseError);
  EXPECT_NEAR(in_log_base(3 * kLn2, LogBase::bits, 2), 3.0, 1e-15);
  EXPECT_NEAR(in_log_base(2 * std::log(3.0), LogBase::alphabet, 3), 2.0, 1e-15);
}
