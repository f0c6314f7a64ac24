#include <gtest/gtest.h>

#include "dirca/dirca.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace dirca;
using namespace testing_helpers;

namespace {

std::vector<int> ints(const std::vector<Symbol>& v) { return {v.begin(), v.end()}; }

DigitStream stream(int k, std::vector<int> digits) { return DigitStream(Modulus(k), syms(digits)); }

DigitStream delta(int k, std::size_t len) {
  std::vector<int> d(len, 0);
  d[0] = 1;
  return stream(k, d);
}

// s_n straight from big-integer binomials.
std::vector<int> brute_s(const DigitStream& x, std::int64_t N, std::int64_t n_max, IndexVariant v) {
  std::vector<int> s;
  const int k = x.k().value();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    oracle::BigInt acc = 0;
    const auto t = static_cast<std::uint64_t>(n * N);
    const auto base = static_cast<std::size_t>(v == IndexVariant::leading ? 1 : n);
    for (std::uint64_t l = 0; l <= t; ++l) acc += oracle::binomial(t, l) * x.x(base + l);
    s.push_back(static_cast<int>(acc % k));
  }
  return s;
}

}  // namespace

TEST(Pascal, Examples) {
  EXPECT_EQ(ints(pascal_row_mod(4, 2)), (std::vector<int>{1, 0, 0, 0, 1}));
  EXPECT_EQ(ints(pascal_row_mod(0, 7)), (std::vector<int>{1}));
  EXPECT_EQ(ints(pascal_row_mod(5, 5)), (std::vector<int>{1, 0, 0, 0, 0, 1}));
  EXPECT_THROW(pascal_row_mod(-1, 2), PreconditionViolation);
  EXPECT_THROW(pascal_row_mod(3, 1), BadAlphabet);
}

TEST(Lucas, Examples) {
  EXPECT_EQ(binom_mod_lucas(10, 3, 2), 0);
  EXPECT_EQ(binom_mod_lucas(123456789, 0, 7), 1);
  EXPECT_EQ(binom_mod_lucas(5, 2, 5), 0);
  EXPECT_EQ(binom_mod_lucas(1000, 500, 3), oracle::binomial_mod(1000, 500, 3));
  EXPECT_THROW(binom_mod_lucas(10, 3, 4), NotPrime);
  EXPECT_THROW(binom_mod_lucas(10, 3, 1), NotPrime);
}

TEST(Property, PascalRecurrenceAndSymmetry) {
  for (int k = 2; k <= 6; ++k) {
    auto prev = pascal_row_mod(0, k);
    for (std::int64_t n = 1; n <= 512; ++n) {
      const auto row = pascal_row_mod(n, k);
      ASSERT_EQ(row.size(), static_cast<std::size_t>(n + 1));
      for (std::int64_t l = 0; l <= n; ++l) {
        const int left = l > 0 ? prev[static_cast<std::size_t>(l - 1)] : 0;
        const int right = l < n ? prev[static_cast<std::size_t>(l)] : 0;
        ASSERT_EQ(row[static_cast<std::size_t>(l)], (left + right) % k);
        ASSERT_EQ(row[static_cast<std::size_t>(l)], row[static_cast<std::size_t>(n - l)]);
      }
      prev = row;
    }
  }
}

TEST(Property, LucasAgreesWithRows) {
  for (const int p : {2, 3, 5}) {
    for (std::int64_t n = 0; n <= 512; ++n) {
      const auto row = pascal_row_mod(n, p);
      for (std::int64_t l = 0; l <= n; ++l) {
        ASSERT_EQ(row[static_cast<std::size_t>(l)], binom_mod_lucas(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(l), p));
      }
    }
  }
  // big-integer spot checks
  for (std::uint64_t n : {97u, 200u, 511u}) {
    for (std::uint64_t l = 0; l <= n; l += 7) EXPECT_EQ(binom_mod_lucas(n, l, 5), oracle::binomial_mod(n, l, 5));
  }
}

TEST(Sequence, EngineExamples) {
  const auto x = delta(2, 400);
  for (const auto v : {IndexVariant::leading}) {
    const auto s = sequence_s_engine(x, 1, 100, v);
    for (const auto sn : s) EXPECT_EQ(sn, 1);
  }
  std::vector<int> d(400, 0);
  d[0] = d[1] = 1;
  const auto s = sequence_s_engine(stream(2, d), 1, 100, IndexVariant::leading);
  for (std::size_t n = 1; n <= s.size(); ++n) EXPECT_EQ(s[n - 1], (1 + n) % 2);
}

TEST(Sequence, DirectExamples) {
  const auto x = stream(2, {1, 0, 1});
  EXPECT_EQ(ints(sequence_s_direct(x, 1, 1, IndexVariant::leading)), (std::vector<int>{1}));
  const auto y = stream(3, {2, 2, 0, 0, 0});
  EXPECT_EQ(ints(sequence_s_direct(y, 1, 1, IndexVariant::leading)), (std::vector<int>{1}));
  EXPECT_EQ(ints(sequence_s_engine(y, 1, 1, IndexVariant::leading)), (std::vector<int>{1}));
}

TEST(Sequence, PrefixTooShort) {
  const auto x = delta(2, 10);
  EXPECT_EQ(required_prefix(3, 2), 9u);
  EXPECT_NO_THROW(sequence_s_engine(x, 3, 2, IndexVariant::action));
  EXPECT_THROW(sequence_s_engine(x, 3, 3, IndexVariant::leading), PrefixTooShort);
  EXPECT_THROW(sequence_s_direct(x, 3, 3, IndexVariant::leading), PrefixTooShort);
  EXPECT_THROW(sequence_s_lucas(x, 3, 3, IndexVariant::leading), PrefixTooShort);
}

TEST(Sequence, MatchesBigIntegerSums) {
  oracle::Gen gen(61);
  for (const int k : {2, 3, 4, 5, 6}) {
    for (const std::int64_t N : {1, 2, 3}) {
      const std::int64_t n_max = 40;
      std::vector<int> d = gen.symbols(required_prefix(N, n_max), k);
      const auto x = stream(k, d);
      for (const auto v : {IndexVariant::leading, IndexVariant::action}) {
        const auto ref = brute_s(x, N, n_max, v);
        EXPECT_EQ(ints(sequence_s_engine(x, N, n_max, v)), ref) << k << " " << N;
        EXPECT_EQ(ints(sequence_s_engine(x, N, n_max, v, {true})), ref);
        EXPECT_EQ(ints(sequence_s_direct(x, N, n_max, v)), ref);
        if (k == 2 || k == 3 || k == 5) EXPECT_EQ(ints(sequence_s_lucas(x, N, n_max, v)), ref);
      }
    }
  }
  EXPECT_THROW(sequence_s_lucas(delta(4, 100), 1, 10, IndexVariant::leading), NotPrime);
}

TEST(Property, EngineEqualsDirect) {
  for (const int k : {2, 3, 4, 5}) {
    for (const std::int64_t N : {1, 2, 3}) {
      const std::int64_t n_max = 2000;
      const auto x = random_digit_stream(derive_seed(1, "engine-direct", static_cast<std::uint64_t>(k * 10 + N)),
                                         Modulus(k), required_prefix(N, n_max));
      for (const auto v : {IndexVariant::leading, IndexVariant::action}) {
        ASSERT_EQ(sequence_s_engine(x, N, n_max, v), sequence_s_direct(x, N, n_max, v)) << k << " " << N;
      }
    }
  }
}

TEST(Property, LongShiftsAcrossWords) {
  // N = 100 puts Frobenius offsets of 64, 81, 125 into the packed kernels
  for (const int k : {2, 3, 4, 5}) {
    const std::int64_t N = 100, n_max = 30;
    const auto x = random_digit_stream(derive_seed(5, "long", static_cast<std::uint64_t>(k)), Modulus(k), required_prefix(N, n_max));
    for (const auto v : {IndexVariant::leading, IndexVariant::action}) {
      const auto direct = sequence_s_direct(x, N, n_max, v);
      EXPECT_EQ(sequence_s_engine(x, N, n_max, v), direct) << k;
      EXPECT_EQ(sequence_s_engine(x, N, n_max, v, {true}), direct) << k;
    }
  }
}

TEST(Property, CrossModuleIdentity) {
  // action variant == (Phi^(nN, n) x)_0 through the lca-core engine, x_j at coordinate j
  const auto rl = parse_rule("a=2;coeffs=0,1,1");
  for (const std::int64_t N : {1, 2, 3}) {
    const std::int64_t n_max = 60;
    const auto x = random_digit_stream(derive_seed(2, "cross", static_cast<std::uint64_t>(N)), Modulus(2), required_prefix(N, n_max));
    const WindowConfig w(1, {x.digits().begin(), x.digits().end()}, Modulus(2));
    const auto s = sequence_s_engine(x, N, n_max, IndexVariant::action);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      EXPECT_EQ(s[static_cast<std::size_t>(n - 1)], eval_coordinate(w, ActionIndex(n * N, n), rl, 0)) << n;
    }
    // leading variant reads coordinate 1 of T^{nN} x
    const auto sp = sequence_s_engine(x, N, n_max, IndexVariant::leading);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      EXPECT_EQ(sp[static_cast<std::size_t>(n - 1)], eval_coordinate(w, ActionIndex(n * N, 0), rl, 1)) << n;
    }
  }
}

TEST(Property, StreamLinearity) {
  for (const int k : {2, 3, 4}) {
    const std::int64_t N = 2, n_max = 300;
    const auto len = required_prefix(N, n_max);
    const auto x = random_digit_stream(derive_seed(3, "lin", static_cast<std::uint64_t>(k)), Modulus(k), len);
    const auto y = random_digit_stream(derive_seed(4, "lin", static_cast<std::uint64_t>(k)), Modulus(k), len);
    std::vector<Symbol> sum(len);
    for (std::size_t i = 0; i < len; ++i) sum[i] = static_cast<Symbol>((x.digits()[i] + y.digits()[i]) % k);
    const DigitStream z(Modulus(k), sum);
    for (const auto v : {IndexVariant::leading, IndexVariant::action}) {
      const auto sx = sequence_s_engine(x, N, n_max, v);
      const auto sy = sequence_s_engine(y, N, n_max, v);
      const auto sz = sequence_s_engine(z, N, n_max, v);
      for (std::size_t n = 0; n < sz.size(); ++n) ASSERT_EQ(sz[n], (sx[n] + sy[n]) % k);
    }
  }
}

TEST(Frequency, Examples) {
  std::vector<Symbol> alt(10);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = static_cast<Symbol>((i + 1) % 2);
  const auto r = frequency_report(alt, 2, "leading");
  EXPECT_EQ(r.freq(0), 0.5);
  EXPECT_EQ(r.freq(1), 0.5);
  EXPECT_EQ(r.max_dev, 0.0);
  EXPECT_EQ(r.counts[0] + r.counts[1], r.n_max);

  const std::vector<Symbol> ones(10, 1);
  EXPECT_EQ(frequency_report(ones, 2).max_dev, 0.5);
  EXPECT_THROW(frequency_report(std::vector<Symbol>{}, 2), PreconditionViolation);
  EXPECT_THROW(frequency_report(std::vector<Symbol>{3}, 2), PreconditionViolation);
}

TEST(Frequency, SeededStream) {
  const std::int64_t n_max = 100000;
  const auto x = random_digit_stream(derive_seed(0, "binom", 0), Modulus(2), required_prefix(1, n_max));
  const auto r = frequency_report(sequence_s_engine(x, 1, n_max, IndexVariant::leading), 2);
  EXPECT_LT(r.max_dev, 0.01);
}

TEST(Oracle, ThreeWay) {
  const auto x2 = random_digit_stream(11, Modulus(2), required_prefix(1, 2000));
  EXPECT_TRUE(engine_vs_lucas_check(x2, 1, 2000, 2).agree);
  const auto x3 = random_digit_stream(12, Modulus(3), required_prefix(2, 500));
  EXPECT_TRUE(engine_vs_lucas_check(x3, 2, 500, 3).agree);
  const auto d5 = delta(5, required_prefix(3, 200));
  const auto res = engine_vs_lucas_check(d5, 3, 200, 5);
  EXPECT_TRUE(res.agree);
  for (const auto s : sequence_s_engine(d5, 3, 200, IndexVariant::leading)) EXPECT_EQ(s, 1);
  EXPECT_THROW(engine_vs_lucas_check(delta(4, 100), 1, 10, 4), NotPrime);
}

TEST(Variant, Parse) {
  EXPECT_EQ(parse_variant("leading"), IndexVariant::leading);
  EXPECT_EQ(parse_variant("action"), IndexVariant::action);
  EXPECT_EQ(to_string(IndexVariant::action), "action");
  EXPECT_THROW(parse_variant("both"), ParseError);
}
