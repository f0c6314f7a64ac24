#include "dirca/binom.hpp"

#include <algorithm>
#include <cmath>

#include "dirca/errors.hpp"
#include "dirca/packed_row.hpp"
#include "dirca/random.hpp"

namespace dirca {

std::string_view to_string(IndexVariant v) { return v == IndexVariant::leading ? "leading" : "action"; }

IndexVariant parse_variant(std::string_view text) {
  if (text == "leading") return IndexVariant::leading;
  if (text == "action") return IndexVariant::action;
  throw ParseError("unknown index variant '" + std::string(text) + "' (expected leading or action)");
}

DigitStream::DigitStream(Modulus k, std::vector<Symbol> digits, std::string provenance)
    : k_(k), digits_(std::move(digits)), provenance_(std::move(provenance)) {
  for (const auto d : digits_) {
    if (d >= k_.value()) throw PreconditionViolation("digit " + std::to_string(d) + " outside Z_" + std::to_string(k_.value()));
  }
}

DigitStream random_digit_stream(std::uint64_t seed, Modulus k, std::size_t length) {
  return DigitStream(k, sample_symbols(seed, length, k), "seed:" + std::to_string(seed));
}

std::size_t required_prefix(std::int64_t N, std::int64_t n_max) {
  return static_cast<std::size_t>(n_max * N + n_max + 1);
}

namespace {

// Row n of Pascal's triangle mod k, advanced in place: row[l] += row[l-1].
class PascalRows {
 public:
  explicit PascalRows(int k) : k_(static_cast<unsigned>(k)), row_{1} {}

  std::int64_t n() const noexcept { return static_cast<std::int64_t>(row_.size()) - 1; }
  const std::vector<Symbol>& row() const noexcept { return row_; }

  void advance() {
    row_.push_back(0);
    for (std::size_t l = row_.size() - 1; l > 0; --l) {
      const unsigned s = static_cast<unsigned>(row_[l]) + row_[l - 1];
      row_[l] = static_cast<Symbol>(s >= k_ ? s - k_ : s);
    }
  }

 private:
  unsigned k_;
  std::vector<Symbol> row_;
};

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// C(i, j) mod p for 0 <= j <= i < p.
class LucasTable {
 public:
  explicit LucasTable(int p) : p_(static_cast<unsigned>(p)), table_(static_cast<std::size_t>(p) * p, 0) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    for (unsigned i = 0; i < p_; ++i) {
      table_[i * p_] = 1;
      for (unsigned j = 1; j <= i; ++j) {
        table_[i * p_ + j] = static_cast<Symbol>((table_[(i - 1) * p_ + j - 1] + table_[(i - 1) * p_ + j]) % p_);
      }
    }
  }

  Symbol operator()(std::uint64_t n, std::uint64_t l) const {
    if (l > n) return 0;
    unsigned acc = 1;
    while (l > 0 || n > 0) {
      const auto ni = static_cast<unsigned>(n % p_);
      const auto li = static_cast<unsigned>(l % p_);
      if (li > ni) return 0;
      acc = acc * table_[ni * p_ + li] % p_;
      n /= p_;
      l /= p_;
    }
    return static_cast<Symbol>(acc);
  }

 private:
  unsigned p_;
  std::vector<Symbol> table_;
};

void check_inputs(const DigitStream& x, std::int64_t N, std::int64_t n_max) {
  if (N < 1) throw PreconditionViolation("multiplier N must be >= 1");
  if (n_max < 1) throw PreconditionViolation("n_max must be >= 1");
  const auto need = required_prefix(N, n_max);
  if (x.size() < need) {
    throw PrefixTooShort("digit prefix has " + std::to_string(x.size()) + " digits, need " + std::to_string(need));
  }
}

// Coordinate whose digit is weighted by C(nN, 0).
std::int64_t first_index(IndexVariant variant, std::int64_t n) { return variant == IndexVariant::leading ? 1 : n; }

// Offsets of the single-shift factors of T^N = (1 + s)^N. For prime k,
// (1 + s)^{k^j} = 1 + s^{k^j}, so one pass per unit of each base-k digit;
// otherwise N passes with offset 1.
std::vector<std::int64_t> factor_offsets(std::int64_t N, int k) {
  std::vector<std::int64_t> offsets;
  if (!is_prime(k)) {
    offsets.assign(static_cast<std::size_t>(N), 1);
    return offsets;
  }
  std::int64_t power = 1;
  for (auto rest = N; rest > 0; rest /= k, power *= k) {
    for (std::int64_t d = 0; d < rest % k; ++d) offsets.push_back(power);
  }
  return offsets;
}

std::vector<Symbol> engine_packed(const DigitStream& x, std::int64_t N, std::int64_t n_max, IndexVariant variant,
                                  const std::vector<std::int64_t>& offsets) {
  const auto len = variant == IndexVariant::leading ? n_max * N + 1 : n_max * N + n_max;
  PackedRow row(1, x.digits().first(static_cast<std::size_t>(len)));
  std::vector<Symbol> s;
  s.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (const auto d : offsets) {
      const int pair[2] = {0, static_cast<int>(d)};
      row.xor_combine(pair);
    }
    const auto col = first_index(variant, n);
    s.push_back(row.at(col));
    if (variant == IndexVariant::action) row.drop_words_before(col + 1);
  }
  return s;
}

// Two bit planes per cell, 64 cells per word. k = 3 encodes 0,1,2 as
// (0,0),(1,0),(0,1); k = 4 stores the binary digits.
template <int K>
class SlicedRow {
 public:
  explicit SlicedRow(std::span<const Symbol> cells)
      : size_(cells.size()), p0_(cells.size() / 64 + 2, 0), p1_(cells.size() / 64 + 2, 0) {
    for (std::size_t t = 0; t < cells.size(); ++t) {
      const unsigned v = cells[t];
      const bool lo = K == 3 ? v == 1 : (v & 1u) != 0;
      const bool hi = K == 3 ? v == 2 : (v & 2u) != 0;
      p0_[t >> 6] |= static_cast<std::uint64_t>(lo) << (t & 63);
      p1_[t >> 6] |= static_cast<std::uint64_t>(hi) << (t & 63);
    }
  }

  // Cell t counts from the original first cell.
  Symbol at(std::size_t t) const {
    t -= 64 * dropped_;
    const unsigned lo = (p0_[t >> 6] >> (t & 63)) & 1u;
    const unsigned hi = (p1_[t >> 6] >> (t & 63)) & 1u;
    return static_cast<Symbol>(K == 3 ? lo + 2 * hi : lo | (hi << 1));
  }

  // x_t += x_{t+d} mod K; the last d cells drop off.
  void add_shifted(std::size_t d) {
    size_ -= d;
    const std::size_t words = (size_ + 63) / 64;
    const std::size_t q = d >> 6;
    const unsigned r = static_cast<unsigned>(d & 63);
    if (p0_.size() < words + q + 2) {
      p0_.resize(words + q + 2, 0);
      p1_.resize(words + q + 2, 0);
    }
    std::uint64_t* __restrict a0 = p0_.data();
    std::uint64_t* __restrict a1 = p1_.data();
    if (r == 0) {
      for (std::size_t i = 0; i < words; ++i) combine(a0[i], a1[i], a0[i + q], a1[i + q]);
    } else {
      for (std::size_t i = 0; i < words; ++i) {
        const std::uint64_t b0 = (a0[i + q] >> r) | (a0[i + q + 1] << (64 - r));
        const std::uint64_t b1 = (a1[i + q] >> r) | (a1[i + q + 1] << (64 - r));
        combine(a0[i], a1[i], b0, b1);
      }
    }
    clear_tail();
  }

  // Forget whole words of cells below t.
  void drop_before(std::size_t t) {
    const std::size_t k = (t - 64 * dropped_) / 64;
    if (k < 64 || k * 64 > size_) return;  // amortise the move
    p0_.erase(p0_.begin(), p0_.begin() + static_cast<std::ptrdiff_t>(k));
    p1_.erase(p1_.begin(), p1_.begin() + static_cast<std::ptrdiff_t>(k));
    dropped_ += k;
    size_ -= 64 * k;
  }

 private:
  static void combine(std::uint64_t& x0, std::uint64_t& x1, std::uint64_t b0, std::uint64_t b1) {
    if constexpr (K == 3) {
      const std::uint64_t t = (x0 | b1) ^ (x1 | b0);
      const std::uint64_t c0 = (x1 | b1) ^ t;
      x1 = (x0 | b0) ^ t;
      x0 = c0;
    } else {
      x1 ^= b1 ^ (x0 & b0);
      x0 ^= b0;
    }
  }

  void clear_tail() {
    const std::size_t full = size_ / 64;
    const unsigned rem = static_cast<unsigned>(size_ & 63);
    for (auto* plane : {&p0_, &p1_}) {
      auto& w = *plane;
      std::size_t i = full;
      if (rem != 0) w[i++] &= (std::uint64_t{1} << rem) - 1;
      for (; i < w.size() && w[i] != 0; ++i) w[i] = 0;
    }
  }

  std::size_t size_;
  std::size_t dropped_ = 0;  // words removed on the left
  std::vector<std::uint64_t> p0_;
  std::vector<std::uint64_t> p1_;
};

template <int K>
std::vector<Symbol> engine_sliced(const DigitStream& x, std::int64_t N, std::int64_t n_max, IndexVariant variant,
                                  const std::vector<std::int64_t>& offsets) {
  const auto len = static_cast<std::size_t>(variant == IndexVariant::leading ? n_max * N + 1 : n_max * N + n_max);
  SlicedRow<K> row(x.digits().first(len));
  std::vector<Symbol> s;
  s.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (const auto d : offsets) row.add_shifted(static_cast<std::size_t>(d));
    const auto cell = static_cast<std::size_t>(first_index(variant, n) - 1);
    s.push_back(row.at(cell));
    if (variant == IndexVariant::action) row.drop_before(cell + 1);
  }
  return s;
}

// x_t + x_{t+d} mod k over bytes. Written as min(v, v - k) on uint8 for
// k <= 128 so the compiler can vectorise it.
void add_shifted_bytes(const Symbol* in, Symbol* out, std::size_t begin, std::size_t end, std::size_t d, unsigned k) {
  if (k <= 128) {
    const auto kk = static_cast<Symbol>(k);
    for (std::size_t t = begin; t < end; ++t) {
      const auto v = static_cast<Symbol>(in[t] + in[t + d]);
      const auto w = static_cast<Symbol>(v - kk);
      out[t] = v < w ? v : w;
    }
    return;
  }
  for (std::size_t t = begin; t < end; ++t) {
    const unsigned v = static_cast<unsigned>(in[t]) + in[t + d];
    out[t] = static_cast<Symbol>(v >= k ? v - k : v);
  }
}

std::vector<Symbol> engine_generic(const DigitStream& x, std::int64_t N, std::int64_t n_max, IndexVariant variant,
                                   const std::vector<std::int64_t>& offsets) {
  const auto k = static_cast<unsigned>(x.k().value());
  const auto len = static_cast<std::size_t>(variant == IndexVariant::leading ? n_max * N + 1 : n_max * N + n_max);
  std::vector<Symbol> cur(x.digits().begin(), x.digits().begin() + static_cast<std::ptrdiff_t>(len));
  std::vector<Symbol> next(len);
  std::size_t size = len;   // live cells; cell t holds coordinate t + 1
  std::size_t start = 0;    // cells before start are never read again
  std::vector<Symbol> s;
  s.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (const auto d64 : offsets) {
      const auto d = static_cast<std::size_t>(d64);
      size -= d;
      add_shifted_bytes(cur.data(), next.data(), start, size, d, k);
      cur.swap(next);
    }
    const auto col = first_index(variant, n);
    s.push_back(cur[static_cast<std::size_t>(col - 1)]);
    if (variant == IndexVariant::action) start = static_cast<std::size_t>(col);
  }
  return s;
}

}  // namespace

std::vector<Symbol> pascal_row_mod(std::int64_t n, int k) {
  if (n < 0) throw PreconditionViolation("pascal_row_mod needs n >= 0");
  const Modulus modulus(k);
  PascalRows rows(modulus.value());
  while (rows.n() < n) rows.advance();
  return rows.row();
}

Symbol binom_mod_lucas(std::uint64_t n, std::uint64_t l, int p) {
  if (l > n) throw PreconditionViolation("binom_mod_lucas needs l <= n");
  return LucasTable(p)(n, l);
}

std::vector<Symbol> sequence_s_engine(const DigitStream& x, std::int64_t N, std::int64_t n_max,
                                      IndexVariant variant, EngineOptions options) {
  check_inputs(x, N, n_max);
  const auto offsets = factor_offsets(N, x.k().value());
  if (!options.force_generic) {
    switch (x.k().value()) {
      case 2: return engine_packed(x, N, n_max, variant, offsets);
      case 3: return engine_sliced<3>(x, N, n_max, variant, offsets);
      case 4: return engine_sliced<4>(x, N, n_max, variant, offsets);
      default: break;
    }
  }
  return engine_generic(x, N, n_max, variant, offsets);
}

std::vector<Symbol> sequence_s_direct(const DigitStream& x, std::int64_t N, std::int64_t n_max,
                                      IndexVariant variant) {
  check_inputs(x, N, n_max);
  const auto k = static_cast<unsigned>(x.k().value());
  PascalRows rows(x.k().value());
  std::vector<Symbol> s;
  s.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    while (rows.n() < n * N) rows.advance();
    const auto& row = rows.row();
    const auto base = static_cast<std::size_t>(first_index(variant, n));
    unsigned acc = 0;
    for (std::size_t l = 0; l < row.size(); ++l) {
      acc = (acc + static_cast<unsigned>(row[l]) * x.x(base + l)) % k;
    }
    s.push_back(static_cast<Symbol>(acc));
  }
  return s;
}

std::vector<Symbol> sequence_s_lucas(const DigitStream& x, std::int64_t N, std::int64_t n_max,
                                     IndexVariant variant) {
  check_inputs(x, N, n_max);
  const LucasTable binom(x.k().value());
  const auto k = static_cast<unsigned>(x.k().value());
  std::vector<Symbol> s;
  s.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto t = static_cast<std::uint64_t>(n * N);
    const auto base = static_cast<std::size_t>(first_index(variant, n));
    unsigned acc = 0;
    for (std::uint64_t l = 0; l <= t; ++l) {
      const auto c = binom(t, l);
      if (c != 0) acc = (acc + static_cast<unsigned>(c) * x.x(base + l)) % k;
    }
    s.push_back(static_cast<Symbol>(acc));
  }
  return s;
}

FreqReport frequency_report(std::span<const Symbol> s, int k, std::string variant) {
  if (s.empty()) throw PreconditionViolation("frequency_report needs a nonempty sequence");
  const Modulus modulus(k);
  FreqReport report;
  report.k = modulus.value();
  report.counts.assign(static_cast<std::size_t>(k), 0);
  report.n_max = s.size();
  report.variant = std::move(variant);
  for (const auto v : s) {
    if (v >= k) throw PreconditionViolation("residue outside Z_k");
    ++report.counts[v];
  }
  for (int j = 0; j < k; ++j) {
    report.max_dev = std::max(report.max_dev, std::abs(report.freq(j) - 1.0 / k));
  }
  return report;
}

OracleAgreement engine_vs_lucas_check(const DigitStream& x, std::int64_t N, std::int64_t n_max, int p) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (x.k().value() != p) throw PreconditionViolation("digit stream base differs from p");
  OracleAgreement result;
  for (const auto variant : {IndexVariant::leading, IndexVariant::action}) {
    const auto engine = sequence_s_engine(x, N, n_max, variant);
    const auto direct = sequence_s_direct(x, N, n_max, variant);
    const auto lucas = sequence_s_lucas(x, N, n_max, variant);
    for (std::size_t i = 0; i < engine.size(); ++i) {
      result.engine_direct_mismatches += engine[i] != direct[i] ? 1 : 0;
      result.engine_lucas_mismatches += engine[i] != lucas[i] ? 1 : 0;
    }
  }
  result.agree = result.engine_direct_mismatches == 0 && result.engine_lucas_mismatches == 0;
  return result;
}

}  // namespace dirca
