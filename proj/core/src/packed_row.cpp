#include "dirca/packed_row.hpp"

#include "dirca/errors.hpp"

namespace dirca {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64 + 1; }

}  // namespace

PackedRow::PackedRow(Coord lo, std::span<const Symbol> bits)
    : lo_(lo), nbits_(bits.size()), words_(words_for(bits.size()), 0) {
  for (std::size_t t = 0; t < bits.size(); ++t) {
    if (bits[t] > 1) throw PreconditionViolation("packed rows hold binary symbols only");
    words_[t >> 6] |= static_cast<std::uint64_t>(bits[t]) << (t & 63);
  }
}

PackedRow::PackedRow(const WindowConfig& w) : PackedRow(w.lo(), w.symbols()) {
  if (w.modulus().value() != 2) throw PreconditionViolation("packed rows need a = 2");
}

void PackedRow::xor_combine(std::span<const int> offsets) {
  if (offsets.empty() || offsets.front() != 0) {
    throw PreconditionViolation("xor_combine offsets must start at 0");
  }
  const auto reach = static_cast<std::size_t>(offsets.back());
  if (nbits_ <= reach) {
    throw WindowTooSmall("packed row of " + std::to_string(nbits_) + " cells cannot lose " +
                         std::to_string(reach));
  }
  const std::size_t new_bits = nbits_ - reach;
  const std::size_t new_words = (new_bits + 63) / 64;
  const std::size_t limit = words_.size();
  std::uint64_t* w = words_.data();

  if (offsets.size() == 2 && offsets[1] < 64) {
    const unsigned r = static_cast<unsigned>(offsets[1]);
    if (r == 0) {
      for (std::size_t i = 0; i < new_words; ++i) w[i] = 0;
    } else {
      for (std::size_t i = 0; i < new_words; ++i) w[i] ^= (w[i] >> r) | (w[i + 1] << (64 - r));
    }
  } else {
    for (std::size_t i = 0; i < new_words; ++i) {
      std::uint64_t acc = w[i];
      for (std::size_t k = 1; k < offsets.size(); ++k) {
        const auto d = static_cast<std::size_t>(offsets[k]);
        const std::size_t q = i + (d >> 6);
        const unsigned r = static_cast<unsigned>(d & 63);
        std::uint64_t v = q < limit ? w[q] >> r : 0;
        if (r != 0 && q + 1 < limit) v |= w[q + 1] << (64 - r);
        acc ^= v;
      }
      w[i] = acc;
    }
  }
  nbits_ = new_bits;
  clear_tail();
}

void PackedRow::step(const LocalRule& rule) {
  if (rule.a() != 2) throw PreconditionViolation("packed stepping needs a = 2");
  std::vector<int> offsets;
  for (int j = rule.min_dep(); j <= rule.max_dep(); ++j) {
    if (rule.coeff(j) & 1) offsets.push_back(j - rule.min_dep());
  }
  xor_combine(offsets);
  lo_ -= rule.min_dep();
}

void PackedRow::drop_words_before(Coord c) {
  if (c <= lo_) return;
  auto k = static_cast<std::size_t>((c - lo_) / 64);
  k = std::min(k, nbits_ / 64);
  if (k == 0) return;
  words_.erase(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(k));
  lo_ += static_cast<Coord>(64 * k);
  nbits_ -= 64 * k;
}

void PackedRow::clear_tail() noexcept {
  const std::size_t full = nbits_ / 64;
  const unsigned rem = static_cast<unsigned>(nbits_ & 63);
  std::size_t first_zero = full;
  if (rem != 0) {
    words_[full] &= (std::uint64_t{1} << rem) - 1;
    first_zero = full + 1;
  }
  words_.resize(words_for(nbits_));
  for (std::size_t i = first_zero; i < words_.size(); ++i) words_[i] = 0;
}

WindowConfig PackedRow::to_window() const {
  std::vector<Symbol> bits(nbits_);
  for (std::size_t t = 0; t < nbits_; ++t) bits[t] = static_cast<Symbol>((words_[t >> 6] >> (t & 63)) & 1u);
  return WindowConfig(lo_, std::move(bits), Modulus(2));
}

}  // namespace dirca
