#include "dirca/random.hpp"

#include <bit>
#include <limits>
#include <random>
#include <string>

namespace dirca {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view experiment, std::uint64_t index) {
  const std::string text = std::to_string(master) + ":" + std::string(experiment) + ":" + std::to_string(index);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h);
}

std::vector<Symbol> sample_symbols(std::uint64_t seed, std::size_t count, Modulus modulus) {
  std::mt19937_64 gen(seed);
  std::vector<Symbol> out(count);
  const auto a = static_cast<std::uint64_t>(modulus.value());
  if (std::has_single_bit(a)) {
    const int bits = std::countr_zero(a);
    const int per_word = 64 / bits;
    const std::uint64_t mask = a - 1;
    std::size_t i = 0;
    while (i < count) {
      std::uint64_t w = gen();
      for (int k = 0; k < per_word && i < count; ++k, ++i) {
        out[i] = static_cast<Symbol>(w & mask);
        w >>= bits;
      }
    }
    return out;
  }
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % a + 1) % a;
  for (auto& s : out) {
    std::uint64_t w = gen();
    while (w > limit) w = gen();
    s = static_cast<Symbol>(w % a);
  }
  return out;
}

WindowConfig sample_config(std::uint64_t seed, const Interval& iv, Modulus modulus) {
  return WindowConfig(iv.lo, sample_symbols(seed, static_cast<std::size_t>(iv.size()), modulus), modulus);
}

}  // namespace dirca
