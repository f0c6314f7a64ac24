#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dirca/rule.hpp"
#include "dirca/window.hpp"

namespace dirca {

// Seed derivation for every random stream in the project:
//
//   text  = decimal(master) + ":" + experiment + ":" + decimal(index)
//   h     = FNV-1a 64 over the bytes of text
//   seed  = splitmix64 finalizer of h
//
// Streams for different (experiment, index) pairs are therefore disjoint in
// practice and reproducible from the master seed alone.
std::uint64_t derive_seed(std::uint64_t master, std::string_view experiment, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// i.i.d. uniform symbols in Z_a from std::mt19937_64 seeded with `seed`.
// For a = 2^b each 64-bit output supplies floor(64 / b) symbols, least
// significant bits first; otherwise each symbol is (w mod a) for the first
// output w below the largest multiple of a that fits in 64 bits.
std::vector<Symbol> sample_symbols(std::uint64_t seed, std::size_t count, Modulus modulus);

// x restricted to iv, symbols drawn left to right.
WindowConfig sample_config(std::uint64_t seed, const Interval& iv, Modulus modulus);

}  // namespace dirca
