#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace dirca {

// Small exact rationals for slopes, widths and affine rules.
using Rational = boost::rational<std::int64_t>;

// Unbounded rationals for exact probability arithmetic.
using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::int64_t floor_of(const Rational& q);
std::int64_t ceil_of(const Rational& q);

// Nearest integer, halves rounded toward zero.
std::int64_t round_half_toward_zero(const Rational& q);

// Accepts "P", "-P", "P/Q" (Q > 0). Throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const BigRational& q);

double to_double(const BigRational& q);

}  // namespace dirca
