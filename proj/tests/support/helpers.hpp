#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "dirca/dirca.hpp"

namespace testing_helpers {

inline dirca::LocalRule rule(int a, std::initializer_list<std::int64_t> coeffs) {
  const std::vector<std::int64_t> c(coeffs);
  return dirca::validate_rule(a, c);
}

inline dirca::LocalRule rule(int a, const std::vector<int>& coeffs) {
  const std::vector<std::int64_t> c(coeffs.begin(), coeffs.end());
  return dirca::validate_rule(a, c);
}

inline dirca::LocalRule rule90() { return rule(2, {1, 0, 1}); }
inline dirca::LocalRule one_sided() { return rule(2, {0, 1, 1}); }

inline std::vector<dirca::Symbol> syms(const std::vector<int>& v) {
  return {v.begin(), v.end()};
}

inline dirca::WindowConfig window(std::int64_t lo, const std::vector<int>& v, int a = 2) {
  return dirca::WindowConfig(lo, syms(v), dirca::Modulus(a));
}

inline dirca::Cylinder cyl(std::int64_t lo, const std::vector<int>& v, int a = 2) {
  return dirca::Cylinder(lo, syms(v), dirca::Modulus(a));
}

inline dirca::SequenceS seq(std::initializer_list<std::pair<std::int64_t, std::int64_t>> pts) {
  dirca::SequenceS s;
  for (const auto& [m, n] : pts) s.points.emplace_back(m, n);
  return s;
}

}  // namespace testing_helpers

namespace dirca {

inline void PrintTo(const WindowConfig& w, std::ostream* os) {
  *os << "@" << w.lo() << ":";
  for (const auto s : w.symbols()) *os << static_cast<int>(s);
}

inline void PrintTo(const Interval& iv, std::ostream* os) { *os << to_string(iv); }

}  // namespace dirca
