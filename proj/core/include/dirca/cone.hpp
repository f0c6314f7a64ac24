#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirca/rational.hpp"
#include "dirca/rule.hpp"
#include "dirca/window.hpp"

namespace dirca {

// Lambda^v(b) for v = (1, beta): lattice points with |n - beta m| <= b/2.
class DirectionCone {
 public:
  // Throws PreconditionViolation unless b > 0.
  DirectionCone(Rational beta, Rational b);

  const Rational& beta() const noexcept { return beta_; }
  const Rational& width() const noexcept { return b_; }

 private:
  Rational beta_;
  Rational b_;
};

bool cone_contains(const DirectionCone& cone, const ActionIndex& p);

// Lambda_k^v(b): cone points with 0 <= m <= k-1, sorted by (m, n).
std::vector<ActionIndex> cone_points(const DirectionCone& cone, std::int64_t k);

// Points of the cone with the given m, ascending in n.
std::vector<ActionIndex> cone_slice(const DirectionCone& cone, std::int64_t m);

// Finite prefix of S = {(m_i, n_i)}.
struct SequenceS {
  std::vector<ActionIndex> points;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  SequenceS prefix(std::size_t len) const;

  friend bool operator==(const SequenceS&, const SequenceS&) = default;
};

// n(m) = slope * m + offset.
struct AffineRule {
  Rational slope{0};
  Rational offset{0};

  Rational operator()(std::int64_t m) const { return slope * Rational(m) + offset; }
};

// Parses expressions such as "0", "m", "m/2", "m-1", "-3/2*m+4", "2m".
AffineRule parse_affine(std::string_view text);

// m_i = i * gap (i = 1..len), n_i = n_of_m(m_i) truncated toward zero.
SequenceS make_syndetic_sequence(std::int64_t gap, std::int64_t len, const AffineRule& n_of_m);

// m_i = base^i (i = 1..len), n_i = round(beta m_i) with ties toward zero.
SequenceS make_geometric_sequence(std::int64_t base, std::int64_t len, const Rational& beta);

enum class Coverage { holds, boundary, fails };

std::string_view to_string(Coverage c);

struct SequenceReport {
  bool strictly_monotone = true;
  std::int64_t max_gap = 0;  // 0 when fewer than two points
  bool syndetic = false;
  bool m_exceeds_n = true;
  std::optional<bool> in_cone;
  // 2(r m_i + M) + 1 >= 2 r m_{i+1} + 1 over consecutive points.
  std::optional<Coverage> coverage;
  std::optional<std::size_t> first_coverage_gap;  // index i of the first non-strict pair

  // Monotone, syndetic and m_i > n_i all hold.
  bool entropy_hypotheses() const noexcept { return strictly_monotone && syndetic && m_exceeds_n; }
  std::vector<std::string> failed_hypotheses() const;
};

// gap_bound, when given, caps the admissible gap for the syndetic flag.
SequenceReport validate_sequence(const SequenceS& s, const std::optional<DirectionCone>& cone = {},
                                 const LocalRule* rule = nullptr,
                                 std::optional<std::int64_t> M = {},
                                 std::optional<std::int64_t> gap_bound = {});

// "syndetic:gap=G,len=L,n=<affine>" | "geometric:base=B,len=L,beta=P/Q" |
// "explicit:(m1,n1);(m2,n2);..."
SequenceS parse_sequence(std::string_view literal);

std::string to_string(const SequenceS& s);

}  // namespace dirca
