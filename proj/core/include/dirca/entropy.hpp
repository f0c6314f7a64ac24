#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dirca/cone.hpp"
#include "dirca/cylinder.hpp"
#include "dirca/rule.hpp"
#include "dirca/window.hpp"

namespace dirca {

struct JoinOptions {
  // Prepend the identity point (0,0), i.e. join over i = 0..l.
  bool include_identity = true;
};

struct JoinAtom {
  // Observed xi(-M,M) symbols, one (2M+1)-block per observation point.
  std::vector<Symbol> label;
  std::uint64_t hits;  // assignments of the source window landing in this atom
  ExactProb prob;
};

// Atoms of  V_i Phi^{-(m_i,n_i)} xi(-M,M)  with their exact measures.
struct JoinAtoms {
  Modulus modulus;
  std::int64_t M;
  std::vector<ActionIndex> points;  // observation points, identity first if included
  std::vector<Coord> source;        // enumerated coordinates, sorted
  std::vector<JoinAtom> atoms;      // sorted by label

  std::size_t size() const noexcept { return atoms.size(); }
  std::size_t block() const noexcept { return static_cast<std::size_t>(2 * M + 1); }
  Interval window() const noexcept;

  // Shannon entropy in nats.
  double entropy() const;
  bool uniform() const noexcept;
  // e when the atoms are exactly the a^e atoms of measure a^{-e}.
  std::optional<int> uniform_exponent() const noexcept;
  // Multiset of atom measures in CanonicalLess order.
  std::vector<ExactProb> sorted_probabilities() const;
};

JoinAtoms join_atoms(const SequenceS& s, std::int64_t M, const LocalRule& rule,
                     std::uint64_t budget = kDefaultBudget, JoinOptions options = {});

double join_entropy(const SequenceS& s, std::int64_t M, const LocalRule& rule,
                    std::uint64_t budget = kDefaultBudget, JoinOptions options = {});

struct ClosedForm {
  double value;                  // 2 r ln a * max_{l >= tail_start} m_l / l
  Rational ratio;                // the maximising m_l / l
  std::size_t tail_start;        // first l (1-based) of the tail window
};

// Closed-form directional sequence entropy on a finite prefix. Throws
// HypothesisViolation naming every failed hypothesis.
ClosedForm closed_form_hS(const LocalRule& rule, const SequenceS& s);

struct EntropyRow {
  std::size_t l;
  double H;           // nats
  double H_per_step;  // H / (l + 1)
  std::size_t atoms;
  Interval window;
  bool uniform;
  std::optional<int> exact_exponent;
};

struct EntropyProfile {
  std::vector<EntropyRow> rows;
  std::optional<ClosedForm> closed_form;

  bool nondecreasing() const noexcept;
};

// Rows for l = 0..|S| (the l-th row joins the identity with the first l points).
EntropyProfile hS_profile(const SequenceS& s, std::int64_t M, const LocalRule& rule,
                          std::uint64_t budget = kDefaultBudget);

struct StructureReport {
  bool pass = false;
  bool bijective = false;
  bool uniform = false;
  Interval predicted;
  std::uint64_t atom_count = 0;
  std::uint64_t expected_atoms = 0;
  std::string counterexample;  // empty on pass
};

// Checks that the join over the identity and S is exactly the cylinder
// partition of [-(r m_l + M) + n_l, (r m_l + M) + n_l] with equal measures.
StructureReport verify_atom_structure(const SequenceS& s, std::int64_t M, const LocalRule& rule,
                                      std::uint64_t budget = kDefaultBudget);

struct InvarianceReport {
  bool equal = false;
  std::optional<std::size_t> first_difference;  // l of the first mismatch
  EntropyProfile first;
  EntropyProfile second;
};

// Exact equality of every H_l for two sequences sharing {m_i}.
// Throws PreconditionViolation when the m's differ or some m_i <= n_i.
InvarianceReport direction_invariance_check(const SequenceS& s1, const SequenceS& s2, std::int64_t M,
                                            const LocalRule& rule,
                                            std::uint64_t budget = kDefaultBudget);

struct IndependenceReport {
  bool independent = false;
  double joint_entropy = 0;              // nats
  std::vector<double> marginal_entropies;  // one per observation point
  std::string counterexample;
};

// Does the join measure factor into the per-point marginals, atom by atom?
IndependenceReport independence_join_check(const SequenceS& s, std::int64_t M,
                                           const LocalRule& rule,
                                           std::uint64_t budget = kDefaultBudget,
                                           JoinOptions options = {});

enum class LogBase { nats, bits, alphabet };

LogBase parse_log_base(std::string_view text);
std::string_view to_string(LogBase base);
double in_log_base(double nats, LogBase base, int a);

}  // namespace dirca
