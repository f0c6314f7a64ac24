#include <functional>

#include "dirca/dirca.hpp"
#include "runner.hpp"

namespace dirca::cli {

using dirca::to_string;

namespace {

std::string mismatch(const std::string& what, const std::string& got, const std::string& want) {
  return what + ": got " + got + ", expected " + want;
}

Check commutation(std::uint64_t seed) {
  const auto rule = parse_rule("a=3;coeffs=1,2,1");
  const auto w = sample_config(derive_seed(seed, "selftest.commute", 0), {-40, 40}, rule.modulus());
  for (std::int64_t m = 0; m <= 4; ++m) {
    for (std::int64_t n = -3; n <= 3; ++n) {
      const auto direct = apply_action(w, ActionIndex(m, n), rule);
      const auto t_then_s = apply_action(apply_action(w, ActionIndex(m, 0), rule), ActionIndex(0, n), rule);
      const auto s_then_t = apply_action(apply_action(w, ActionIndex(0, n), rule), ActionIndex(m, 0), rule);
      const auto same = [&](const WindowConfig& x) {
        return x.lo() == direct.lo() && std::equal(x.symbols().begin(), x.symbols().end(),
                                                   direct.symbols().begin(), direct.symbols().end());
      };
      if (!same(t_then_s) || !same(s_then_t)) return {"lca.commutation", false, "differs at " + to_string(ActionIndex(m, n))};
    }
  }
  return {"lca.commutation", true, "T^m sigma^n = sigma^n T^m for m <= 4, |n| <= 3"};
}

Check packed_vs_generic(std::uint64_t seed) {
  for (const auto* literal : {"a=2;coeffs=1,0,1", "a=2;coeffs=0,1,1", "a=2;coeffs=1,1,0,1,1"}) {
    const auto rule = parse_rule(literal);
    const auto w = sample_config(derive_seed(seed, "selftest.packed", 0), {-300, 300}, rule.modulus());
    if (column_trace_packed(w, rule, 120, 0) != column_trace_generic(w, rule, 120, 0)) {
      return {"lca.packed_vs_generic", false, std::string("column traces differ for ") + literal};
    }
  }
  return {"lca.packed_vs_generic", true, "120-step column traces, three rules"};
}

Check strategies_agree(std::uint64_t budget) {
  const auto rule = parse_rule("a=3;coeffs=0,1,2");
  const Modulus a(3);
  const EventSpec e{{{ActionIndex(2, 1), parse_cylinder("[0:01]", a)}, {ActionIndex(0, 0), parse_cylinder("[1:12]", a)},
                     {ActionIndex(1, -2), parse_cylinder("[0:2]", a)}}};
  const auto la = event_measure(e, rule, budget, MeasureStrategy::linear_algebra);
  const auto en = event_measure(e, rule, budget, MeasureStrategy::enumeration);
  if (la != en) return {"cylinder.strategies_agree", false, mismatch("measure", la.str(), en.str())};
  return {"cylinder.strategies_agree", true, "three-constraint event over Z_3 has measure " + la.str()};
}

Check atoms_sum_to_one(std::uint64_t budget) {
  const auto rule = parse_rule("a=2;coeffs=1,0,1");
  BigRational total = 0;
  for (const auto& atom : CylinderPartition(1, rule.modulus()).atoms()) {
    total += event_measure(EventSpec{{{ActionIndex(3, 1), atom}}}, rule, budget).value();
  }
  if (total != 1) return {"cylinder.atoms_sum_to_one", false, "sum is " + to_string(total)};
  return {"cylinder.atoms_sum_to_one", true, "pullbacks of xi(-1,1) under (3,1)"};
}

Check rule90_profile(std::uint64_t budget) {
  const auto rule = parse_rule("a=2;coeffs=1,0,1");
  const auto profile = hS_profile(parse_sequence("syndetic:gap=1,len=4,n=0"), 1, rule, budget);
  for (const auto& row : profile.rows) {
    const int want = 2 * static_cast<int>(row.l) + 3;
    if (row.exact_exponent != want) {
      return {"entropy.rule90_profile", false,
              mismatch("exponent at l=" + std::to_string(row.l),
                       row.exact_exponent ? std::to_string(*row.exact_exponent) : "none", std::to_string(want))};
    }
  }
  return {"entropy.rule90_profile", true, "H_l = (2l+3) ln 2 for l <= 4"};
}

Check atom_structure(std::uint64_t budget) {
  const auto rule = parse_rule("a=2;coeffs=1,0,1");
  const auto report = verify_atom_structure(parse_sequence("syndetic:gap=1,len=4,n=0"), 1, rule, budget);
  return {"entropy.atom_structure", report.pass, report.pass ? "full cylinder partition of " + to_string(report.predicted)
                                                             : report.counterexample};
}

Check direction_invariance(std::uint64_t budget) {
  const auto rule = parse_rule("a=2;coeffs=1,0,1");
  const auto report = direction_invariance_check(parse_sequence("syndetic:gap=1,len=3,n=0"),
                                                 parse_sequence("syndetic:gap=1,len=3,n=m-1"), 1, rule, budget);
  return {"entropy.direction_invariance", report.equal,
          report.equal ? "(i,0) and (i,i-1) agree for l <= 3"
                       : "first difference at l=" + std::to_string(report.first_difference.value_or(0))};
}

Check decay_first_terms(std::uint64_t budget) {
  const auto rule = parse_rule("a=2;coeffs=0,1,1");
  const Modulus a(2);
  const auto b = parse_cylinder("[0:00]", a);
  const auto series = decay_profile(b, b, DirectionCone(Rational(1), Rational(2)), 3, rule, budget);
  const BigRational want[] = {BigRational(5, 48), BigRational(1, 16), BigRational(1, 24)};
  for (std::size_t i = 0; i < 3; ++i) {
    if (series.points[i].exact != want[i]) {
      return {"mixing.decay_first_terms", false,
              mismatch("D_" + std::to_string(i + 1), to_string(series.points[i].exact), to_string(want[i]))};
    }
  }
  return {"mixing.decay_first_terms", true, "D_1..D_3 = 5/48, 1/16, 1/24"};
}

Check independence_points(std::uint64_t budget) {
  const auto rule = parse_rule("a=2;coeffs=0,1,1");
  const auto table = independence_point_check(1, 1, rule, 5, budget, 3);
  return {"mixing.independence_points", table.beyond_boundary_pass(), "M = N = 1, n in (2,5], m <= 3"};
}

Check orbit_vs_pointwise(std::uint64_t seed) {
  const auto rule = parse_rule("a=3;coeffs=0,1,1");
  const auto b = parse_cylinder("[0:1]", rule.modulus());
  const ActionIndex dir(1, 1);
  const std::int64_t N = 40;
  const auto x = sample_config(derive_seed(seed, "selftest.orbit", 0), orbit_support(dir, b, N, rule), rule.modulus());
  const auto stats = birkhoff_average(x, dir, b, N, rule, true);
  std::uint64_t hits = 0;
  for (std::int64_t t = 0; t < N; ++t) {
    hits += eval_coordinate(x, ActionIndex(t, t), rule, 0) == 1 ? 1 : 0;
    if (stats.hits[static_cast<std::size_t>(t)] != hits) {
      return {"ergodic.orbit_vs_pointwise", false, "running count differs at t=" + std::to_string(t + 1)};
    }
  }
  return {"ergodic.orbit_vs_pointwise", true, "40 orbit points over Z_3"};
}

Check binom_oracles(std::uint64_t seed) {
  for (const int p : {2, 3, 5}) {
    for (std::int64_t N = 1; N <= 2; ++N) {
      const auto x = random_digit_stream(derive_seed(seed, "selftest.binom", static_cast<std::uint64_t>(p)), Modulus(p),
                                         required_prefix(N, 300));
      const auto agreement = engine_vs_lucas_check(x, N, 300, p);
      if (!agreement.agree) {
        return {"binom.oracles", false, "k=" + std::to_string(p) + " N=" + std::to_string(N) + " disagrees"};
      }
    }
  }
  return {"binom.oracles", true, "engine = direct = Lucas, k in {2,3,5}, N <= 2, n <= 300"};
}

Check pascal_vs_lucas() {
  for (const int p : {2, 3, 5, 7}) {
    for (std::int64_t n = 0; n <= 64; ++n) {
      const auto row = pascal_row_mod(n, p);
      for (std::int64_t l = 0; l <= n; ++l) {
        if (row[static_cast<std::size_t>(l)] != binom_mod_lucas(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(l), p)) {
          return {"binom.pascal_vs_lucas", false, "C(" + std::to_string(n) + "," + std::to_string(l) + ") mod " + std::to_string(p)};
        }
      }
    }
  }
  return {"binom.pascal_vs_lucas", true, "n <= 64, p in {2,3,5,7}"};
}

}  // namespace

std::vector<Check> run_selftest(std::uint64_t seed, std::uint64_t budget) {
  const std::vector<std::function<Check()>> suite = {
      [&] { return commutation(seed); },
      [&] { return packed_vs_generic(seed); },
      [&] { return strategies_agree(budget); },
      [&] { return atoms_sum_to_one(budget); },
      [&] { return rule90_profile(budget); },
      [&] { return atom_structure(budget); },
      [&] { return direction_invariance(budget); },
      [&] { return decay_first_terms(budget); },
      [&] { return independence_points(budget); },
      [&] { return orbit_vs_pointwise(seed); },
      [&] { return binom_oracles(seed); },
      [] { return pascal_vs_lucas(); },
  };
  std::vector<Check> out;
  for (const auto& check : suite) out.push_back(check());
  return out;
}

}  // namespace dirca::cli
