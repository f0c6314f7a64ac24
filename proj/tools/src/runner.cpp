#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>

#include "dirca/dirca.hpp"

namespace dirca::cli {

using dirca::to_string;

namespace {

Value opt_double(const std::optional<double>& v) { return v ? Value(*v) : Value(std::monostate{}); }

void entropy_rows(Report& report, const EntropyProfile& profile, const LocalRule& rule, LogBase base,
                  std::optional<std::int64_t> tag) {
  const auto closed = profile.closed_form ? std::optional(in_log_base(profile.closed_form->value, base, rule.a()))
                                          : std::nullopt;
  for (const auto& row : profile.rows) {
    std::vector<Value> rec;
    if (tag) rec.emplace_back(*tag);
    rec.emplace_back(static_cast<std::int64_t>(row.l));
    rec.emplace_back(row.H);
    rec.emplace_back(in_log_base(row.H_per_step, base, rule.a()));
    rec.push_back(opt_double(closed));
    rec.emplace_back(static_cast<std::uint64_t>(row.atoms));
    rec.emplace_back(row.window.lo);
    rec.emplace_back(row.window.hi);
    rec.emplace_back(row.uniform);
    rec.push_back(row.exact_exponent ? Value(static_cast<std::int64_t>(*row.exact_exponent)) : Value{});
    report.add_row(std::move(rec));
  }
}

Report run_entropy(const ExperimentPlan& plan) {
  Report report;
  const auto rule = parse_rule(plan.rule);
  const auto s1 = parse_sequence(plan.seq);
  if (plan.seq2) report.columns.push_back({"sequence"});
  for (const char* name : {"l", "H_nats", "H_per_step", "closed_form", "atoms", "window_lo", "window_hi", "uniform"}) {
    report.columns.push_back({name});
  }
  report.columns.push_back({"uniform_exponent", false});

  const auto describe = [&](const SequenceS& s, const EntropyProfile& profile) {
    nlohmann::json j;
    const auto check = validate_sequence(s, std::nullopt, &rule, plan.M);
    j["failed_hypotheses"] = check.failed_hypotheses();
    if (profile.closed_form) {
      j["closed_form_ratio"] = to_string(profile.closed_form->ratio);
      j["closed_form_tail_start"] = profile.closed_form->tail_start;
    }
    return j;
  };

  const auto p1 = hS_profile(s1, plan.M, rule, plan.budget);
  entropy_rows(report, p1, rule, plan.log_base, plan.seq2 ? std::optional<std::int64_t>(1) : std::nullopt);
  report.asserted["profile_nondecreasing"] = p1.nondecreasing();
  report.observed["sequence"] = describe(s1, p1);
  report.summary["H_last_nats"] = p1.rows.back().H;

  if (plan.seq2) {
    const auto s2 = parse_sequence(*plan.seq2);
    const auto p2 = hS_profile(s2, plan.M, rule, plan.budget);
    entropy_rows(report, p2, rule, plan.log_base, 2);
    report.asserted["profile_nondecreasing_seq2"] = p2.nondecreasing();
    report.observed["sequence2"] = describe(s2, p2);
    bool equal = p1.rows.size() == p2.rows.size();
    for (std::size_t i = 0; equal && i < p1.rows.size(); ++i) {
      equal = p1.rows[i].exact_exponent && p1.rows[i].exact_exponent == p2.rows[i].exact_exponent;
    }
    report.observed["profiles_equal_exactly"] = equal;
  }
  return report;
}

Report run_decay(const ExperimentPlan& plan) {
  Report report;
  const auto rule = parse_rule(plan.rule);
  const auto b = parse_cylinder(plan.B, rule.modulus());
  const auto c = parse_cylinder(plan.C, rule.modulus());
  const DirectionCone cone(parse_rational(plan.beta), parse_rational(plan.width));
  const auto series = decay_profile(b, c, cone, plan.k_max, rule, plan.budget);
  report.columns = {{"k"}, {"cone_size"}, {"D_k"}, {"exact"}, {"D_k_rational", false}};
  for (const auto& p : series.points) {
    report.add_row({p.k, static_cast<std::uint64_t>(p.cone_size), p.value, p.exact_value, to_string(p.exact)});
  }
  const auto& last = series.points.back();
  report.summary["D_last"] = last.value;
  report.summary["D_last_rational"] = to_string(last.exact);
  report.observed["mu_B"] = cylinder_measure(b).str();
  report.observed["mu_C"] = cylinder_measure(c).str();
  return report;
}

Report run_independence(const ExperimentPlan& plan) {
  Report report;
  const auto rule = parse_rule(plan.rule);
  const auto table = independence_point_check(plan.M, plan.N, rule, plan.n_max, plan.budget, plan.m_probe);
  report.columns = {{"m"}, {"n"}, {"pass"}, {"boundary"}};
  std::uint64_t failures = 0;
  for (const auto& r : table.rows) {
    report.add_row({r.m, r.n, r.pass, r.boundary});
    failures += r.pass ? 0 : 1;
  }
  report.asserted["beyond_boundary_pass"] = table.beyond_boundary_pass();
  report.summary["rows"] = table.rows.size();
  report.summary["failures"] = failures;
  return report;
}

Report run_ergodic(const ExperimentPlan& plan) {
  Report report;
  const auto rule = parse_rule(plan.rule);
  const auto b = parse_cylinder(plan.B, rule.modulus());
  const auto dir = parse_direction(plan.direction);
  std::vector<std::uint64_t> seeds;
  for (std::int64_t i = 0; i < plan.seeds; ++i) {
    seeds.push_back(derive_seed(plan.seed, "ergodic", static_cast<std::uint64_t>(i)));
  }
  const bool running = plan.stride < plan.N;
  const auto freq = orbit_frequency_report(seeds, dir, b, plan.N, rule, plan.tol, running);
  report.columns = {{"seed"}, {"t"}, {"average"}};
  for (const auto& stats : freq.per_seed) {
    if (running) {
      for (std::int64_t t = plan.stride; t < plan.N; t += plan.stride) report.add_row({*stats.seed, t, stats.average(t)});
    }
    report.add_row({*stats.seed, plan.N, stats.final_average});
  }
  report.observed["mu_B"] = cylinder_measure(b).str();
  report.summary["within_tol"] = freq.within;
  report.summary["pass_fraction"] = freq.pass_fraction;
  return report;
}

Report run_binom(const ExperimentPlan& plan) {
  Report report;
  std::vector<IndexVariant> variants;
  if (plan.variant != "action") variants.push_back(IndexVariant::leading);
  if (plan.variant != "leading") variants.push_back(IndexVariant::action);

  report.columns = {{"k"}, {"N"}, {"variant"}, {"n_max"}, {"seed"}};
  for (int j = 0; j < plan.k; ++j) report.columns.push_back({"freq_" + std::to_string(j)});
  report.columns.push_back({"max_dev"});

  const Modulus k(plan.k);
  const auto prefix = required_prefix(plan.N, plan.n_max);
  std::map<std::string, std::uint64_t> within;
  std::string dump;
  for (std::int64_t i = 0; i < plan.seeds; ++i) {
    const auto seed = derive_seed(plan.seed, "binom", static_cast<std::uint64_t>(i));
    const auto x = random_digit_stream(seed, k, prefix);
    for (const auto v : variants) {
      const auto s = sequence_s_engine(x, plan.N, plan.n_max, v);
      const auto fr = frequency_report(s, plan.k, std::string(to_string(v)));
      std::vector<Value> rec{static_cast<std::int64_t>(plan.k), plan.N, fr.variant, plan.n_max, seed};
      for (int j = 0; j < plan.k; ++j) rec.emplace_back(fr.freq(j));
      rec.emplace_back(fr.max_dev);
      report.add_row(std::move(rec));
      within[fr.variant] += fr.max_dev < plan.tol ? 1 : 0;

      if (i == 0) {
        const auto n_check = std::min<std::int64_t>(plan.n_max, 2000);
        const auto direct = sequence_s_direct(x, plan.N, n_check, v);
        const bool same = std::equal(direct.begin(), direct.end(), s.begin());
        const auto key = "engine_matches_direct_" + fr.variant;
        report.asserted[key] = same;
        if (plan.dump) {
          if (dump.empty()) dump = variants.size() > 1 ? "variant,n,s_n\n" : "n,s_n\n";
          for (std::size_t n = 0; n < s.size(); ++n) {
            if (variants.size() > 1) dump += fr.variant + ",";
            dump += std::to_string(n + 1) + "," + std::to_string(s[n]) + "\n";
          }
        }
      }
    }
  }
  if (plan.dump) write_text(dump, *plan.dump, std::cout);
  for (const auto& [variant, count] : within) {
    report.summary[variant] = {{"within_tol", count},
                               {"pass_fraction", static_cast<double>(count) / static_cast<double>(plan.seeds)}};
  }
  report.observed["prefix_digits"] = prefix;
  return report;
}

Report run_selftest_report(const ExperimentPlan& plan) {
  Report report;
  report.columns = {{"check"}, {"pass"}, {"detail"}};
  std::uint64_t passed = 0;
  const auto checks = run_selftest(plan.seed, plan.budget);
  for (const auto& c : checks) {
    report.add_row({c.name, c.pass, c.detail});
    report.asserted[c.name] = c.pass;
    passed += c.pass ? 1 : 0;
  }
  report.summary["checks"] = checks.size();
  report.summary["passed"] = passed;
  return report;
}

}  // namespace

Report run_plan(const ExperimentPlan& plan) {
  Report report;
  switch (plan.command) {
    case Command::entropy: report = run_entropy(plan); break;
    case Command::mixing: report = plan.mode == "decay" ? run_decay(plan) : run_independence(plan); break;
    case Command::ergodic: report = run_ergodic(plan); break;
    case Command::binom: report = run_binom(plan); break;
    case Command::selftest: report = run_selftest_report(plan); break;
  }
  report.plan = plan_json(plan);
  return report;
}

int run_main(const std::vector<std::string>& args, std::optional<std::string> env_seed, std::ostream& out,
             std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentPlan plan;
  try {
    plan = parse_config(args, std::move(env_seed));
  } catch (const ConfigError& e) {
    (e.code() == kOk ? out : err) << e.what();
    return e.code();
  }

  int code = kOk;
  try {
    const auto report = run_plan(plan);
    emit(report, plan.format, plan.out, out);
    for (const auto& name : report.failed()) err << "dirca: asserted invariant failed: " << name << "\n";
    if (!report.ok()) code = kInvariant;
  } catch (const BudgetExceeded& e) {
    err << "dirca: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const IoError& e) {
    err << "dirca: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    err << "dirca: " << e.what() << "\n";
    return kConfig;
  } catch (const PreconditionViolation& e) {
    err << "dirca: " << e.what() << "\n";
    return kConfig;
  } catch (const HypothesisViolation& e) {
    err << "dirca: " << e.what() << "\n";
    return kConfig;
  } catch (const NotPrime& e) {
    err << "dirca: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    err << "dirca: internal error: " << e.what() << "\n";
    return kInvariant;
  }
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", wall.count());
  err << "dirca: " << to_string(plan.command) << " wall_time_s=" << buf << "\n";
  return code;
}

}  // namespace dirca::cli
