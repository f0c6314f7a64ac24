#include "plan.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dirca/binom.hpp"
#include "dirca/cone.hpp"
#include "dirca/errors.hpp"
#include "dirca/rule.hpp"

namespace dirca::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::entropy: return "entropy";
    case Command::mixing: return "mixing";
    case Command::ergodic: return "ergodic";
    case Command::binom: return "binom";
    case Command::selftest: return "selftest";
  }
  return "?";
}

std::string_view to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

ActionIndex parse_direction(std::string_view text) {
  const auto fail = [&] { return ParseError("direction must be m,n with m >= 0, got '" + std::string(text) + "'"); };
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw fail();
  std::int64_t m = 0;
  std::int64_t n = 0;
  const auto read = [&](std::string_view part, std::int64_t& v) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) throw fail();
  };
  read(text.substr(0, comma), m);
  read(text.substr(comma + 1), n);
  if (m < 0) throw fail();
  return ActionIndex(m, n);
}

namespace {

// Raw values as given; unset means "use the subcommand default".
struct Raw {
  std::optional<std::string> rule, out, format, log_base;
  std::optional<std::uint64_t> seed, budget;
  std::optional<std::int64_t> M, N, n_max, k_max, m_probe, stride, seeds;
  std::optional<std::string> seq, seq2, mode, B, C, beta, width, direction, variant, dump;
  std::optional<double> tol;
  std::optional<int> k;
};

template <class T>
T pick(const std::optional<T>& v, T fallback) {
  return v ? *v : fallback;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw ConfigError("invalid value for " + key + ": " + why + "\n", kConfig);
}

template <class F>
void check_literal(const std::string& key, F&& parse) {
  try {
    parse();
  } catch (const Error& e) {
    bad(key, e.what());
  }
}

void require_positive(const std::string& key, std::int64_t v) {
  if (v < 1) bad(key, "must be >= 1, got " + std::to_string(v));
}

std::uint64_t parse_env_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("DIRCA_SEED is not an unsigned 64-bit integer: '" + text + "'\n", kConfig);
  }
  return v;
}

ExperimentPlan resolve(Command command, const Raw& raw, std::optional<std::string> env_seed) {
  ExperimentPlan p;
  p.command = command;
  if (raw.seed) {
    p.seed = *raw.seed;
  } else if (env_seed) {
    p.seed = parse_env_seed(*env_seed);
  }
  p.budget = pick(raw.budget, kDefaultBudget);
  if (p.budget < kBudgetFloor) {
    bad("budget", std::to_string(p.budget) + " is below the floor " + std::to_string(kBudgetFloor));
  }
  p.out = pick<std::string>(raw.out, "-");
  p.format = pick<std::string>(raw.format, "csv") == "json" ? Format::json : Format::csv;
  check_literal("log-base", [&] { p.log_base = parse_log_base(pick<std::string>(raw.log_base, "nats")); });

  const auto rule_default = [&](const std::string& fallback) {
    p.rule = pick(raw.rule, fallback);
    check_literal("rule", [&] { parse_rule(p.rule); });
  };

  switch (command) {
    case Command::entropy: {
      rule_default("a=2;coeffs=1,0,1");
      p.M = pick<std::int64_t>(raw.M, 1);
      if (p.M < 0) bad("M", "must be >= 0");
      p.seq = pick<std::string>(raw.seq, "syndetic:gap=1,len=6,n=0");
      check_literal("seq", [&] { parse_sequence(p.seq); });
      if (raw.seq2) {
        p.seq2 = raw.seq2;
        check_literal("seq2", [&] { parse_sequence(*p.seq2); });
      }
      break;
    }
    case Command::mixing: {
      rule_default("a=2;coeffs=0,1,1");
      p.mode = pick<std::string>(raw.mode, "decay");
      if (p.mode == "decay") {
        const auto a = Modulus(parse_rule(p.rule).a());
        p.B = pick<std::string>(raw.B, "[0:00]");
        p.C = pick<std::string>(raw.C, "[0:00]");
        check_literal("B", [&] { parse_cylinder(p.B, a); });
        check_literal("C", [&] { parse_cylinder(p.C, a); });
        p.beta = pick<std::string>(raw.beta, "1");
        p.width = pick<std::string>(raw.width, "2");
        check_literal("beta/b", [&] { DirectionCone(parse_rational(p.beta), parse_rational(p.width)); });
        p.k_max = pick<std::int64_t>(raw.k_max, 20);
        require_positive("kmax", p.k_max);
      } else {
        p.M = pick<std::int64_t>(raw.M, 1);
        p.N = pick<std::int64_t>(raw.N, 1);
        if (p.M < 0) bad("M", "must be >= 0");
        if (p.N < 0) bad("N", "must be >= 0");
        p.n_max = pick<std::int64_t>(raw.n_max, p.N + p.M + 5);
        if (p.n_max < p.N + p.M) bad("nmax", "must be >= N + M");
        p.m_probe = pick<std::int64_t>(raw.m_probe, 5);
        if (p.m_probe < 0) bad("mprobe", "must be >= 0");
      }
      break;
    }
    case Command::ergodic: {
      rule_default("a=2;coeffs=0,1,1");
      const auto a = Modulus(parse_rule(p.rule).a());
      p.direction = pick<std::string>(raw.direction, "1,1");
      check_literal("dir", [&] { parse_direction(p.direction); });
      p.B = pick<std::string>(raw.B, "[0:0]");
      check_literal("B", [&] { parse_cylinder(p.B, a); });
      p.N = pick<std::int64_t>(raw.N, 100000);
      require_positive("N", p.N);
      p.seeds = pick<std::int64_t>(raw.seeds, 100);
      require_positive("seeds", p.seeds);
      p.tol = pick(raw.tol, 0.01);
      p.stride = pick<std::int64_t>(raw.stride, p.N);
      require_positive("stride", p.stride);
      break;
    }
    case Command::binom: {
      p.k = pick(raw.k, 2);
      check_literal("k", [&] { Modulus{p.k}; });
      p.rule = "a=" + std::to_string(p.k) + ";coeffs=0,1,1";
      if (raw.rule && *raw.rule != p.rule) {
        bad("rule", "binom always uses x_0 + x_1 mod k (" + p.rule + ")");
      }
      p.N = pick<std::int64_t>(raw.N, 1);
      p.n_max = pick<std::int64_t>(raw.n_max, 100000);
      require_positive("N", p.N);
      require_positive("nmax", p.n_max);
      p.seeds = pick<std::int64_t>(raw.seeds, 100);
      require_positive("seeds", p.seeds);
      p.tol = pick(raw.tol, 0.01);
      p.variant = pick<std::string>(raw.variant, "both");
      p.dump = raw.dump;
      break;
    }
    case Command::selftest:
      if (raw.rule) bad("rule", "selftest runs a fixed suite");
      break;
  }
  return p;
}

}  // namespace

ExperimentPlan parse_config(const std::vector<std::string>& args, std::optional<std::string> env_seed) {
  CLI::App app{"Experiments with linear cellular automata and the shift", "dirca"};
  auto fmt = std::make_shared<CLI::ConfigINI>();
  fmt->comment('#');
  fmt->arrayDelimiter('\x1f');
  app.config_formatter(fmt);
  app.set_config("--config", "", "INI file: key=value lines, [subcommand] sections");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  Raw raw;
  app.add_option("--rule", raw.rule, "a=<int>;coeffs=<c_-r>,...,<c_r>");
  app.add_option("--seed", raw.seed, "master seed (else DIRCA_SEED, else 0)");
  app.add_option("--budget", raw.budget, "max assignments per enumeration (>= 1024)");
  app.add_option("--out", raw.out, "output path, - for stdout");
  app.add_option("--format", raw.format)->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--log-base", raw.log_base, "nats|bits|alphabet");

  auto* entropy = app.add_subcommand("entropy", "join entropy profile along a sequence");
  entropy->add_option("--M", raw.M, "partition radius");
  entropy->add_option("--seq", raw.seq, "sequence literal");
  entropy->add_option("--seq2", raw.seq2, "second sequence, compared row by row");

  auto* mixing = app.add_subcommand("mixing", "cone correlation decay or independence points");
  mixing->add_option("--mode", raw.mode)->check(CLI::IsMember({"decay", "independence"}));
  mixing->add_option("--B", raw.B, "cylinder literal");
  mixing->add_option("--C", raw.C, "cylinder literal");
  mixing->add_option("--beta", raw.beta, "cone slope");
  mixing->add_option("--b", raw.width, "cone width");
  mixing->add_option("--kmax", raw.k_max);
  mixing->add_option("--M", raw.M);
  mixing->add_option("--N", raw.N);
  mixing->add_option("--nmax", raw.n_max);
  mixing->add_option("--mprobe", raw.m_probe, "largest m probed");

  auto* ergodic = app.add_subcommand("ergodic", "Birkhoff averages of a cylinder along a direction");
  ergodic->add_option("--dir", raw.direction, "m,n");
  ergodic->add_option("--B", raw.B, "cylinder literal");
  ergodic->add_option("--N", raw.N, "orbit length");
  ergodic->add_option("--seeds", raw.seeds);
  ergodic->add_option("--tol", raw.tol);
  ergodic->add_option("--stride", raw.stride, "report A_t every stride steps");

  auto* binom = app.add_subcommand("binom", "digit frequencies of binomial-weighted sums mod k");
  binom->add_option("--k", raw.k);
  binom->add_option("--N", raw.N);
  binom->add_option("--nmax", raw.n_max);
  binom->add_option("--seeds", raw.seeds);
  binom->add_option("--tol", raw.tol);
  binom->add_option("--variant", raw.variant)->check(CLI::IsMember({"leading", "action", "both"}));
  binom->add_option("--dump", raw.dump, "write n,s_n of the first seed here");

  auto* selftest = app.add_subcommand("selftest", "exact invariant suite");

  for (auto* sub : {entropy, mixing, ergodic, binom, selftest}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    throw ConfigError(out.str() + err.str(), code == 0 ? kOk : kConfig);
  }

  Command command = Command::selftest;
  if (entropy->parsed()) command = Command::entropy;
  if (mixing->parsed()) command = Command::mixing;
  if (ergodic->parsed()) command = Command::ergodic;
  if (binom->parsed()) command = Command::binom;
  return resolve(command, raw, std::move(env_seed));
}

}  // namespace dirca::cli
