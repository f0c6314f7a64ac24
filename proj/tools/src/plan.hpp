#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirca/cylinder.hpp"
#include "dirca/entropy.hpp"

namespace dirca::cli {

enum ExitCode : int { kOk = 0, kConfig = 1, kBudget = 2, kInvariant = 3, kIo = 4 };

inline constexpr std::uint64_t kBudgetFloor = std::uint64_t{1} << 10;

enum class Command { entropy, mixing, ergodic, binom, selftest };
enum class Format { csv, json };

std::string_view to_string(Command c);
std::string_view to_string(Format f);

struct ExperimentPlan {
  Command command = Command::selftest;
  std::string rule;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::string out = "-";
  Format format = Format::csv;
  LogBase log_base = LogBase::nats;

  // entropy / mixing
  std::int64_t M = 1;
  std::string seq;
  std::optional<std::string> seq2;

  // mixing
  std::string mode = "decay";
  std::string B;
  std::string C;
  std::string beta = "1";
  std::string width = "2";
  std::int64_t k_max = 20;
  std::int64_t m_probe = 5;

  // mixing independence, ergodic horizon, binom step
  std::int64_t N = 0;
  std::int64_t n_max = 0;

  // ergodic
  std::string direction = "1,1";
  std::int64_t stride = 0;

  // ergodic / binom
  std::int64_t seeds = 100;
  double tol = 0.01;

  // binom
  int k = 2;
  std::string variant = "both";
  std::optional<std::string> dump;
};

// Command line problem; carries the exit code to use.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string what, int code) : std::runtime_error(std::move(what)), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

// "m,n"
ActionIndex parse_direction(std::string_view text);

// argv-style arguments without the program name. `env_seed` is the value of
// DIRCA_SEED, if set. Help and version requests come back as ConfigError with
// code 0 and the text to print.
ExperimentPlan parse_config(const std::vector<std::string>& args, std::optional<std::string> env_seed = {});

}  // namespace dirca::cli
