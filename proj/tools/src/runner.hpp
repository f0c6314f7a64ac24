#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plan.hpp"
#include "report.hpp"

namespace dirca::cli {

Report run_plan(const ExperimentPlan& plan);

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

// Exact invariants over every module; random windows come from `seed`.
std::vector<Check> run_selftest(std::uint64_t seed, std::uint64_t budget);

// Whole program: parse, run, emit. Returns the process exit code.
int run_main(const std::vector<std::string>& args, std::optional<std::string> env_seed, std::ostream& out,
             std::ostream& err);

}  // namespace dirca::cli
