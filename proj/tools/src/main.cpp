#include <cstdlib>
#include <iostream>

#include "runner.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("DIRCA_SEED")) env_seed = s;
  return dirca::cli::run_main(args, env_seed, std::cout, std::cerr);
}
