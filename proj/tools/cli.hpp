#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace decalage::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2, kHypothesesNotMet = 3 };

struct RunConfig {
  std::string command;              // validate | check-lemmas | check-theorem | ss
  std::vector<std::string> inputs;  // paths or fixture:<name>
  std::uint64_t seed = 0;
  std::string ring = "z";
  std::string xi;
  int count = 1;
  int max_degree = 2;
  int max_rank = 2;
  std::string poset = "builtin:point";
  std::string format = "text";  // text | json
  std::string out;
  std::string generate;          // free | h1 | adversarial
  std::string filtration = "tau";  // tau | hodge
  int pages = 3;
  int lift_rounds = 5;
  int budget = 400;
};

/// Directory used for fixture:<name> inputs: $DECALAGE_FIXTURES, else the
/// directory compiled in.
std::string fixture_dir();
std::string resolve_input(const std::string& spec);

/// Runs one command, writing the report to `out` (or cfg.out) and diagnostics
/// to `err`. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace decalage::cli
