#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace votelab::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kTie = 2,
  kMismatch = 3,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One verified expectation of `reproduce`.
struct Check {
  std::string target;
  std::string label;
  bool pass;
  std::string got;
  std::string expected;
};

struct ReproduceOptions {
  std::uint64_t seed = 1;
  std::uint64_t trials = 10000;
  unsigned jobs = 1;
};

/// Targets: example1, example2, approval, example3, league, study.
std::vector<Check> reproduce(const std::string& target, const ReproduceOptions& options);

}  // namespace votelab::cli
