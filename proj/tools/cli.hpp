#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcalda::cli {

/// Exit statuses shared by every subcommand.
enum Exit : int {
  kSuccess = 0,
  kError = 1,
  kRejected = 2,
};

/// Parse `args` (without the program name) and run one subcommand:
/// train, identify, eval, inspect or gen-synthetic.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcalda::cli
