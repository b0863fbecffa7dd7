#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hnnkit/quotients.hpp"

namespace hnnkit::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

enum class Format { Plain, Json };

/// Runs one command line (without the program name). Output is deterministic
/// for identical arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Check {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string computed;
  /// Discrepancies, overrides and other remarks; empty when there are none.
  std::string note;
};

struct Report {
  std::vector<Check> checks;

  bool passed() const;
  std::string render(Format format) const;
};

struct VerifyOptions {
  /// Test mode: replaces one expected polynomial with a wrong one.
  bool corrupt_expected = false;
  Execution execution = Execution::Parallel;
};

/// Reproduces every computation of the worked examples, in a fixed order.
Report verify_paper(const VerifyOptions& options = {});

}  // namespace hnnkit::cli
