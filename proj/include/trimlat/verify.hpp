#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace trimlat {

// Self-check battery behind both the acceptance test binary and the CLI
// `verify` subcommand. Each criterion prints one pass/fail line; tolerances
// are pinned here, not configurable.
enum class VerifyLevel { Fast, Full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(VerifyLevel level, std::ostream& log);

// True when every criterion passed.
bool print_results(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace trimlat
