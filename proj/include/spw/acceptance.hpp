#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spw {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

/// Runs every acceptance criterion, printing one PASS/FAIL line per criterion to `log`.
std::vector<CriterionResult> run_acceptance(std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace spw
