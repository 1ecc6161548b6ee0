#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cgc/center.hpp"

namespace cgc::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs the full verification suite (exact integer identities throughout) and
/// prints one pass/fail line per criterion to `log`.
std::vector<CriterionResult> run_all(const center::Budgets& budgets,
                                     std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace cgc::acceptance
