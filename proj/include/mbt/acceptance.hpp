#pragma once

// Acceptance suite: one callable check per criterion, each printing a
// single pass/fail line through the shared driver. Criterion 11 shells
// out to the CLI binary named by the MBT_CLI_BIN environment variable.

#include <string>
#include <vector>

namespace mbt::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// ids empty = all criteria (1..11 plus the scaling-slope check, id 12).
std::vector<CriterionResult> run(const std::vector<int>& ids = {});

// Prints one line per result; returns the number of failures.
int report(const std::vector<CriterionResult>& results);

}  // namespace mbt::acceptance
