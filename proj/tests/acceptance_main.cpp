// Acceptance gate: runs every criterion at its stated tolerance and
// prints one pass/fail line each; exits nonzero on any failure.

#include <cstdio>

#include "mbt/acceptance.hpp"

int main() {
  auto results = mbt::acceptance::run();
  int failures = mbt::acceptance::report(results);
  return failures > 0 ? 1 : 0;
}
