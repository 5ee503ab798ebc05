// Runs the full acceptance pipeline on the desk-scale scenario and fails the
// test if any criterion does.  This is the same code path as
// `auvfl verify --preset desk-5auv`, wired into ctest.
#include <iostream>

#include "auvfl/acceptance.hpp"

int main() {
  const auto results =
      auvfl::acceptance::run_acceptance("desk-5auv", "acceptance-gate-work");
  std::cout << auvfl::acceptance::format_results(results);
  return auvfl::acceptance::all_pass(results) ? 0 : 1;
}
