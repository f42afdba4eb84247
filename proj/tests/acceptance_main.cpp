#include "roth/selftest.hpp"

#include <cstdlib>
#include <iostream>

// Runs the acceptance criteria at full size. ROTH_ACCEPTANCE_SCALE shrinks the
// instance counts for quick local runs.
int main() {
  roth::AcceptanceOptions opts;
  if (const char *s = std::getenv("ROTH_ACCEPTANCE_SCALE")) opts.scale = std::atof(s);
  int failed = 0;
  roth::run_acceptance(opts, [&](const roth::CriterionResult &r) {
    std::cout << roth::format_result(r) << std::endl;
    failed += !r.pass;
  });
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
