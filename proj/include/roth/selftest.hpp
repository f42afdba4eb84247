#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace roth {

struct AcceptanceOptions {
  double scale = 1.0;         // multiplies every instance count (1.0 = full suite)
  std::uint64_t seed = 1;     // base seed; criterion k draws from seed·1000003 + k·100000 onward
  bool exact = true;          // include the exact-rational passes
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the nine acceptance criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opts,
                                            const std::function<void(const CriterionResult &)> &on_result = {});

/// "[PASS] 3 title (detail, 1.2s)"
std::string format_result(const CriterionResult &r);

} // namespace roth
