#pragma once

// Self-check suites behind the `verify` command: module invariants, the
// classifier-vs-Sturm-oracle grid comparison, compatibility of every emitted
// fixed point on small balls, and the cross-module critical-field identity.
// Quick keeps grids coarse (seconds); full runs the complete grids.

#include <functional>
#include <string>
#include <vector>

namespace sostree::verify {

enum class Level { kQuick, kFull };

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Counting function the oracle grid is compared against; injectable so the
// comparison machinery itself can be tested against a corrupted classifier.
using CountFn = std::function<int(double, double)>;

CheckResult check_classifier_vs_oracle(int theta_steps, int lambda_steps,
                                       const CountFn& count_fn);

std::vector<CheckResult> run_all(Level level);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace sostree::verify
