#pragma once

// Grid sweeps over the (theta, lambda) plane to CSV. Output is deterministic:
// theta-major iteration and shortest round-trip float formatting, so repeated
// runs with the same job are byte-identical.

#include <string>

namespace sostree {

struct SweepJob {
  double theta_min = 0.0, theta_max = 0.0;
  int theta_steps = 0;
  double lambda_min = 0.0, lambda_max = 0.0;
  int lambda_steps = 0;
  int k = 2;
  enum class Mode { kClassify, kCount, kCurves } mode = Mode::kClassify;

  void validate() const;
  double theta_at(int i) const;
  double lambda_at(int j) const;
};

// Shortest decimal that round-trips to the same double ("nan" for NaN).
std::string format_double(double v);

// Rows "theta,lambda,case,count,boundary_flag" (classify mode) or
// "theta,lambda,count" (count mode; k != 2 reports the lower bound and is
// only valid there). Header line included.
std::string sweep_csv(const SweepJob& job);

// Companion table "theta,lambda1,lambda2,lambda3,lambda4"; lambda1/lambda2
// print as nan where undefined.
std::string curves_csv(const SweepJob& job);

}  // namespace sostree
