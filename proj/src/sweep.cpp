#include "sostree/sweep.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "sostree/general_solver.hpp"
#include "sostree/k2.hpp"

namespace sostree {

void SweepJob::validate() const {
  if (!(theta_min < theta_max) || !(lambda_min < lambda_max))
    throw std::invalid_argument("range min must be below max");
  if (theta_steps < 2 || lambda_steps < 2)
    throw std::invalid_argument("steps must be >= 2");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (!(theta_min > 0) || !(lambda_min > 0))
    throw std::invalid_argument("theta and lambda must be positive");
}

double SweepJob::theta_at(int i) const {
  return theta_min + (theta_max - theta_min) * i / (theta_steps - 1);
}

double SweepJob::lambda_at(int j) const {
  return lambda_min + (lambda_max - lambda_min) * j / (lambda_steps - 1);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const SweepJob& job) {
  job.validate();
  std::string out;
  if (job.mode == SweepJob::Mode::kCount) {
    out = "theta,lambda,count\n";
    for (int i = 0; i < job.theta_steps; ++i) {
      double theta = job.theta_at(i);
      for (int j = 0; j < job.lambda_steps; ++j) {
        double lambda = job.lambda_at(j);
        int count = (job.k == 2) ? k2::count_tisgm(theta, lambda).count
                                 : tisgm_lower_bound(theta, lambda, job.k);
        out += format_double(theta);
        out += ',';
        out += format_double(lambda);
        out += ',';
        out += std::to_string(count);
        out += '\n';
      }
    }
    return out;
  }
  if (job.k != 2)
    throw std::invalid_argument("classify sweeps require k == 2");
  out = "theta,lambda,case,count,boundary_flag\n";
  for (int i = 0; i < job.theta_steps; ++i) {
    double theta = job.theta_at(i);
    for (int j = 0; j < job.lambda_steps; ++j) {
      double lambda = job.lambda_at(j);
      auto cls = k2::classify(theta, lambda);
      out += format_double(theta);
      out += ',';
      out += format_double(lambda);
      out += ',';
      out += cls.region;
      out += ',';
      out += std::to_string(cls.tisgm_count);
      out += ',';
      out += cls.boundary_flag ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

std::string curves_csv(const SweepJob& job) {
  job.validate();
  std::string out = "theta,lambda1,lambda2,lambda3,lambda4\n";
  const double nan = std::nan("");
  for (int i = 0; i < job.theta_steps; ++i) {
    double theta = job.theta_at(i);
    auto curves = k2::lambda_curves(theta);
    out += format_double(theta);
    out += ',';
    out += format_double(curves.lambda1.value_or(nan));
    out += ',';
    out += format_double(curves.lambda2.value_or(nan));
    out += ',';
    out += format_double(curves.lambda3);
    out += ',';
    out += format_double(curves.lambda4);
    out += '\n';
  }
  return out;
}

}  // namespace sostree
