#pragma once

// Translation-invariant analysis of the z_0 = 1 branch for general tree
// degree k >= 2 (three spin values): the fixed-point equation
//   z_1 = lambda ((2 theta + z_1)/(theta^2 + theta z_1 + 1))^k
// in the (a, b) normal form a x = ((1+x)/(b+x))^k, root counting by the
// tangency thresholds a_1 < a_2, the critical temperature theta_c(k), the
// critical fields lambda*_1 < lambda*_2, and the resulting lower bound on
// the number of translation-invariant splitting Gibbs measures. For theta
// >= 1 the full two-component system factorizes and the solution is unique.

#include <optional>
#include <vector>

namespace sostree {

struct ABForm {
  double a = 0.0;  // 2 theta^{k+1} / lambda
  double b = 0.0;  // (1 + theta^2) / (2 theta^2); independent of lambda and k
};

ABForm ab_transform(double theta, double lambda, int k);

struct NormalFormCount {
  int count = 1;  // distinct positive solutions: 1, 2 or 3
  double b0 = 0.0;  // ((k+1)/(k-1))^2
  double discriminant = 0.0;  // (b-1)(k-1)^2 (b - b0)
  std::optional<double> x1, x2;  // tangency abscissae, 0 < x1 < x2
  std::optional<double> a1, a2;  // tangency thresholds, 0 < a1 < a2
  bool on_boundary = false;  // a within relative 1e-9 of a1 or a2
};

NormalFormCount normal_form_root_count(double a, double b, int k);

// (k-1)/sqrt(k^2 + 6k + 1); b(theta) > b0(k) exactly for theta below it.
double theta_c(int k);

struct LambdaStars {
  double lambda1 = 0.0;
  double lambda2 = 0.0;  // always > lambda1
};

// Defined for theta < theta_c(k) only; throws std::domain_error otherwise.
LambdaStars lambda_star(double theta, int k);

struct BranchRoot {
  double z1 = 0.0;
  int multiplicity = 1;
  double residual = 0.0;  // |z1 - lambda ((2t+z1)/(t^2+t z1+1))^k|
};

// All positive roots of the z_0 = 1 branch equation, ascending in z1. A
// tangency root (lambda on a critical field, relative 1e-9) is reported once
// with multiplicity 2. Each residual stays below 1e-12 * max(1, z1): the
// defect of a double-valued root cannot beat ulp(z1).
std::vector<BranchRoot> solve_z0eq1_branch(double theta, double lambda, int k);

// 1 if theta >= theta_c or lambda outside [lambda*_1, lambda*_2]; 2 on the
// critical fields; 3 strictly between.
int tisgm_lower_bound(double theta, double lambda, int k);

// True exactly for theta >= 1, where the system admits only z_0 = 1 and a
// single z_1.
bool uniqueness_regime(double theta);

}  // namespace sostree
