#pragma once

// Complete solution set and phase classification for the binary tree (k = 2)
// in the variables x = sqrt(z_0), y = sqrt(z_1), zeta = sqrt(lambda):
//
//   x = (x^2 + theta y^2 + theta^2) / (theta^2 x^2 + theta y^2 + 1)
//   y = zeta (theta x^2 + y^2 + theta) / (theta^2 x^2 + theta y^2 + 1)
//
// The first equation gives x = 1 (cubic branch, up to three roots of
// theta y^3 - zeta y^2 + (theta^2+1) y - 2 zeta theta) or
// theta y^2 = (1-theta^2) x - theta^2 (x^2+1) (quartic branch, up to four
// roots through the xi = x + 1/x substitution). Four lambda-curves and five
// theta thresholds partition the plane into regions with 1..7 solutions.

#include <optional>
#include <string>
#include <vector>

namespace sostree::k2 {

double theta1();         // positive root of 71 t^4 - 38 t^2 - 1; only enters
                         // the discriminant sign analysis
double theta2();         // 1/sqrt(17): below it the cubic can have 3 roots
double theta3();         // 1/sqrt(7): xi-collapse value reaches 2
double theta4();         // 1/sqrt(19): curve-ordering switch
double theta_c_prime();  // 1/sqrt(3): quartic branch empty above
double lambda_tilde();   // 54 sqrt(17)/289: triple-root field at theta2

enum class CurveOrdering { kBelowTheta4, kAtTheta4, kAboveTheta4 };

struct LambdaCurves {
  double theta = 0.0;
  std::optional<double> lambda1;  // defined for theta <= theta2
  std::optional<double> lambda2;  // defined for theta <= theta2, >= lambda1
  double lambda3 = 0.0;           // (theta^4 + 2 theta^2 + 1) / (4 theta)
  double lambda4 = 0.0;           // 4 theta (1 - 3 theta^2); positive below theta_c'
  std::optional<CurveOrdering> ordering;
};

LambdaCurves lambda_curves(double theta);

enum class Branch { kCubic, kQuarticXi1, kQuarticXi2, kCollision };
enum class RootSign { kNone, kMinus, kPlus };

struct FixedPointSolution {
  double x = 1.0;
  double y = 0.0;
  Branch branch = Branch::kCubic;
  RootSign sign = RootSign::kNone;
  int multiplicity = 1;
  int measure_index = 0;  // 1..7
  double residual1 = 0.0;  // fixed-point residual of the x equation
  double residual2 = 0.0;  // fixed-point residual of the y equation

  double z0() const { return x * x; }
  double z1() const { return y * y; }
};

// Positive roots y of the x = 1 cubic, descending (indices 1, 2, 3), with
// tangency multiplicities resolved by the lambda1/lambda2 band.
std::vector<FixedPointSolution> cubic_branch(double theta, double lambda);

// Admissible quartic-branch solutions (indices 4..7); empty above theta_c'
// or lambda3. A solution with x = 1 (lambda on lambda4) is returned here and
// merged with its cubic twin by classify().
std::vector<FixedPointSolution> quartic_branch(double theta, double lambda);

struct PhaseClassification {
  std::string region;  // e.g. "1(a)"
  std::vector<FixedPointSolution> solutions;
  int tisgm_count = 0;
  std::vector<int> measure_indices;
  bool boundary_flag = false;
};

PhaseClassification classify(double theta, double lambda);

struct TisgmCount {
  int count = 0;
  std::vector<int> indices;
};

TisgmCount count_tisgm(double theta, double lambda);

// Independent count: Sturm count of the cubic's positive roots plus the
// positive roots of the cleared x-quartic that admit a positive y^2, with
// the x = 1 collision deduplicated. Meaningful away from the lambda-curves.
int sturm_oracle_count(double theta, double lambda);

double fixed_point_residual1(double x, double y, double theta);
double fixed_point_residual2(double x, double y, double theta, double lambda);

}  // namespace sostree::k2
