#pragma once

// Real-root machinery for low-degree dense polynomials: Sturm chains for
// exact distinct-root counting on (0, inf), Descartes/bisection counting as an
// independent second route, interval isolation with bisection + Newton
// refinement, and a stable closed-form cubic solver.
//
// Everything here is plain double arithmetic with scale-relative tolerances;
// degrees above 16 are rejected.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sostree::poly {

inline constexpr int kMaxDegree = 16;

// Dense univariate polynomial, coefficients in ascending-degree order.
// Construction trims leading coefficients below 1e-13 * max|c_i|; cleared
// rational equations routinely produce such spurious terms.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double leading() const { return coeffs_.back(); }
  double inf_norm() const;

  double operator()(double x) const;  // Horner
  Polynomial derivative() const;
  Polynomial normalized() const;  // scaled to inf-norm 1
  // Quotient of synthetic division by (x - r); remainder is discarded.
  Polynomial deflate(double r) const;

 private:
  std::vector<double> coeffs_;
};

struct RefinedRoot {
  double value = 0.0;
  int multiplicity = 1;
};

struct RootReport {
  enum class Method { kSturm, kDescartesBisect };
  int positive_root_count = 0;  // distinct roots in (0, inf)
  std::vector<std::pair<double, double>> isolated_intervals;
  std::vector<RefinedRoot> refined_roots;  // ascending by value
  Method method = Method::kSturm;
  bool iteration_cap_hit = false;
  std::string note;
};

// Number of distinct roots in (0, inf). Roots at 0 are stripped first; the
// canonical Sturm chain (which ends in gcd(p, p')) counts distinct roots
// without needing an explicit square-free step.
int sturm_positive_count(const Polynomial& p);

// Same count via sign-variation (Descartes) bisection on the square-free
// part. Independent counting route used to cross-check the Sturm chain.
int descartes_positive_count(const Polynomial& p);

// Isolate all positive roots into disjoint intervals, then refine each by
// bisection followed by Newton polishing until |p(r)| < tol * ||p|| * max(1,
// r^deg). Multiplicities are recovered by walking the gcd chain.
RootReport isolate_and_refine(const Polynomial& p, double tol);

struct CubicRoot {
  double value = 0.0;
  int multiplicity = 1;
};

// All real roots of a3*x^3 + a2*x^2 + a1*x + a0 (a3 != 0), ascending.
// One simple root when the discriminant says "one real"; a double or triple
// root is reported once with its multiplicity.
std::vector<CubicRoot> cubic_real_roots(double a3, double a2, double a1,
                                        double a0);

}  // namespace sostree::poly
