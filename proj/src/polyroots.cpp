#include "sostree/polyroots.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace sostree::poly {

namespace {

constexpr double kTrimRel = 1e-13;
constexpr double kChainZeroRel = 1e-11;
constexpr int kBisectSteps = 200;
constexpr int kIsolationCap = 4000;
constexpr int kVcaDepthCap = 72;

int sign_of(double v, double eps = 0.0) {
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

int count_sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  double norm = 0.0;
  for (double c : coeffs_) norm = std::max(norm, std::abs(c));
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimRel * norm)
    coeffs_.pop_back();
  if (static_cast<int>(coeffs_.size()) - 1 > kMaxDegree)
    throw std::invalid_argument("polynomial degree exceeds " +
                                std::to_string(kMaxDegree));
}

double Polynomial::inf_norm() const {
  double n = 0.0;
  for (double c : coeffs_) n = std::max(n, std::abs(c));
  return n;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::normalized() const {
  double n = inf_norm();
  if (n == 0.0) return *this;
  std::vector<double> c = coeffs_;
  for (double& v : c) v /= n;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::deflate(double r) const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> q(coeffs_.size() - 1);
  double carry = coeffs_.back();
  for (int i = static_cast<int>(coeffs_.size()) - 2; i >= 1; --i) {
    q[i] = carry;
    carry = coeffs_[i] + carry * r;
  }
  q[0] = carry;
  return Polynomial(std::move(q));
}

namespace {

// Remainder of a/b, normalized dividends assumed. Result is negated by the
// caller when building a Sturm chain.
Polynomial poly_mod(const Polynomial& a, const Polynomial& b) {
  std::vector<double> r = a.coeffs();
  const auto& d = b.coeffs();
  int db = b.degree();
  while (static_cast<int>(r.size()) - 1 >= db) {
    int dr = static_cast<int>(r.size()) - 1;
    double f = r.back() / d.back();
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * d[i];
    r.pop_back();
    // drop any further ~zero leading terms to keep degrees honest
    while (!r.empty() && std::abs(r.back()) <= kTrimRel * a.inf_norm())
      r.pop_back();
  }
  return Polynomial(std::move(r));
}

// Quotient a/b for near-exact division (used to extract square-free parts).
Polynomial poly_div(const Polynomial& a, const Polynomial& b) {
  std::vector<double> r = a.coeffs();
  const auto& d = b.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return Polynomial{};
  std::vector<double> q(dq + 1, 0.0);
  for (int i = dq; i >= 0; --i) {
    double f = r[i + db] / d.back();
    q[i] = f;
    for (int j = 0; j <= db; ++j) r[i + j] -= f * d[j];
  }
  return Polynomial(std::move(q));
}

struct SturmChain {
  std::vector<Polynomial> seq;  // seq.back() ~ gcd(p, p') up to scale
};

SturmChain build_sturm_chain(const Polynomial& p) {
  SturmChain chain;
  chain.seq.push_back(p.normalized());
  Polynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.seq.push_back(d.normalized());
  while (chain.seq.back().degree() >= 1) {
    const Polynomial& a = chain.seq[chain.seq.size() - 2];
    const Polynomial& b = chain.seq.back();
    Polynomial rem = poly_mod(a, b);
    if (rem.is_zero() || rem.inf_norm() <= kChainZeroRel) break;
    std::vector<double> neg = rem.coeffs();
    for (double& c : neg) c = -c;
    chain.seq.push_back(Polynomial(std::move(neg)).normalized());
  }
  return chain;
}

int variations_at(const SturmChain& chain, double x) {
  std::vector<int> signs;
  signs.reserve(chain.seq.size());
  for (const auto& s : chain.seq) signs.push_back(sign_of(s(x)));
  return count_sign_changes(signs);
}

int variations_at_inf(const SturmChain& chain) {
  std::vector<int> signs;
  signs.reserve(chain.seq.size());
  for (const auto& s : chain.seq) signs.push_back(sign_of(s.leading()));
  return count_sign_changes(signs);
}

// Sign variation count at 0+ : a chain member vanishing at 0 takes the sign
// it has just right of 0, i.e. of its lowest nonzero coefficient.
int variations_at_zero_plus(const SturmChain& chain) {
  std::vector<int> signs;
  signs.reserve(chain.seq.size());
  for (const auto& s : chain.seq) {
    int sg = 0;
    for (double c : s.coeffs()) {
      if (std::abs(c) > kTrimRel * s.inf_norm()) {
        sg = sign_of(c);
        break;
      }
    }
    signs.push_back(sg);
  }
  return count_sign_changes(signs);
}

// Strip roots at the origin; they are not counted as positive.
Polynomial strip_origin_roots(const Polynomial& p) {
  std::vector<double> c = p.coeffs();
  double norm = p.inf_norm();
  std::size_t shift = 0;
  while (shift + 1 < c.size() && std::abs(c[shift]) <= kTrimRel * norm) ++shift;
  if (shift > 0) c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  return Polynomial(std::move(c));
}

double cauchy_positive_bound(const Polynomial& p) {
  double lead = std::abs(p.leading());
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i)
    m = std::max(m, std::abs(p.coeffs()[i]));
  return 1.0 + m / lead;
}

int chain_count_between(const SturmChain& chain, double a, double b) {
  // distinct roots in (a, b]; a == 0 uses the 0+ limit signs
  int va = (a == 0.0) ? variations_at_zero_plus(chain) : variations_at(chain, a);
  int vb = std::isinf(b) ? variations_at_inf(chain) : variations_at(chain, b);
  return va - vb;
}

bool is_near_root(const Polynomial& p, double r) {
  double scale = p.inf_norm() * std::max(1.0, std::pow(std::abs(r), p.degree()));
  return std::abs(p(r)) <= 1e-7 * scale;
}

// Multiplicity of refined root r in p, walking gcd(p, p'), gcd of that with
// its derivative, and so on.
int multiplicity_of(const Polynomial& p, double r) {
  int mult = 1;
  Polynomial cur = p;
  for (int guard = 0; guard < kMaxDegree; ++guard) {
    SturmChain chain = build_sturm_chain(cur);
    const Polynomial& g = chain.seq.back();
    if (g.degree() < 1 || !is_near_root(g, r)) break;
    ++mult;
    cur = g;
  }
  return mult;
}

double refine_root(const Polynomial& q, double lo, double hi) {
  // q is square-free on [lo, hi] with exactly one root; bisection needs a
  // sign change, which simple roots guarantee.
  double flo = q(lo);
  if (flo == 0.0) return lo;
  if (q(hi) == 0.0) return hi;
  for (int i = 0; i < kBisectSteps && hi - lo > 1e-15 * std::max(1.0, std::abs(hi));
       ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = q(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double r = 0.5 * (lo + hi);
  Polynomial dq = q.derivative();
  for (int i = 0; i < 8; ++i) {
    double d = dq(r);
    if (d == 0.0) break;
    double step = q(r) / d;
    if (!std::isfinite(step)) break;
    r -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(r))) break;
  }
  return r;
}

}  // namespace

int sturm_positive_count(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  Polynomial q = strip_origin_roots(p);
  if (q.degree() < 1) return 0;
  SturmChain chain = build_sturm_chain(q);
  return chain_count_between(chain, 0.0, std::numeric_limits<double>::infinity());
}

namespace {

Polynomial reversed(const Polynomial& p) {
  std::vector<double> c(p.coeffs().rbegin(), p.coeffs().rend());
  return Polynomial(std::move(c));
}

Polynomial taylor_shift_one(const Polynomial& p) {
  std::vector<double> c = p.coeffs();
  int n = static_cast<int>(c.size());
  for (int i = 0; i < n - 1; ++i)
    for (int j = n - 2; j >= i; --j) c[j] += c[j + 1];
  return Polynomial(std::move(c));
}

Polynomial scale_arg(const Polynomial& p, double s) {
  std::vector<double> c = p.coeffs();
  double f = 1.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    f *= s;
    c[i] *= f;
  }
  return Polynomial(std::move(c));
}

Polynomial shift_half_then_unit(const Polynomial& p) {
  // p((x + 1) / 2), i.e. scale by 1/2 then shift by 1... order matters:
  // q(x) = p(x/2) first, then q(x + 1) gives p((x+1)/2).
  return taylor_shift_one(scale_arg(p, 0.5));
}

int coefficient_variations(const Polynomial& p) {
  std::vector<int> signs;
  signs.reserve(p.coeffs().size());
  double norm = p.inf_norm();
  for (double c : p.coeffs()) signs.push_back(sign_of(c, kTrimRel * norm));
  return count_sign_changes(signs);
}

// Roots of q in the open unit interval, by sign-variation bisection.
int vca_count01(const Polynomial& q, int depth) {
  if (depth > kVcaDepthCap)
    throw std::runtime_error("descartes bisection depth cap hit");
  Polynomial work = q.normalized();
  int extra = 0;
  if (std::abs(work(0.5)) <= 1e-10 * work.inf_norm()) {
    extra = 1;
    work = work.deflate(0.5).normalized();
  }
  int v = coefficient_variations(taylor_shift_one(reversed(work)));
  if (v == 0) return extra;
  if (v == 1) return extra + 1;
  Polynomial left = scale_arg(work, 0.5);
  Polynomial right = shift_half_then_unit(work);
  return extra + vca_count01(left, depth + 1) + vca_count01(right, depth + 1);
}

}  // namespace

int descartes_positive_count(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  Polynomial q = strip_origin_roots(p);
  if (q.degree() < 1) return 0;
  // square-free part via the gcd tail of the Sturm chain
  SturmChain chain = build_sturm_chain(q);
  const Polynomial& g = chain.seq.back();
  if (g.degree() >= 1) q = poly_div(q, g);
  if (q.degree() < 1) return 0;
  double bound = cauchy_positive_bound(q);
  // roots at exactly x = 1 of the rescaled poly cannot occur: bound exceeds
  // every root modulus strictly
  return vca_count01(scale_arg(q, bound), 0);
}

RootReport isolate_and_refine(const Polynomial& p, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  RootReport report;
  report.method = RootReport::Method::kSturm;

  Polynomial stripped = strip_origin_roots(p);
  if (stripped.degree() < 1) return report;
  SturmChain chain = build_sturm_chain(stripped);
  const Polynomial& g = chain.seq.back();
  Polynomial sqfree =
      (g.degree() >= 1) ? poly_div(stripped, g) : stripped;
  SturmChain sf_chain = build_sturm_chain(sqfree);

  double hi0 = cauchy_positive_bound(stripped);
  int total = chain_count_between(sf_chain, 0.0, hi0);
  report.positive_root_count = total;
  if (total == 0) return report;

  struct Seg {
    double lo, hi;
    int count;
  };
  std::vector<Seg> stack{{0.0, hi0, total}};
  std::vector<std::pair<double, double>> isolated;
  int steps = 0;
  while (!stack.empty()) {
    if (++steps > kIsolationCap) {
      report.iteration_cap_hit = true;
      report.note = "isolation subdivision cap hit";
      break;
    }
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      isolated.emplace_back(s.lo, s.hi);
      continue;
    }
    double mid = 0.5 * (s.lo + s.hi);
    // nudge off a root of the square-free part so interval counts stay exact
    while (std::abs(sqfree(mid)) <=
           1e-14 * sqfree.inf_norm() * std::max(1.0, std::pow(mid, sqfree.degree())))
      mid += (s.hi - s.lo) * 1e-9;
    int left = chain_count_between(sf_chain, s.lo, mid);
    stack.push_back({s.lo, mid, left});
    stack.push_back({mid, s.hi, s.count - left});
  }
  std::sort(isolated.begin(), isolated.end());
  report.isolated_intervals = isolated;

  for (auto [lo, hi] : isolated) {
    double r = refine_root(sqfree, lo, hi);
    int mult = (g.degree() >= 1) ? multiplicity_of(stripped, r) : 1;
    double scale =
        stripped.inf_norm() * std::max(1.0, std::pow(std::abs(r), stripped.degree()));
    if (std::abs(stripped(r)) > tol * scale) {
      report.iteration_cap_hit = true;
      report.note = "refinement did not reach requested tolerance";
    }
    report.refined_roots.push_back({r, mult});
  }
  return report;
}

std::vector<CubicRoot> cubic_real_roots(double a3, double a2, double a1,
                                        double a0) {
  if (a3 == 0.0) throw std::invalid_argument("leading coefficient is zero");
  double a = a2 / a3, b = a1 / a3, c = a0 / a3;
  double q = (a * a - 3.0 * b) / 9.0;
  double r = (a * (2.0 * a * a - 9.0 * b) + 27.0 * c) / 54.0;
  double r2 = r * r;
  double q3 = q * q * q;
  double scale = std::max({std::abs(r2), std::abs(q3), 1e-300});
  const Polynomial p({c, b, a, 1.0});
  const Polynomial dp = p.derivative();

  auto polish = [&](double x) {
    for (int i = 0; i < 12; ++i) {
      double d = dp(x);
      if (d == 0.0) break;
      double step = p(x) / d;
      if (!std::isfinite(step)) break;
      x -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    return x;
  };

  std::vector<CubicRoot> roots;
  if (std::abs(r2 - q3) <= 1e-11 * scale) {
    if (std::abs(q) <= 1e-11 * std::max(1.0, a * a)) {
      roots.push_back({-a / 3.0, 3});  // triple
    } else {
      double u = std::cbrt(r);
      double dbl = u - a / 3.0;
      double simple = polish(-2.0 * u - a / 3.0);
      // the double root is a simple root of the derivative; polish there
      for (int i = 0; i < 8; ++i) {
        double dd = 6.0 * dbl + 2.0 * a;
        if (dd == 0.0) break;
        dbl -= dp(dbl) / dd;
      }
      roots.push_back({dbl, 2});
      roots.push_back({simple, 1});
    }
  } else if (r2 < q3) {
    double t = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    double f = -2.0 * std::sqrt(q);
    constexpr double kTwoPi = 6.283185307179586476925287;
    for (int i = 0; i < 3; ++i)
      roots.push_back({polish(f * std::cos((t + kTwoPi * i) / 3.0) - a / 3.0), 1});
  } else {
    double u3 = -r - std::copysign(std::sqrt(r2 - q3), r);
    double u = std::cbrt(u3);
    double v = (u == 0.0) ? 0.0 : q / u;
    roots.push_back({polish(u + v - a / 3.0), 1});
  }
  std::sort(roots.begin(), roots.end(),
            [](const CubicRoot& x, const CubicRoot& y) { return x.value < y.value; });
  return roots;
}

}  // namespace sostree::poly
