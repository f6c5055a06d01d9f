#include "sostree/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sostree {

ModelParams ModelParams::sos3(int k, double theta, double lambda) {
  if (lambda <= 0 || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be positive and finite");
  ModelParams p;
  p.k = k;
  p.m = 2;
  p.theta = theta;
  p.alpha_reduced = {0.0, std::log(lambda)};
  p.validate();
  return p;
}

double ModelParams::lambda() const {
  if (m != 2) throw std::logic_error("lambda is defined for m == 2 only");
  return std::exp(alpha_reduced[1]);
}

double ModelParams::field_weight(int spin) const {
  if (spin < 0 || spin > m) throw std::out_of_range("spin out of range");
  return spin == m ? 1.0 : std::exp(alpha_reduced[spin]);
}

void ModelParams::validate() const {
  if (k < 2) throw std::invalid_argument("tree degree k must be >= 2");
  if (m < 1) throw std::invalid_argument("spin ceiling m must be >= 1");
  if (!(theta > 0) || !std::isfinite(theta))
    throw std::invalid_argument("theta must be positive and finite");
  if (static_cast<int>(alpha_reduced.size()) != m)
    throw std::invalid_argument("alpha_reduced must have length m");
}

int FiniteBall::vertex_count(int n) const {
  if (n < 0 || n > radius) throw std::out_of_range("sub-ball radius");
  int count = 0;
  while (count < vertex_count() && level[count] <= n) ++count;
  return count;
}

std::vector<int> FiniteBall::sphere(int n) const {
  std::vector<int> w;
  for (int v = 0; v < vertex_count(); ++v)
    if (level[v] == n) w.push_back(v);
  return w;
}

FiniteBall build_ball(int k, int n) {
  if (k < 2) throw std::invalid_argument("tree degree k must be >= 2");
  if (n < 0) throw std::invalid_argument("ball radius must be >= 0");
  FiniteBall ball;
  ball.k = k;
  ball.radius = n;
  ball.level = {0};
  ball.parent = {-1};
  ball.successors.emplace_back();
  std::vector<int> frontier{0};
  for (int lev = 1; lev <= n; ++lev) {
    std::vector<int> next;
    for (int p : frontier) {
      int children = (p == 0) ? k + 1 : k;
      for (int c = 0; c < children; ++c) {
        int v = ball.vertex_count();
        ball.level.push_back(lev);
        ball.parent.push_back(p);
        ball.successors.emplace_back();
        ball.successors[p].push_back(v);
        ball.edges.emplace_back(p, v);
        next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  return ball;
}

BoundaryLaw::BoundaryLaw(std::vector<double> z_) : z(std::move(z_)) {
  for (double v : z)
    if (!(v > 0) || !std::isfinite(v))
      throw std::invalid_argument("boundary law entries must be positive and finite");
}

std::vector<double> BoundaryLaw::log_view() const {
  std::vector<double> h(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) h[i] = std::log(z[i]);
  return h;
}

std::vector<double> recurrence_map(std::span<const double> u, double theta,
                                   int m) {
  if (!(theta > 0) || !std::isfinite(theta))
    throw std::invalid_argument("theta must be positive and finite");
  if (m < 1 || static_cast<int>(u.size()) != m)
    throw std::invalid_argument("u must have length m >= 1");
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) {
    double num = std::pow(theta, m - i);
    double den = 1.0;
    for (int j = 0; j < m; ++j) {
      double e = std::exp(u[j]);
      num += std::pow(theta, std::abs(i - j)) * e;
      den += std::pow(theta, m - j) * e;
    }
    out[i] = std::log(num / den);
  }
  return out;
}

double hamiltonian_energy(const Configuration& cfg, const FiniteBall& ball,
                          const ModelParams& params) {
  params.validate();
  if (static_cast<int>(cfg.spins.size()) < ball.vertex_count())
    throw std::invalid_argument("configuration does not cover the ball");
  for (int v = 0; v < ball.vertex_count(); ++v) {
    int s = cfg.spins[v];
    if (s < 0) throw std::invalid_argument("unassigned vertex " + std::to_string(v));
    if (s > params.m) throw std::out_of_range("spin out of range at vertex " +
                                              std::to_string(v));
  }
  double grad_sum = 0.0;
  for (auto [a, b] : ball.edges)
    grad_sum += std::abs(cfg.spins[a] - cfg.spins[b]);
  double field_sum = 0.0;
  for (int v = 0; v < ball.vertex_count(); ++v) {
    int s = cfg.spins[v];
    if (s < params.m) field_sum += params.alpha_reduced[s];
  }
  return -std::log(params.theta) * grad_sum - field_sum;
}

int GibbsTable::spin_of(std::uint64_t index, int vertex, int m) const {
  const auto base = static_cast<std::uint64_t>(m + 1);
  for (int i = 0; i < vertex; ++i) index /= base;
  return static_cast<int>(index % base);
}

GibbsTable gibbs_table(const FiniteBall& ball, const ModelParams& params,
                       const BoundaryLaw& boundary_factor, int n,
                       std::uint64_t enumeration_cap) {
  params.validate();
  if (n < 0 || n > ball.radius) throw std::out_of_range("table radius exceeds ball");
  if (static_cast<int>(boundary_factor.z.size()) != params.m)
    throw std::invalid_argument("boundary law must have length m");

  const int nv = ball.vertex_count(n);
  const auto base = static_cast<std::uint64_t>(params.m + 1);
  std::uint64_t total = 1;
  for (int i = 0; i < nv; ++i) {
    if (total > enumeration_cap / base)
      throw std::length_error("enumeration cap exceeded");
    total *= base;
  }

  std::vector<double> phi(params.m + 1);
  std::vector<double> zb(params.m + 1);
  for (int s = 0; s <= params.m; ++s) {
    phi[s] = params.field_weight(s);
    zb[s] = (s < params.m) ? boundary_factor.z[s] : 1.0;
  }
  std::vector<char> on_sphere(nv, 0);
  for (int v = 0; v < nv; ++v) on_sphere[v] = (ball.level[v] == n);

  // edges inside V_n only
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : ball.edges)
    if (a < nv && b < nv) edges.emplace_back(a, b);

  GibbsTable table;
  table.n = n;
  table.num_vertices = nv;
  table.probs.assign(total, 0.0);

  std::vector<int> spin(nv, 0);
  long double norm = 0.0;  // extended accumulator keeps the sum-to-1 residual
                           // below 1e-14 even for 3^10-term tables
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    double w = 1.0;
    for (auto [a, b] : edges)
      w *= std::pow(params.theta, std::abs(spin[a] - spin[b]));
    for (int v = 0; v < nv; ++v) {
      w *= phi[spin[v]];
      if (on_sphere[v]) w *= zb[spin[v]];
    }
    table.probs[idx] = w;
    norm += w;
    // odometer increment
    for (int v = 0; v < nv; ++v) {
      if (++spin[v] <= params.m) break;
      spin[v] = 0;
    }
  }
  for (double& p : table.probs) p = static_cast<double>(p / norm);
  return table;
}

}  // namespace sostree
