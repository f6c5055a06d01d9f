#pragma once

// Domain types for the three-state (and general-m) SOS model on a Cayley
// tree: model parameters in the (theta, lambda) parametrization, finite
// balls, spin configurations, boundary laws in exponential coordinates, the
// boundary-law recurrence map F, and exact finite-ball Gibbs tables.
//
// All types are immutable values after construction and all operations are
// pure; concurrent use needs no synchronization.

#include <cstdint>
#include <span>
#include <vector>

namespace sostree {

// theta = e^{beta J}; beta and J never appear separately. For m = 2 the
// reduced field is (0, ln lambda): spin 1 carries weight lambda, spins 0 and
// 2 weight 1.
struct ModelParams {
  int k = 2;  // every vertex has k + 1 neighbours
  int m = 2;  // spins take values in {0, .., m}
  double theta = 1.0;
  std::vector<double> alpha_reduced;  // length m

  static ModelParams sos3(int k, double theta, double lambda);
  double lambda() const;  // exp(alpha_reduced[1]); requires m == 2
  double field_weight(int spin) const;  // exp(alpha_reduced[spin]), 1 for spin m
  void validate() const;
};

// Ball of given radius around the root. Vertices are indexed in BFS order,
// so the vertices of the radius-n sub-ball are exactly the indices
// [0, vertex_count(n)). The root has k + 1 successors, every other internal
// vertex exactly k.
struct FiniteBall {
  int k = 2;
  int radius = 0;
  std::vector<int> level;                 // distance from root, per vertex
  std::vector<int> parent;                // -1 for the root
  std::vector<std::vector<int>> successors;
  std::vector<std::pair<int, int>> edges;  // (parent, child)

  int vertex_count() const { return static_cast<int>(level.size()); }
  int vertex_count(int n) const;  // |V_n| for n <= radius
  std::vector<int> sphere(int n) const;  // vertices at distance exactly n
};

FiniteBall build_ball(int k, int n);

struct Configuration {
  std::vector<int> spins;  // aligned with ball vertex indices; -1 unassigned
};

// Boundary law in exponential coordinates: z_i = exp(h_i) for the reduced
// field components i = 0..m-1, with the implicit z_m = 1. Entries must be
// strictly positive and finite.
struct BoundaryLaw {
  std::vector<double> z;

  explicit BoundaryLaw(std::vector<double> z_);
  BoundaryLaw(double z0, double z1) : BoundaryLaw(std::vector<double>{z0, z1}) {}
  std::vector<double> log_view() const;
};

// Component-wise recurrence map
//   F_i(u) = ln[(sum_{j<m} theta^|i-j| e^{u_j} + theta^{m-i}) /
//              (sum_{j<m} theta^{m-j} e^{u_j} + 1)],  i = 0..m-1.
// Identically zero at theta = 1.
std::vector<double> recurrence_map(std::span<const double> u, double theta,
                                   int m);

// beta * H for a full configuration of the ball, in reduced units:
//   -ln(theta) * sum_edges |s(x) - s(y)|  -  sum_vertices alpha~_{s(x)}
// so exp(-beta H) is the product of theta^|ds| over edges and the field
// weights over vertices.
double hamiltonian_energy(const Configuration& cfg, const FiniteBall& ball,
                          const ModelParams& params);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Exact distribution over spin assignments of V_n. probs is indexed by the
// base-(m+1) encoding with vertex i in digit i. Each weight is the product
// of theta^|ds| over edges, the field weight at every vertex of V_n, and the
// given per-boundary-vertex factor at the sphere W_n (boundary_factor[m]
// is implicitly 1).
struct GibbsTable {
  int n = 0;
  int num_vertices = 0;
  std::vector<double> probs;

  int spin_of(std::uint64_t index, int vertex, int m) const;
};

GibbsTable gibbs_table(const FiniteBall& ball, const ModelParams& params,
                       const BoundaryLaw& boundary_factor, int n,
                       std::uint64_t enumeration_cap = kDefaultEnumerationCap);

}  // namespace sostree
