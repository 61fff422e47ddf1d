#include "diter/stencil.hpp"

#include <Eigen/Sparse>

#include <array>
#include <cmath>

namespace diter {

namespace {

constexpr double kMarginalTol = 1e-12;

struct InboundEdge {
  Index dn, dm;    // offset of the neighbor the value flows from
  double StencilWeights::*weight;
};

// The stencil relation at (n,m) pulls a_east from (n-1,m), a_west from
// (n+1,m), a_north from (n,m-1), a_south from (n,m+1).
constexpr std::array<InboundEdge, 4> inbound_edges{{
    {-1, 0, &StencilWeights::a_east},
    {+1, 0, &StencilWeights::a_west},
    {0, -1, &StencilWeights::a_north},
    {0, +1, &StencilWeights::a_south},
}};

}  // namespace

double StencilWeights::total_mass() const {
  return std::abs(a_east) + std::abs(a_west) + std::abs(a_north) + std::abs(a_south);
}

Stability validate_stability(const StencilWeights& weights) {
  for (double a : {weights.a_east, weights.a_west, weights.a_north, weights.a_south}) {
    if (!std::isfinite(a)) throw InvalidInput("stencil coefficient is not finite");
  }
  const double mass = weights.total_mass();
  if (mass < 1.0 - kMarginalTol) return Stability::strict;
  if (mass <= 1.0 + kMarginalTol) return Stability::marginal;
  return Stability::unstable;
}

GridProblem GridProblem::rectangle(Index extent_n, Index extent_m,
                                   const StencilWeights& weights, Faces faces) {
  const Index n_lo = faces.n_lo ? 1 : 0;
  const Index n_hi = extent_n - (faces.n_hi ? 1 : 0);
  const Index m_lo = faces.m_lo ? 1 : 0;
  const Index m_hi = extent_m - (faces.m_hi ? 1 : 0);
  if (extent_n < 1 || extent_m < 1 || n_lo >= n_hi || m_lo >= m_hi)
    throw InvalidInput("lattice extents leave no interior site");

  GridProblem p;
  p.extent_n_ = extent_n;
  p.extent_m_ = extent_m;
  p.weights_ = weights;
  p.faces_ = faces;
  p.kind_.assign(static_cast<std::size_t>(extent_n * extent_m), SiteKind::boundary);
  p.f_.assign(p.kind_.size(), 0.0);
  p.g_.assign(p.kind_.size(), 0.0);
  for (Index n = n_lo; n < n_hi; ++n)
    for (Index m = m_lo; m < m_hi; ++m) p.kind_[p.flat(n, m)] = SiteKind::interior;
  p.interior_count_ = (n_hi - n_lo) * (m_hi - m_lo);
  return p;
}

GridProblem GridProblem::line(Index extent, double a_plus, double a_minus) {
  return rectangle(extent, 1, StencilWeights::one_d(a_plus, a_minus),
                   Faces{true, true, false, false});
}

void GridProblem::set_source(Index n, Index m, double value) {
  if (!is_interior(n, m)) throw InvalidInput("f is defined on interior sites only");
  f_[flat(n, m)] = value;
}

void GridProblem::set_boundary_value(Index n, Index m, double value) {
  if (!is_boundary(n, m)) throw InvalidInput("g is defined on boundary sites only");
  g_[flat(n, m)] = value;
}

LinearSystem assemble_system(const GridProblem& problem) {
  LinearSystem sys;
  sys.extent_n = problem.extent_n();
  sys.extent_m = problem.extent_m();
  sys.weights = problem.weights();
  sys.site_index.assign(static_cast<std::size_t>(sys.extent_n * sys.extent_m), -1);

  // Row-major index assignment: deterministic and independent of f/g content.
  for (Index n = 0; n < sys.extent_n; ++n)
    for (Index m = 0; m < sys.extent_m; ++m)
      if (problem.is_interior(n, m)) {
        sys.site_index[n * sys.extent_m + m] = static_cast<Index>(sys.sites.size());
        sys.sites.push_back({n, m});
      }

  const Index dim = static_cast<Index>(sys.sites.size());
  sys.B = Vector::Zero(dim);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(4 * dim));

  for (Index i = 0; i < dim; ++i) {
    const Site s = sys.sites[static_cast<std::size_t>(i)];
    sys.B(i) = problem.source(s.n, s.m);
    for (const auto& e : inbound_edges) {
      const double w = problem.weights().*(e.weight);
      if (w == 0.0) continue;
      const Index nn = s.n + e.dn, nm = s.m + e.dm;
      switch (problem.kind(nn, nm)) {
        case SiteKind::interior:
          triplets.emplace_back(i, sys.site_index[nn * sys.extent_m + nm], w);
          break;
        case SiteKind::boundary:
          sys.B(i) += w * problem.boundary_value(nn, nm);
          break;
        case SiteKind::outside:
          throw MalformedDomain("interior site (" + std::to_string(s.n) + "," +
                                std::to_string(s.m) +
                                ") needs a neighbor outside the lattice");
      }
    }
  }

  sys.P.resize(dim, dim);
  sys.P.setFromTriplets(triplets.begin(), triplets.end());
  sys.P.makeCompressed();
  return sys;
}

double spectral_radius_estimate(const LinearSystem& system, int iterations) {
  if (system.dimension() < 1) throw InvalidInput("empty system");
  if (iterations < 1) throw InvalidInput("iterations must be >= 1");

  SparseMatrix abs_p = system.P.cwiseAbs();
  Vector v = Vector::Ones(system.dimension());
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = abs_p * v;
    const double norm = w.lpNorm<Eigen::Infinity>();
    if (norm == 0.0) return 0.0;
    estimate = norm / v.lpNorm<Eigen::Infinity>();
    v = w / norm;
  }
  return estimate;
}

}  // namespace diter
