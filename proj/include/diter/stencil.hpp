#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <vector>

#include "diter/errors.hpp"

namespace diter {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;  // column-major: column j = pushes out of site j

/// Directed stencil coefficients of the affine lattice relation
///
///   U(n,m) = a_east*U(n-1,m) + a_west*U(n+1,m)
///          + a_north*U(n,m-1) + a_south*U(n,m+1) + f(n,m).
///
/// Each coefficient is the weight carried *in* its named direction, so a_east
/// multiplies the west neighbor's value (mass flowing east), and so on.
/// In 1D only a_east/a_west are used, under the aliases a_plus/a_minus.
struct StencilWeights {
  double a_east = 0.0;   ///< weight in the +n direction
  double a_west = 0.0;   ///< weight in the -n direction
  double a_north = 0.0;  ///< weight in the +m direction
  double a_south = 0.0;  ///< weight in the -m direction

  static StencilWeights one_d(double a_plus, double a_minus) {
    return {a_plus, a_minus, 0.0, 0.0};
  }

  double a_plus() const { return a_east; }
  double a_minus() const { return a_west; }

  /// |a| = |a_east| + |a_west| + |a_north| + |a_south|.
  double total_mass() const;
};

enum class Stability { strict, marginal, unstable };

/// Classifies the stencil by total mass: strict (< 1), marginal (= 1 within
/// 1e-12), unstable (> 1). Throws InvalidInput on non-finite coefficients.
Stability validate_stability(const StencilWeights& weights);

struct Site {
  Index n = 0;
  Index m = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

enum class SiteKind : std::uint8_t { outside, interior, boundary };

/// A rectangular lattice problem: interior sites Omega carrying a source f,
/// surrounded by boundary layers carrying imposed values g. Boundary layers
/// may be omitted per face (the heat marching domain has none past the last
/// time row); assembly then requires the inbound weight from that face to be
/// zero. Non-rectangular domains are rejected by construction.
class GridProblem {
 public:
  struct Faces {
    bool n_lo = true;  ///< boundary layer at n = 0
    bool n_hi = true;  ///< boundary layer at n = extent_n - 1
    bool m_lo = true;  ///< boundary layer at m = 0
    bool m_hi = true;  ///< boundary layer at m = extent_m - 1
  };

  /// 2D lattice of extent_n x extent_m sites; enabled faces are boundary,
  /// the rest is interior. Extents must leave at least one interior site.
  static GridProblem rectangle(Index extent_n, Index extent_m,
                               const StencilWeights& weights, Faces faces = {});

  /// 1D chain of `extent` sites along the n axis, sites 0 and extent-1 boundary.
  static GridProblem line(Index extent, double a_plus, double a_minus);

  Index extent_n() const { return extent_n_; }
  Index extent_m() const { return extent_m_; }
  bool is_one_d() const { return extent_m_ == 1; }
  const StencilWeights& weights() const { return weights_; }
  const Faces& faces() const { return faces_; }

  bool in_lattice(Index n, Index m) const {
    return n >= 0 && n < extent_n_ && m >= 0 && m < extent_m_;
  }
  SiteKind kind(Index n, Index m) const {
    return in_lattice(n, m) ? kind_[flat(n, m)] : SiteKind::outside;
  }
  bool is_interior(Index n, Index m) const { return kind(n, m) == SiteKind::interior; }
  bool is_boundary(Index n, Index m) const { return kind(n, m) == SiteKind::boundary; }

  /// f is defined on exactly Omega.
  void set_source(Index n, Index m, double value);
  double source(Index n, Index m) const { return f_[flat(n, m)]; }

  /// g is defined on exactly the boundary.
  void set_boundary_value(Index n, Index m, double value);
  double boundary_value(Index n, Index m) const { return g_[flat(n, m)]; }

  Index interior_count() const { return interior_count_; }

 private:
  GridProblem() = default;
  Index flat(Index n, Index m) const { return n * extent_m_ + m; }

  Index extent_n_ = 0;
  Index extent_m_ = 0;
  StencilWeights weights_;
  Faces faces_;
  std::vector<SiteKind> kind_;
  std::vector<double> f_;
  std::vector<double> g_;
  Index interior_count_ = 0;
};

/// The fixed-point system X = P*X + B over interior sites, indices assigned
/// in row-major site order (n outer, m inner). P is stored column-major so
/// column j enumerates the directed edges out of site j (the diffusion pushes);
/// row i enumerates the inbound weights of the stencil relation at site i.
struct LinearSystem {
  SparseMatrix P;
  Vector B;
  std::vector<Site> sites;             ///< index -> lattice site
  std::vector<Index> site_index;       ///< flat lattice -> index, -1 if not interior
  Index extent_n = 0;
  Index extent_m = 0;
  StencilWeights weights;

  Index dimension() const { return B.size(); }
  Index index_of(Index n, Index m) const {
    return (n >= 0 && n < extent_n && m >= 0 && m < extent_m)
               ? site_index[n * extent_m + m]
               : -1;
  }
};

/// Builds the equivalent system X = P*X + B: P holds one entry per directed
/// stencil edge between interior sites, B(i) = f(site_i) plus the inflow
/// sum of (weight along b -> site_i) * g(b) over boundary neighbors b.
/// Throws MalformedDomain if an interior site needs a neighbor (nonzero
/// inbound weight) that is neither interior nor boundary.
LinearSystem assemble_system(const GridProblem& problem);

/// Power-iteration estimate of rho(|P|) (entrywise absolute value). The
/// estimate improves monotonically in expectation as `iterations` grows and
/// is biased low for finite counts on nonnegative P; a zero matrix yields 0.
double spectral_radius_estimate(const LinearSystem& system, int iterations);

}  // namespace diter
