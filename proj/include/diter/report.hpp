#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace diter {

/// One residual-trace sample, taken every `dimension` elementary ops so one
/// sample corresponds to one sweep-equivalent of work.
struct TracePoint {
  std::uint64_t ops = 0;
  double sweep_equiv = 0.0;
  double l1_residual = 0.0;
  double linf_residual = 0.0;
  std::uint64_t wall_ns = 0;
};

/// Per-run record shared by every solver. `ops` counts primitive site updates
/// (one row evaluation or one elementary diffusion), the common work unit for
/// cross-method comparison. The residual fields hold the solver's own stopping
/// metric: remaining-fluid norms for the diffusion solvers (identical to the
/// algebraic residual of H), last-sweep update norms for Jacobi/Gauss-Seidel,
/// recurrence residual norms for the direct/directional solvers.
struct SolveReport {
  std::string solver;
  bool converged = false;
  std::uint64_t ops = 0;
  double sweep_equiv = 0.0;
  double residual_l1 = 0.0;
  double residual_linf = 0.0;
  std::uint64_t wall_ns = 0;
  std::uint64_t peak_memory_bytes = 0;
  std::vector<TracePoint> trace;
  Eigen::VectorXd solution;
  std::vector<std::string> artifacts;  ///< paths of files written for this run

  /// One-line summary: `solver=<id> converged=<bool> ops=<n> sweeps=<n> l1=<r> wall_ms=<t>`.
  std::string summary_line() const;
};

}  // namespace diter
