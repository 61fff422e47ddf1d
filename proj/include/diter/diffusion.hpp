#pragma once

#include <cstdint>
#include <vector>

#include "diter/report.hpp"
#include "diter/stencil.hpp"

namespace diter {

/// The D-iteration's entire mutable state: the history vector H (accumulated
/// diffused mass, converging to the solution of X = P*X + B) and the fluid
/// vector F (remaining mass). The algebraic identity F = B + (P - I)*H holds
/// at every step, so F is literally the residual of H.
struct FluidState {
  Vector history;
  Vector fluid;
  std::uint64_t op_count = 0;
};

/// Site-scheduling strategy for `run`. `sweep` cycles sites in row-major index
/// order; `greedy` repeatedly diffuses the site with the largest |F| (bucketed
/// by binary exponent, lowest index first within a bucket); `custom` cycles an
/// explicit site sequence (fairness is then the caller's responsibility).
struct Schedule {
  enum class Strategy { sweep, greedy, custom };
  Strategy strategy = Strategy::sweep;
  double tolerance = 1e-10;       ///< stop when the L1 norm of F drops below this
  std::uint64_t max_ops = 100'000'000;
  std::vector<Index> custom_order;
};

/// H = 0, F = B: the boundary/source injection is realized through B.
FluidState init_fluid(const LinearSystem& system);

/// One elementary diffusion at `site`: H(site) += F(site), each interior
/// neighbor v gains (weight along site->v) * F(site), fluid pushed toward a
/// boundary is absorbed, F(site) = 0, op_count++. Throws std::out_of_range
/// for an invalid site index.
void diffuse_site(FluidState& state, const LinearSystem& system, Index site);

/// L1 norm of the remaining fluid; zero iff H is the exact fixed point.
double residual_norm(const FluidState& state);

/// Runs elementary diffusions under `schedule` until residual_norm(state) <=
/// tolerance or op_count >= max_ops (then the report is flagged not-converged).
/// The trace is sampled every `dimension` ops. Throws NumericalFailure if the
/// fluid turns non-finite.
SolveReport run(FluidState& state, const LinearSystem& system, const Schedule& schedule);

}  // namespace diter
