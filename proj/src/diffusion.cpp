#include "diter/diffusion.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace diter {

namespace {

// Subnormal-range fluid is flushed to zero; it is far below any meaningful
// tolerance and would only slow the arithmetic down.
constexpr double kFlushThreshold = 1e-300;

double flushed(double v) { return std::abs(v) < kFlushThreshold ? 0.0 : v; }

// Max-|F| selection at binary-exponent granularity: buckets keyed by
// ilogb(|F|), lowest site index first within a bucket. All updates are
// applied eagerly so the selection order is a pure function of the state.
class GreedyQueue {
 public:
  explicit GreedyQueue(const Vector& fluid)
      : bucket_of_(static_cast<std::size_t>(fluid.size()), kNotQueued) {
    for (Index i = 0; i < fluid.size(); ++i) update(i, fluid(i));
  }

  void update(Index site, double value) {
    const int b = value == 0.0 ? kNotQueued : std::ilogb(std::abs(value));
    int& cur = bucket_of_[static_cast<std::size_t>(site)];
    if (b == cur) return;
    if (cur != kNotQueued) {
      auto it = buckets_.find(cur);
      it->second.erase(site);
      if (it->second.empty()) buckets_.erase(it);
    }
    if (b != kNotQueued) buckets_[b].insert(site);
    cur = b;
  }

  Index pop_best() const {
    if (buckets_.empty()) return -1;
    return *buckets_.rbegin()->second.begin();
  }

 private:
  static constexpr int kNotQueued = INT_MIN;
  std::map<int, std::set<Index>> buckets_;
  std::vector<int> bucket_of_;
};

}  // namespace

FluidState init_fluid(const LinearSystem& system) {
  FluidState state;
  state.history = Vector::Zero(system.dimension());
  state.fluid = system.B;
  state.op_count = 0;
  return state;
}

void diffuse_site(FluidState& state, const LinearSystem& system, Index site) {
  if (site < 0 || site >= system.dimension())
    throw std::out_of_range("diffuse_site: site index out of range");
  const double mass = state.fluid(site);
  state.fluid(site) = 0.0;
  state.history(site) += mass;
  if (mass != 0.0) {
    for (SparseMatrix::InnerIterator it(system.P, site); it; ++it)
      state.fluid(it.row()) = flushed(state.fluid(it.row()) + it.value() * mass);
  }
  ++state.op_count;
}

double residual_norm(const FluidState& state) { return state.fluid.lpNorm<1>(); }

SolveReport run(FluidState& state, const LinearSystem& system, const Schedule& schedule) {
  using Clock = std::chrono::steady_clock;

  if (!(schedule.tolerance > 0.0)) throw InvalidInput("schedule tolerance must be > 0");
  if (schedule.max_ops < 1) throw InvalidInput("schedule max_ops must be >= 1");
  const Index dim = system.dimension();
  if (schedule.strategy == Schedule::Strategy::custom) {
    if (schedule.custom_order.empty())
      throw InvalidInput("custom schedule needs a nonempty site sequence");
    for (Index s : schedule.custom_order)
      if (s < 0 || s >= dim) throw InvalidInput("custom schedule site out of range");
  }

  SolveReport report;
  switch (schedule.strategy) {
    case Schedule::Strategy::sweep:  report.solver = "di-sweep";  break;
    case Schedule::Strategy::greedy: report.solver = "di-greedy"; break;
    case Schedule::Strategy::custom: report.solver = "di-custom"; break;
  }

  const auto start = Clock::now();
  const std::uint64_t start_ops = state.op_count;
  double l1 = state.fluid.lpNorm<1>();

  GreedyQueue* queue = nullptr;
  std::unique_ptr<GreedyQueue> queue_storage;
  if (schedule.strategy == Schedule::Strategy::greedy) {
    queue_storage = std::make_unique<GreedyQueue>(state.fluid);
    queue = queue_storage.get();
  }

  auto elapsed_ns = [&] {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
  };
  auto take_sample = [&] {
    l1 = state.fluid.lpNorm<1>();  // resync incremental accounting
    if (!std::isfinite(l1)) throw NumericalFailure("fluid vector turned non-finite");
    report.trace.push_back({state.op_count - start_ops,
                            dim > 0 ? double(state.op_count - start_ops) / double(dim) : 0.0,
                            l1, state.fluid.lpNorm<Eigen::Infinity>(), elapsed_ns()});
  };
  take_sample();

  // One elementary diffusion with incremental L1 and queue bookkeeping.
  auto diffuse = [&](Index site) {
    const double mass = state.fluid(site);
    if (mass != 0.0) {
      l1 -= std::abs(mass);
      state.fluid(site) = 0.0;
      state.history(site) += mass;
      if (queue) queue->update(site, 0.0);
      for (SparseMatrix::InnerIterator it(system.P, site); it; ++it) {
        double& f = state.fluid(it.row());
        l1 -= std::abs(f);
        f = flushed(f + it.value() * mass);
        l1 += std::abs(f);
        if (queue) queue->update(it.row(), f);
      }
    } else {
      state.history(site) += 0.0;  // keep NaN propagation semantics of +=
    }
    ++state.op_count;
  };

  bool converged = l1 <= schedule.tolerance;
  std::uint64_t next_sample = dim > 0 ? static_cast<std::uint64_t>(dim) : 1;
  Index sweep_cursor = 0;
  std::size_t custom_cursor = 0;

  while (!converged && state.op_count - start_ops < schedule.max_ops) {
    Index site = -1;
    switch (schedule.strategy) {
      case Schedule::Strategy::sweep:
        site = sweep_cursor;
        sweep_cursor = (sweep_cursor + 1) % dim;
        break;
      case Schedule::Strategy::greedy:
        site = queue->pop_best();
        break;
      case Schedule::Strategy::custom:
        site = schedule.custom_order[custom_cursor];
        custom_cursor = (custom_cursor + 1) % schedule.custom_order.size();
        break;
    }
    if (site < 0) {  // greedy found no fluid left anywhere
      converged = true;
      break;
    }
    diffuse(site);

    const std::uint64_t done = state.op_count - start_ops;
    if (done >= next_sample) {
      take_sample();
      next_sample += static_cast<std::uint64_t>(dim);
    }
    if (l1 <= schedule.tolerance) {
      l1 = state.fluid.lpNorm<1>();  // confirm against drift before stopping
      if (!std::isfinite(l1)) throw NumericalFailure("fluid vector turned non-finite");
      converged = l1 <= schedule.tolerance;
    }
  }

  take_sample();
  report.converged = converged;
  report.ops = state.op_count - start_ops;
  report.sweep_equiv = dim > 0 ? double(report.ops) / double(dim) : 0.0;
  report.residual_l1 = report.trace.back().l1_residual;
  report.residual_linf = report.trace.back().linf_residual;
  report.wall_ns = elapsed_ns();
  report.solution = state.history;
  report.peak_memory_bytes =
      static_cast<std::uint64_t>(dim) * 3 * sizeof(double) +
      static_cast<std::uint64_t>(system.P.nonZeros()) * (sizeof(double) + sizeof(int)) +
      (queue ? static_cast<std::uint64_t>(dim) * (sizeof(int) + 64) : 0);
  return report;
}

}  // namespace diter
