#include "diter/report.hpp"

#include <cstdio>

namespace diter {

std::string SolveReport::summary_line() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "solver=%s converged=%s ops=%llu sweeps=%g l1=%g wall_ms=%.3f",
                solver.c_str(), converged ? "true" : "false",
                static_cast<unsigned long long>(ops), sweep_equiv, residual_l1,
                static_cast<double>(wall_ns) * 1e-6);
  return buf;
}

}  // namespace diter
