#pragma once

// Exhaustive ground-truth solvers for small instances.

#include <cstdint>
#include <optional>

#include "cvp/core.hpp"
#include "cvp/instgen.hpp"

namespace cvp {

struct OracleBudget {
  /// Per-coefficient cap. Left empty, each u_j is bounded by the largest
  /// target entry on the support of g_j, which always contains an optimum.
  std::optional<std::int64_t> u_max;
  /// Search nodes before kBudgetExceeded.
  std::uint64_t node_limit = 200'000'000;
};

/// Depth-first enumeration with lower-bound pruning. OptimalExact when the
/// box is provably large enough, Approximate when u_max cuts it short and a
/// solution was still found; Infeasible only when the box was sufficient.
SolveReport brute_force_opt(const CvpInstance& instance, const OracleBudget& budget = {});

/// Largest number of simultaneously satisfiable clauses. s <= 20.
int brute_force_maxsat(const Sat36Formula& formula);

}  // namespace cvp
