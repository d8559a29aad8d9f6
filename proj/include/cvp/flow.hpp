#pragma once

// Min-cost flow view of the CVP when every generator has consecutive ones.
//
// Nodes are 1..d+1 and node j has demand a_{j-1} - a_j (with a_0 = a_{d+1} = 0),
// i.e. a feasible flow has inflow - outflow = demand at every node. Arc
// (i, i+1) carries beta_i, arc (i+1, i) carries alpha_i, both with capacity C
// and cost mu; the generator with ones on [l, r] is the uncapacitated arc
// (l, r+1) with cost nu, whose flow is its coefficient.

#include <cstdint>
#include <ostream>
#include <vector>

#include "cvp/core.hpp"

namespace cvp {

enum class ArcKind { kDeviationFwd, kDeviationBwd, kGenerator };

struct FlowArc {
  int tail = 0;  // 1-based node ids
  int head = 0;
  Cap capacity;
  Rational cost{0};
  ArcKind kind = ArcKind::kGenerator;
  /// Coordinate i (0-based) for deviation arcs, generator index j otherwise.
  std::size_t index = 0;
  Interval interval{};  // generator arcs only
};

struct FlowNetwork {
  int node_count = 0;
  std::vector<std::int64_t> demands;  // demands[v - 1] for node v
  std::vector<FlowArc> arcs;          // deviation arcs first, then generators
};

enum class FlowStatus { kInfeasible, kOptimal };

struct FlowOutcome {
  FlowStatus status = FlowStatus::kInfeasible;
  std::vector<std::int64_t> flow;  // per arc, same order as FlowNetwork::arcs
  Rational total_cost{0};

  bool optimal() const { return status == FlowStatus::kOptimal; }
};

/// Throws kNonConsecutiveGenerator / kEmptyGenerator naming the generator.
FlowNetwork build_network(const CvpInstance& instance);

/// Successive shortest paths with node potentials. Uncapacitated arcs are
/// bounded by the total supply, which no optimal flow needs to exceed when
/// costs are nonnegative.
FlowOutcome min_cost_flow(const FlowNetwork& network);

Solution flow_to_solution(const CvpInstance& instance, const FlowNetwork& network,
                          const FlowOutcome& outcome);

/// One arc per line: `tail head cap cost kind`.
void write_edge_list(std::ostream& out, const FlowNetwork& network);

/// Exact solve for consecutive-ones instances. All-zero generators are set to
/// zero and left out of the network.
SolveReport solve_by_flow(const CvpInstance& instance);

}  // namespace cvp
