#include "cvp/flow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

namespace cvp {

FlowNetwork build_network(const CvpInstance& instance) {
  require_valid(instance);
  const std::size_t d = instance.d();
  FlowNetwork net;
  net.node_count = static_cast<int>(d) + 1;
  net.demands.resize(d + 1);
  for (std::size_t v = 0; v <= d; ++v) {
    const std::int64_t prev = v == 0 ? 0 : instance.target[v - 1];
    const std::int64_t here = v == d ? 0 : instance.target[v];
    net.demands[v] = prev - here;
  }
  for (std::size_t i = 0; i < d; ++i) {
    const int node = static_cast<int>(i) + 1;
    net.arcs.push_back({node, node + 1, instance.cap, instance.weights.mu, ArcKind::kDeviationFwd, i, {}});
    net.arcs.push_back({node + 1, node, instance.cap, instance.weights.mu, ArcKind::kDeviationBwd, i, {}});
  }
  for (std::size_t j = 0; j < instance.k(); ++j) {
    const auto pattern = has_consecutive_ones(instance.generators[j]);
    if (pattern.is_scattered())
      throw Error(ErrorCode::kNonConsecutiveGenerator,
                  "generator " + std::to_string(j) + " does not have consecutive ones", j);
    if (pattern.is_empty())
      throw Error(ErrorCode::kEmptyGenerator, "generator " + std::to_string(j) + " is all zero", j);
    const Interval iv = pattern.interval;
    net.arcs.push_back({iv.lo, iv.hi + 1, Cap::infinite(), instance.weights.nu, ArcKind::kGenerator, j, iv});
  }
  return net;
}

namespace {

template <class Cost>
class SuccessiveShortestPaths {
 public:
  SuccessiveShortestPaths(int nodes) : nodes_(nodes), adj_(static_cast<std::size_t>(nodes)) {}

  std::size_t add_edge(int from, int to, std::int64_t cap, const Cost& cost) {
    const std::size_t id = edges_.size();
    edges_.push_back({to, cap, cost});
    edges_.push_back({from, 0, -cost});
    adj_[static_cast<std::size_t>(from)].push_back(id);
    adj_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  std::int64_t flow_on(std::size_t id) const { return edges_[id ^ 1].cap; }

  /// Pushes up to `amount` from source to sink; returns what was routed.
  std::int64_t run(int source, int sink, std::int64_t amount) {
    std::vector<Cost> potential(static_cast<std::size_t>(nodes_), Cost(0));
    std::int64_t routed = 0;
    while (routed < amount) {
      std::vector<std::optional<Cost>> dist(static_cast<std::size_t>(nodes_));
      std::vector<std::size_t> via(static_cast<std::size_t>(nodes_), kNone);
      using Entry = std::pair<Cost, int>;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
      dist[static_cast<std::size_t>(source)] = Cost(0);
      heap.emplace(Cost(0), source);
      while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        const auto su = static_cast<std::size_t>(u);
        if (du != *dist[su]) continue;
        for (std::size_t id : adj_[su]) {
          const Edge& e = edges_[id];
          if (e.cap == 0) continue;
          const auto sv = static_cast<std::size_t>(e.to);
          Cost nd = du + e.cost + potential[su] - potential[sv];
          if (!dist[sv] || nd < *dist[sv]) {
            dist[sv] = nd;
            via[sv] = id;
            heap.emplace(std::move(nd), e.to);
          }
        }
      }
      if (!dist[static_cast<std::size_t>(sink)]) break;
      for (std::size_t v = 0; v < dist.size(); ++v) {
        if (dist[v]) potential[v] += *dist[v];
      }
      std::int64_t push = amount - routed;
      for (int v = sink; v != source;) {
        const std::size_t id = via[static_cast<std::size_t>(v)];
        push = std::min(push, edges_[id].cap);
        v = edges_[id ^ 1].to;
      }
      for (int v = sink; v != source;) {
        const std::size_t id = via[static_cast<std::size_t>(v)];
        edges_[id].cap -= push;
        edges_[id ^ 1].cap += push;
        v = edges_[id ^ 1].to;
      }
      routed += push;
    }
    return routed;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  struct Edge {
    int to;
    std::int64_t cap;
    Cost cost;
  };
  int nodes_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
};

template <class Cost>
std::optional<std::vector<std::int64_t>> route(const FlowNetwork& net,
                                               const std::vector<Cost>& costs,
                                               const std::vector<std::int64_t>& caps,
                                               std::int64_t supply) {
  const int n = net.node_count;
  const int source = n;
  const int sink = n + 1;
  SuccessiveShortestPaths<Cost> solver(n + 2);
  std::vector<std::size_t> ids;
  ids.reserve(net.arcs.size());
  for (std::size_t e = 0; e < net.arcs.size(); ++e)
    ids.push_back(solver.add_edge(net.arcs[e].tail - 1, net.arcs[e].head - 1, caps[e], costs[e]));
  for (int v = 0; v < n; ++v) {
    const std::int64_t dem = net.demands[static_cast<std::size_t>(v)];
    if (dem < 0) solver.add_edge(source, v, -dem, Cost(0));
    if (dem > 0) solver.add_edge(v, sink, dem, Cost(0));
  }
  if (solver.run(source, sink, supply) < supply) return std::nullopt;
  std::vector<std::int64_t> flow;
  flow.reserve(ids.size());
  for (std::size_t id : ids) flow.push_back(solver.flow_on(id));
  return flow;
}

void check_conservation(const FlowNetwork& net, const std::vector<std::int64_t>& flow) {
  std::vector<std::int64_t> balance(static_cast<std::size_t>(net.node_count), 0);
  for (std::size_t e = 0; e < net.arcs.size(); ++e) {
    const auto& arc = net.arcs[e];
    if (flow[e] < 0 || (arc.capacity.is_finite() && flow[e] > arc.capacity.value()))
      throw Error(ErrorCode::kInternalError, "flow violates arc bounds", e);
    balance[static_cast<std::size_t>(arc.head - 1)] += flow[e];
    balance[static_cast<std::size_t>(arc.tail - 1)] -= flow[e];
  }
  for (std::size_t v = 0; v < balance.size(); ++v) {
    if (balance[v] != net.demands[v])
      throw Error(ErrorCode::kInternalError, "flow conservation fails at node " + std::to_string(v + 1));
  }
}

// Opposite deviation arcs on the same coordinate form a 2-cycle of cost 2*mu;
// cancelling it keeps the flow optimal and makes tc equal the deviation flow.
void cancel_deviation_cycles(const FlowNetwork& net, std::vector<std::int64_t>& flow) {
  std::vector<std::size_t> fwd(static_cast<std::size_t>(net.node_count), net.arcs.size());
  for (std::size_t e = 0; e < net.arcs.size(); ++e) {
    if (net.arcs[e].kind == ArcKind::kDeviationFwd) fwd[net.arcs[e].index] = e;
  }
  for (std::size_t e = 0; e < net.arcs.size(); ++e) {
    if (net.arcs[e].kind != ArcKind::kDeviationBwd) continue;
    const std::size_t f = fwd[net.arcs[e].index];
    if (f == net.arcs.size()) continue;
    const std::int64_t both = std::min(flow[e], flow[f]);
    flow[e] -= both;
    flow[f] -= both;
  }
}

}  // namespace

FlowOutcome min_cost_flow(const FlowNetwork& net) {
  if (net.demands.size() != static_cast<std::size_t>(net.node_count))
    throw Error(ErrorCode::kInternalError, "demand vector does not match node count");
  std::int64_t sum = 0;
  std::int64_t supply = 0;
  for (auto dem : net.demands) {
    sum += dem;
    if (dem < 0) supply -= dem;
  }
  if (sum != 0) throw Error(ErrorCode::kUnbalancedDemands, "demands sum to " + std::to_string(sum));

  mpz_class lcm = 1;
  for (const auto& arc : net.arcs) {
    if (sgn(arc.cost) < 0) throw Error(ErrorCode::kInternalError, "negative arc cost");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), arc.cost.get_den_mpz_t());
  }
  std::vector<mpz_class> scaled;
  std::vector<std::int64_t> caps;
  mpz_class max_cost = 0;
  mpz_class cap_total = 1 + net.node_count;
  for (const auto& arc : net.arcs) {
    scaled.push_back(arc.cost.get_num() * (lcm / arc.cost.get_den()));
    max_cost = std::max(max_cost, scaled.back());
    caps.push_back(arc.capacity.is_infinite() ? supply : std::min(arc.capacity.value(), supply));
    cap_total += caps.back();
  }

  std::optional<std::vector<std::int64_t>> flow;
  if (mpz_sizeinbase(mpz_class(max_cost * cap_total).get_mpz_t(), 2) < 60) {
    std::vector<std::int64_t> costs;
    for (const auto& c : scaled) costs.push_back(c.get_si());
    flow = route(net, costs, caps, supply);
  } else {
    flow = route(net, scaled, caps, supply);
  }

  FlowOutcome outcome;
  if (!flow) return outcome;
  cancel_deviation_cycles(net, *flow);
  check_conservation(net, *flow);
  outcome.status = FlowStatus::kOptimal;
  outcome.flow = std::move(*flow);
  for (std::size_t e = 0; e < net.arcs.size(); ++e)
    outcome.total_cost += net.arcs[e].cost * Rational(mpz_class(static_cast<long>(outcome.flow[e])));
  outcome.total_cost.canonicalize();
  return outcome;
}

Solution flow_to_solution(const CvpInstance& instance, const FlowNetwork& network,
                          const FlowOutcome& outcome) {
  if (!outcome.optimal()) throw Error(ErrorCode::kInternalError, "flow outcome is not optimal");
  std::vector<std::int64_t> u(instance.k(), 0);
  std::int64_t deviation = 0;
  for (std::size_t e = 0; e < network.arcs.size(); ++e) {
    const auto& arc = network.arcs[e];
    if (arc.kind == ArcKind::kGenerator)
      u.at(arc.index) += outcome.flow[e];
    else
      deviation += outcome.flow[e];
  }
  Solution s = evaluate(instance, u);
  if (s.tc != deviation || s.objective != outcome.total_cost)
    throw Error(ErrorCode::kInternalError, "flow does not match its coefficient vector");
  return s;
}

void write_edge_list(std::ostream& out, const FlowNetwork& network) {
  for (const auto& arc : network.arcs) {
    out << arc.tail << ' ' << arc.head << ' ' << to_string(arc.capacity) << ' '
        << to_string(arc.cost) << ' ';
    switch (arc.kind) {
      case ArcKind::kDeviationFwd: out << "fwd(" << arc.index + 1 << ")"; break;
      case ArcKind::kDeviationBwd: out << "bwd(" << arc.index + 1 << ")"; break;
      case ArcKind::kGenerator: out << "gen" << to_string(arc.interval); break;
    }
    out << '\n';
  }
}

SolveReport solve_by_flow(const CvpInstance& instance) {
  require_valid(instance);
  CvpInstance kept = instance;
  kept.generators.clear();
  std::vector<std::size_t> origin;
  for (std::size_t j = 0; j < instance.k(); ++j) {
    const auto pattern = has_consecutive_ones(instance.generators[j]);
    if (pattern.is_scattered())
      throw Error(ErrorCode::kNonConsecutiveGenerator,
                  "generator " + std::to_string(j) + " does not have consecutive ones", j);
    if (pattern.is_empty()) continue;
    kept.generators.push_back(instance.generators[j]);
    origin.push_back(j);
  }
  const FlowNetwork net = build_network(kept);
  const FlowOutcome outcome = min_cost_flow(net);
  SolveReport report;
  report.method = "flow";
  if (!outcome.optimal()) return report;
  const Solution reduced = flow_to_solution(kept, net, outcome);
  std::vector<std::int64_t> u(instance.k(), 0);
  for (std::size_t j = 0; j < origin.size(); ++j) u[origin[j]] = reduced.u[j];
  report.status = SolveStatus::kOptimalExact;
  report.solution = evaluate(instance, u);
  report.lp_value = outcome.total_cost;
  return report;
}

}  // namespace cvp
