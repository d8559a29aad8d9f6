#include <gtest/gtest.h>

#include <sstream>

#include "cvp/flow.hpp"
#include "cvp/instgen.hpp"
#include "cvp/lp.hpp"
#include "support/reference.hpp"

namespace cvp {
namespace {

CvpInstance two_coordinate_row(Cap cap) {
  CvpInstance inst;
  inst.target = {2, 1};
  inst.generators = {{1, 1}};
  inst.cap = cap;
  return inst;
}

void expect_conservation(const FlowNetwork& net, const FlowOutcome& out) {
  std::vector<std::int64_t> net_in(static_cast<std::size_t>(net.node_count), 0);
  for (std::size_t e = 0; e < net.arcs.size(); ++e) {
    EXPECT_GE(out.flow[e], 0);
    if (net.arcs[e].capacity.is_finite()) {
      EXPECT_LE(out.flow[e], net.arcs[e].capacity.value());
    }
    net_in[static_cast<std::size_t>(net.arcs[e].head - 1)] += out.flow[e];
    net_in[static_cast<std::size_t>(net.arcs[e].tail - 1)] -= out.flow[e];
  }
  EXPECT_EQ(net_in, net.demands);
}

TEST(BuildNetwork, TwoCoordinateTranscription) {
  CvpInstance inst = two_coordinate_row(Cap::finite(1));
  inst.weights = {Rational(2), Rational(1, 3)};
  const FlowNetwork net = build_network(inst);
  EXPECT_EQ(net.node_count, 3);
  EXPECT_EQ(net.demands, (std::vector<std::int64_t>{-2, 1, 1}));
  ASSERT_EQ(net.arcs.size(), 5u);
  const std::vector<std::pair<int, int>> ends{{1, 2}, {2, 1}, {2, 3}, {3, 2}, {1, 3}};
  for (std::size_t e = 0; e < 5; ++e) {
    EXPECT_EQ(net.arcs[e].tail, ends[e].first);
    EXPECT_EQ(net.arcs[e].head, ends[e].second);
    if (e < 4) {
      EXPECT_EQ(net.arcs[e].capacity, Cap::finite(1));
      EXPECT_EQ(net.arcs[e].cost, 2);
    }
  }
  EXPECT_TRUE(net.arcs[4].capacity.is_infinite());
  EXPECT_EQ(net.arcs[4].cost, Rational(1, 3));
  EXPECT_EQ(net.arcs[4].kind, ArcKind::kGenerator);
}

TEST(BuildNetwork, SixCoordinatesNineGenerators) {
  CvpInstance inst;
  inst.target = {1, 3, 2, 2, 0, 1};
  for (const Interval iv : {Interval{1, 1}, Interval{1, 3}, Interval{2, 2}, Interval{2, 4}, Interval{3, 6},
                            Interval{4, 5}, Interval{5, 6}, Interval{6, 6}, Interval{2, 2}})
    inst.generators.push_back(interval_indicator(6, iv));
  const FlowNetwork net = build_network(inst);
  EXPECT_EQ(net.node_count, 7);
  std::size_t deviation = 0;
  std::size_t generator = 0;
  for (const auto& arc : net.arcs) (arc.kind == ArcKind::kGenerator ? generator : deviation) += 1;
  EXPECT_EQ(deviation, 12u);
  EXPECT_EQ(generator, 9u);
  // parallel generator arcs stay separate records
  EXPECT_EQ(net.arcs[12 + 2].tail, net.arcs[12 + 8].tail);
  EXPECT_EQ(net.arcs[12 + 2].head, net.arcs[12 + 8].head);
  std::int64_t sum = 0;
  for (auto v : net.demands) sum += v;
  EXPECT_EQ(sum, 0);
}

TEST(BuildNetwork, RejectsScatteredAndEmpty) {
  CvpInstance inst;
  inst.target = {1, 1, 1};
  inst.generators = {{1, 1, 0}, {1, 0, 1}};
  try {
    build_network(inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonConsecutiveGenerator);
    EXPECT_EQ(e.index(), 1u);
  }
  inst.generators = {{0, 0, 0}};
  try {
    build_network(inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGenerator);
  }
}

TEST(MinCostFlow, TwoCoordinateCapOne) {
  const CvpInstance inst = two_coordinate_row(Cap::finite(1));
  const auto best = ref::exhaustive_opt(inst, 3);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->value, 1);

  const FlowNetwork net = build_network(inst);
  const FlowOutcome out = min_cost_flow(net);
  ASSERT_TRUE(out.optimal());
  EXPECT_EQ(out.total_cost, best->value);
  expect_conservation(net, out);
  const Solution s = flow_to_solution(inst, net, out);
  EXPECT_EQ(s.tc, 1);
  EXPECT_TRUE(s.within_cap);
  EXPECT_EQ(s.objective, out.total_cost);
}

TEST(MinCostFlow, GeneratorFlowTwoGivesFlatRow) {
  const CvpInstance inst = two_coordinate_row(Cap::finite(1));
  const FlowNetwork net = build_network(inst);
  FlowOutcome manual;
  manual.status = FlowStatus::kOptimal;
  manual.flow = {0, 0, 0, 1, 2};  // beta_2 = 1 pushes node 3's extra unit back
  manual.total_cost = 1;
  expect_conservation(net, manual);
  const Solution s = flow_to_solution(inst, net, manual);
  EXPECT_EQ(s.u, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(s.b, (std::vector<std::int64_t>{2, 2}));
  EXPECT_EQ(s.tc, 1);
  EXPECT_TRUE(s.within_cap);
}

TEST(MinCostFlow, ZeroDemands) {
  CvpInstance inst;
  inst.target = {0, 0, 0};
  inst.generators = {{0, 1, 1}};
  const FlowNetwork net = build_network(inst);
  const FlowOutcome out = min_cost_flow(net);
  ASSERT_TRUE(out.optimal());
  EXPECT_EQ(out.total_cost, 0);
  for (auto f : out.flow) EXPECT_EQ(f, 0);
  const Solution s = flow_to_solution(inst, net, out);
  EXPECT_EQ(s.u, (std::vector<std::int64_t>{0}));
  EXPECT_EQ(s.tc, 0);
}

TEST(MinCostFlow, ForcedExactDecomposition) {
  CvpInstance inst;
  inst.target = {5};
  inst.generators = {{1}};
  inst.cap = Cap::finite(0);
  const FlowNetwork net = build_network(inst);
  const FlowOutcome out = min_cost_flow(net);
  ASSERT_TRUE(out.optimal());
  EXPECT_EQ(out.total_cost, 0);
  EXPECT_EQ(out.flow.back(), 5);
  EXPECT_EQ(flow_to_solution(inst, net, out).u, (std::vector<std::int64_t>{5}));
}

TEST(MinCostFlow, EmptyNetworkCostsNormOfTarget) {
  CvpInstance inst;
  inst.target = {2, 0, 3};
  const FlowNetwork net = build_network(inst);
  const FlowOutcome out = min_cost_flow(net);
  ASSERT_TRUE(out.optimal());
  EXPECT_EQ(out.total_cost, 5);
  EXPECT_EQ(flow_to_solution(inst, net, out).tc, 5);
}

TEST(MinCostFlow, UnbalancedDemands) {
  FlowNetwork net;
  net.node_count = 2;
  net.demands = {-1, 2};
  try {
    min_cost_flow(net);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnbalancedDemands);
  }
}

TEST(MinCostFlow, InfeasibleUnderCap) {
  CvpInstance inst;
  inst.target = {1, 0, 1};
  inst.generators = {{1, 1, 1}};
  inst.cap = Cap::finite(0);
  EXPECT_EQ(solve_by_flow(inst).status, SolveStatus::kInfeasible);
}

TEST(MinCostFlow, HugeRationalWeightsUseWidePath) {
  CvpInstance inst = two_coordinate_row(Cap::infinite());
  inst.weights = {Rational(mpz_class("123456789012345678901"), mpz_class(7)), Rational(1, 1000000007)};
  const SolveReport r = solve_by_flow(inst);
  ASSERT_TRUE(r.solution);
  const auto best = ref::exhaustive_opt(inst, 3);
  EXPECT_EQ(r.solution->objective, best->value);
}

TEST(SolveByFlow, SkipsZeroGenerators) {
  CvpInstance inst = ref::e1();
  inst.generators.insert(inst.generators.begin(), std::vector<std::uint8_t>{0, 0});
  const SolveReport r = solve_by_flow(inst);
  ASSERT_TRUE(r.solution);
  EXPECT_EQ(r.solution->u, (std::vector<std::int64_t>{0, 1, 1}));
  EXPECT_EQ(r.method, "flow");
}

TEST(EdgeList, OneArcPerLine) {
  const FlowNetwork net = build_network(two_coordinate_row(Cap::finite(1)));
  std::ostringstream out;
  write_edge_list(out, net);
  EXPECT_EQ(out.str(), "1 2 1 1 fwd(1)\n2 1 1 1 bwd(1)\n2 3 1 1 fwd(2)\n3 2 1 1 bwd(2)\n1 3 inf 0 gen[1,2]\n");
}

// Flow cost equals the LP value on random consecutive-ones instances (the
// exhaustive d <= 5 sweep lives in the acceptance binary), flows conserve, and
// repeated solves agree.
TEST(FlowProperty, MatchesLpAndIsDeterministic) {
  Rng rng({21, 0});
  for (int rep = 0; rep < 1500; ++rep) {
    const std::size_t d = 1 + rng.below(10);
    const std::size_t k = 1 + rng.below(8);
    const Cap cap = rep % 3 == 0 ? Cap::infinite() : Cap::finite(static_cast<std::int64_t>(rng.below(3)));
    CvpInstance inst = gen_random_instance(d, k, 6, cap, true, rng);
    inst.weights = {Rational(static_cast<long>(rng.below(3))), Rational(static_cast<long>(rng.below(3)), 2)};
    const FlowNetwork net = build_network(inst);
    const FlowOutcome out = min_cost_flow(net);
    const LpOutcome lp = solve_lp(build_lp(inst));
    ASSERT_EQ(out.optimal(), lp.optimal());
    if (!out.optimal()) continue;
    EXPECT_EQ(out.total_cost, lp.value);
    expect_conservation(net, out);
    EXPECT_EQ(out.flow, min_cost_flow(net).flow);
    EXPECT_EQ(flow_to_solution(inst, net, out).objective, out.total_cost);
  }
}

}  // namespace
}  // namespace cvp
